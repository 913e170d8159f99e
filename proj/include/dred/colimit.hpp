#pragma once

#include <optional>

#include "dred/category.hpp"
#include "dred/graph_morphism.hpp"

namespace dred {

struct GraphCat {
  using Obj = Graph;
  using Mor = GraphMorphism;

  static Mor identity(const Obj &o) { return GraphMorphism::identity(o); }
  static Mor compose(const Mor &f, const Mor &g) { return dred::compose(f, g); }
  static bool obj_equal(const Obj &a, const Obj &b) { return a == b; }
  static bool mor_equal(const Mor &a, const Mor &b) { return a == b; }
  static bool is_iso(const Mor &m) { return dred::is_iso(m); }

  static PushoutResult<GraphCat> pushout(const Span<GraphCat> &span);
  // Universal map out of a computed pushout into the vertex of the cocone
  // (from_left, from_right); nullopt when no such morphism exists.
  static std::optional<Mor> mediating(const PushoutResult<GraphCat> &po,
                                      const Mor &from_left, const Mor &from_right);
};

// Pushout of a span by quotienting the disjoint union of the feet along the
// span-generated equivalence. LabelClash when a class would carry two labels.
PushoutResult<GraphCat> pushout(const Span<GraphCat> &span);

// DPO left square: given l : K -> L and a match m : L -> G, removes
// m(L \ l(K)) from G. DanglingViolation / IdentificationViolation when the
// gluing conditions fail; the returned square re-pushes-out to G (checked).
ComplementResult<GraphCat> pushout_complement(const GraphMorphism &l,
                                              const GraphMorphism &m);

// Pullback of a cospan; vertex items are agreeing pairs named `b&c`.
Span<GraphCat> pullback(const Cospan<GraphCat> &cospan);

// SqPO left square: final pullback complement of l : K -> L along a mono
// match m : L -> G. Deleting a node deletes its incident edges; a node with k
// preimages in K is cloned k times along with its non-matched incident edges.
// UnsupportedMatch when m is not mono.
ComplementResult<GraphCat> final_pullback_complement(const GraphMorphism &l,
                                                     const GraphMorphism &m);

// Exact pushout check: the square commutes, the cocone is jointly surjective,
// and the comparison map out of the computed pushout is an isomorphism.
template <typename Cat> bool verify_pushout(const Square<Cat> &sq) {
  if (!sq.commutes()) return false;
  try {
    PushoutResult<Cat> po = Cat::pushout(Span<Cat>::make(sq.top, sq.left));
    std::optional<typename Cat::Mor> u = Cat::mediating(po, sq.right, sq.bottom);
    return u.has_value() && Cat::is_iso(*u);
  } catch (const Error &e) {
    if (e.kind() == ErrorKind::LabelClash) return false;
    throw;
  }
}

template <typename Cat>
bool verify_pushout(const typename Cat::Mor &top, const typename Cat::Mor &left,
                    const typename Cat::Mor &right, const typename Cat::Mor &bottom) {
  try {
    return verify_pushout(Square<Cat>::make(top, left, right, bottom));
  } catch (const Error &e) {
    if (e.kind() == ErrorKind::EndpointMismatch)
      fail(ErrorKind::NonCommuting, e.what());
    throw;
  }
}

template <typename Cat> struct PasteCheck {
  bool second_is_pushout = false;
  bool composite_is_pushout = false;
  bool agree() const { return second_is_pushout == composite_is_pushout; }
};

// Pushout pasting along a shared vertical edge:
//
//   A --f--> B --g--> E
//   |        |        |
//   a  (1)   b  (2)   e
//   v        v        v
//   C --h--> D --k--> F
//
// Given that (1) is a pushout, (2) is a pushout iff the composite rectangle
// is; paste_check evaluates both sides of that biconditional exactly.
template <typename Cat>
PasteCheck<Cat> paste_check(const Square<Cat> &sq1, const Square<Cat> &sq2) {
  if (!Cat::mor_equal(sq1.right, sq2.left))
    fail(ErrorKind::NonComposable, "squares do not share their middle edge");
  if (!sq1.commutes() || !sq2.commutes())
    fail(ErrorKind::NonComposable, "both squares must commute");
  if (!verify_pushout(sq1))
    fail(ErrorKind::NonComposable, "first square must be a pushout");
  Square<Cat> composite = Square<Cat>::make(
      Cat::compose(sq1.top, sq2.top), sq1.left, sq2.right,
      Cat::compose(sq1.bottom, sq2.bottom));
  PasteCheck<Cat> result;
  result.second_is_pushout = verify_pushout(sq2);
  result.composite_is_pushout = verify_pushout(composite);
  return result;
}

} // namespace dred

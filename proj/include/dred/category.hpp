#pragma once

#include <optional>

#include "dred/errors.hpp"

namespace dred {

// The colimit engine is generic over a small trait contract: a `Cat` supplies
// object/morphism types with value equality, identities, composition, pushout
// computation, mediating-morphism construction out of a computed pushout, and
// an isomorphism test. Graphs and equational specifications both satisfy it.
template <typename Cat> struct PushoutResult {
  typename Cat::Obj object;
  typename Cat::Mor left_inj;  // left foot -> object
  typename Cat::Mor right_inj; // right foot -> object
};

template <typename Cat> struct ComplementResult {
  typename Cat::Mor apex_to_complement;
  typename Cat::Mor complement_to_base;
};

// Two morphisms out of a shared apex object.
template <typename Cat> struct Span {
  typename Cat::Mor left, right;

  static Span make(typename Cat::Mor left, typename Cat::Mor right) {
    if (!Cat::obj_equal(left.dom(), right.dom()))
      fail(ErrorKind::EndpointMismatch, "span legs have different apexes");
    return Span{std::move(left), std::move(right)};
  }
  const typename Cat::Obj &apex() const { return left.dom(); }
};

// Two morphisms into a shared vertex object.
template <typename Cat> struct Cospan {
  typename Cat::Mor left, right;

  static Cospan make(typename Cat::Mor left, typename Cat::Mor right) {
    if (!Cat::obj_equal(left.cod(), right.cod()))
      fail(ErrorKind::EndpointMismatch, "cospan legs have different vertexes");
    return Cospan{std::move(left), std::move(right)};
  }
  const typename Cat::Obj &vertex() const { return left.cod(); }
};

//  apex --top--> B
//   |            |
//  left        right
//   v            v
//   C --bottom--> vertex
template <typename Cat> struct Square {
  typename Cat::Mor top, left, right, bottom;

  static Square make(typename Cat::Mor top, typename Cat::Mor left,
                     typename Cat::Mor right, typename Cat::Mor bottom) {
    if (!Cat::obj_equal(top.dom(), left.dom()))
      fail(ErrorKind::EndpointMismatch, "square: top and left share no apex");
    if (!Cat::obj_equal(top.cod(), right.dom()))
      fail(ErrorKind::EndpointMismatch, "square: right does not follow top");
    if (!Cat::obj_equal(left.cod(), bottom.dom()))
      fail(ErrorKind::EndpointMismatch, "square: bottom does not follow left");
    if (!Cat::obj_equal(right.cod(), bottom.cod()))
      fail(ErrorKind::EndpointMismatch, "square: right and bottom share no vertex");
    return Square{std::move(top), std::move(left), std::move(right), std::move(bottom)};
  }

  bool commutes() const {
    return Cat::mor_equal(Cat::compose(top, right), Cat::compose(left, bottom));
  }
};

} // namespace dred

#pragma once

#include <optional>

#include "dred/category.hpp"
#include "dred/colimit.hpp"
#include "dred/spec_morphism.hpp"

namespace dred {

struct SpecCat {
  using Obj = EqSpec;
  using Mor = SpecMorphism;

  static Mor identity(const Obj &o) { return SpecMorphism::identity(o); }
  static Mor compose(const Mor &f, const Mor &g) { return dred::compose(f, g); }
  static bool obj_equal(const Obj &a, const Obj &b) { return a == b; }
  static bool mor_equal(const Mor &a, const Mor &b) { return a == b; }
  static bool is_iso(const Mor &m) { return dred::is_iso(m); }

  static PushoutResult<SpecCat> pushout(const Span<SpecCat> &span);
  static std::optional<Mor> mediating(const PushoutResult<SpecCat> &po,
                                      const Mor &from_left, const Mor &from_right);
};

// Pushout of a span of specifications. Sorts and operations are merged by
// the usual quotient of the disjoint union; since variables may map to terms,
// their identifications are solved by syntactic unification. A variable class
// that gets bound to a term disappears from the result. LabelClash when
// unification meets two different operation heads or an occurs-check cycle.
PushoutResult<SpecCat> spec_pushout(const Span<SpecCat> &span);

} // namespace dred

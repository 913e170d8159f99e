#pragma once

#include "dred/eq_spec.hpp"

#include <map>
#include <optional>
#include <string>

namespace dred {

// A morphism of equational specifications: sorts map to sorts, operations to
// operations (respecting translated signatures), and variables to arbitrary
// terms of the translated sort. Declared terms must land on declared terms
// and equations on equations.
class SpecMorphism {
public:
  SpecMorphism() = default;

  static SpecMorphism make(EqSpec dom, EqSpec cod,
                           std::map<std::string, std::string> sort_map,
                           std::map<std::string, std::string> op_map,
                           std::map<std::string, Term> var_map);
  static SpecMorphism identity(const EqSpec &spec);
  // Maps every name to itself (variables to the same-named variable).
  static SpecMorphism inclusion(const EqSpec &sub, const EqSpec &super);

  const EqSpec &dom() const { return dom_; }
  const EqSpec &cod() const { return cod_; }
  const std::map<std::string, std::string> &sort_map() const { return sort_map_; }
  const std::map<std::string, std::string> &op_map() const { return op_map_; }
  const std::map<std::string, Term> &var_map() const { return var_map_; }

  const std::string &on_sort(const std::string &name) const;
  const std::string &on_op(const std::string &name) const;
  const Term &on_var(const std::string &name) const;

  Term apply(const Term &t) const;
  Equation apply(const Equation &e) const;

  bool operator==(const SpecMorphism &o) const;

  // Sections SORTMAP / OPMAP / VARMAP with '<name> |-> <image>' entries;
  // names absent from a section map to their own name in the codomain.
  static SpecMorphism parse(const EqSpec &dom, const EqSpec &cod,
                            const std::string &text,
                            const std::string &filename = "");
  std::string to_text() const;

private:
  EqSpec dom_, cod_;
  std::map<std::string, std::string> sort_map_, op_map_;
  std::map<std::string, Term> var_map_;
};

SpecMorphism compose(const SpecMorphism &f, const SpecMorphism &g);
bool is_iso(const SpecMorphism &f);
// Inverse of an isomorphism; Internal error when f is not one.
SpecMorphism invert_iso(const SpecMorphism &f);

// All morphisms dom -> cod whose variable images are drawn from cod's
// declared terms and variables. Intended for small test specifications.
std::vector<SpecMorphism> enumerate_spec_morphisms(const EqSpec &dom,
                                                   const EqSpec &cod);

std::optional<SpecMorphism> find_spec_iso(const EqSpec &a, const EqSpec &b);

} // namespace dred

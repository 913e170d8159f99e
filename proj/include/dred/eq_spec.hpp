#pragma once

#include "dred/term.hpp"

#include <string>
#include <vector>

namespace dred {

struct OpDecl {
  std::string name;
  std::vector<std::string> arg_sorts;
  std::string result;
  // Display preference only; ignored when comparing specifications.
  bool infix = false;

  bool same_signature(const OpDecl &o) const {
    return name == o.name && arg_sorts == o.arg_sorts && result == o.result;
  }
};

struct VarDecl {
  std::string name;
  std::string sort;

  auto operator<=>(const VarDecl &) const = default;
};

// An equational specification: sorts, operations, variables, a finite set of
// declared terms (kept closed under subterms), and equations between terms of
// equal sort. Equations are schematic: their variables stand for arbitrary
// terms of the matching sort.
class EqSpec {
public:
  EqSpec() = default;

  static EqSpec make(std::vector<std::string> sorts, std::vector<OpDecl> ops,
                     std::vector<VarDecl> vars, std::vector<Term> terms,
                     std::vector<Equation> equations);

  const std::vector<std::string> &sorts() const { return sorts_; }
  const std::vector<OpDecl> &ops() const { return ops_; }
  const std::vector<VarDecl> &vars() const { return vars_; }
  // All declared terms, closed under subterms (equation sides included).
  const TermSet &terms() const { return terms_; }
  const EquationSet &equations() const { return equations_; }

  bool has_sort(const std::string &name) const;
  bool has_op(const std::string &name) const;
  bool has_var(const std::string &name) const;
  const OpDecl &op(const std::string &name) const;
  const VarDecl &var(const std::string &name) const;

  // Sort of a term over this signature; IllSorted if it has none.
  std::string sort_of(const Term &t) const;

  TermSyntax syntax() const;
  std::string term_text(const Term &t) const;
  std::string equation_text(const Equation &e) const;

  bool operator==(const EqSpec &o) const;

  static EqSpec parse(const std::string &text, const std::string &filename = "");
  static EqSpec load(const std::string &path);
  // Canonical form: sections sorted, only terms not forced by a longer
  // declared term or an equation side are listed.
  std::string to_text() const;

private:
  std::vector<std::string> sorts_;
  std::vector<OpDecl> ops_;     // sorted by name
  std::vector<VarDecl> vars_;   // sorted by name
  TermSet terms_;
  EquationSet equations_;
};

} // namespace dred

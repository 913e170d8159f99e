#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace dred {

// First-order term: a variable leaf or an operation applied to subterms.
struct Term {
  std::string head;
  bool is_var = false;
  std::vector<Term> args;

  bool operator==(const Term &) const = default;

  static Term var(std::string name) { return {std::move(name), true, {}}; }
  static Term app(std::string op, std::vector<Term> args = {}) {
    return {std::move(op), false, std::move(args)};
  }

  bool ground() const;
  void collect_vars(std::set<std::string> &out) const;
  // All subterms including the term itself.
  void subterms_into(std::vector<Term> &out) const;
};

// Total structural order, used for canonical serialization and set storage.
int term_compare(const Term &a, const Term &b);

struct TermLess {
  bool operator()(const Term &a, const Term &b) const {
    return term_compare(a, b) < 0;
  }
};

using TermSet = std::set<Term, TermLess>;

// Unordered pair of terms, stored with the structurally smaller side first.
struct Equation {
  Term lhs, rhs;

  static Equation make(Term a, Term b);
  bool operator==(const Equation &) const = default;
};

struct EquationLess {
  bool operator()(const Equation &a, const Equation &b) const {
    int c = term_compare(a.lhs, b.lhs);
    return c != 0 ? c < 0 : term_compare(a.rhs, b.rhs) < 0;
  }
};

using EquationSet = std::set<Equation, EquationLess>;

Term substitute(const Term &pattern, const std::map<std::string, Term> &binding);

// Name sets a term parser needs: declared variables, operation arities, and
// which binary operations are written infix.
struct TermSyntax {
  std::map<std::string, size_t> op_arity;
  std::set<std::string> infix;
  std::set<std::string> vars;
};

// Grammar: infix operations all share one precedence level and associate to
// the left; application binds tighter. Identifiers are alphanumeric runs,
// operation names may also be symbolic runs.
Term parse_term(std::string_view text, const TermSyntax &syntax,
                std::string_view file = "", int line = 0);

std::string term_text(const Term &t, const std::set<std::string> &infix);

bool valid_term_name(const std::string &name, bool allow_symbolic);

} // namespace dred

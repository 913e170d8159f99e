#include "dred/term.hpp"

#include "dred/errors.hpp"
#include "dred/textio.hpp"

#include <algorithm>
#include <sstream>

namespace dred {

bool Term::ground() const {
  if (is_var)
    return false;
  return std::all_of(args.begin(), args.end(),
                     [](const Term &t) { return t.ground(); });
}

void Term::collect_vars(std::set<std::string> &out) const {
  if (is_var) {
    out.insert(head);
    return;
  }
  for (const Term &a : args)
    a.collect_vars(out);
}

void Term::subterms_into(std::vector<Term> &out) const {
  out.push_back(*this);
  for (const Term &a : args)
    a.subterms_into(out);
}

int term_compare(const Term &a, const Term &b) {
  if (a.is_var != b.is_var)
    return a.is_var ? -1 : 1;
  if (int c = a.head.compare(b.head); c != 0)
    return c < 0 ? -1 : 1;
  if (a.args.size() != b.args.size())
    return a.args.size() < b.args.size() ? -1 : 1;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (int c = term_compare(a.args[i], b.args[i]); c != 0)
      return c;
  return 0;
}

Equation Equation::make(Term a, Term b) {
  if (term_compare(a, b) > 0)
    std::swap(a, b);
  return {std::move(a), std::move(b)};
}

Term substitute(const Term &pattern, const std::map<std::string, Term> &binding) {
  if (pattern.is_var) {
    auto it = binding.find(pattern.head);
    return it != binding.end() ? it->second : pattern;
  }
  Term out = Term::app(pattern.head);
  out.args.reserve(pattern.args.size());
  for (const Term &a : pattern.args)
    out.args.push_back(substitute(a, binding));
  return out;
}

namespace {

bool ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_' || c == '.' || c == '\'';
}

bool symbol_char(char c) {
  static const std::string chars = "+*/%!?<>=~^&|$@-";
  return chars.find(c) != std::string::npos;
}

struct Token {
  enum Kind { Ident, Symbol, LParen, RParen, Comma, End } kind;
  std::string text;
};

std::vector<Token> lex(std::string_view text, std::string_view file, int line) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t') {
      ++i;
    } else if (c == '(') {
      out.push_back({Token::LParen, "("});
      ++i;
    } else if (c == ')') {
      out.push_back({Token::RParen, ")"});
      ++i;
    } else if (c == ',') {
      out.push_back({Token::Comma, ","});
      ++i;
    } else if (ident_char(c)) {
      size_t j = i;
      while (j < text.size() && ident_char(text[j]))
        ++j;
      out.push_back({Token::Ident, std::string(text.substr(i, j - i))});
      i = j;
    } else if (symbol_char(c)) {
      size_t j = i;
      while (j < text.size() && symbol_char(text[j]))
        ++j;
      out.push_back({Token::Symbol, std::string(text.substr(i, j - i))});
      i = j;
    } else {
      parse_fail(file, line,
                 "unexpected character '" + std::string(1, c) + "' in term");
    }
  }
  out.push_back({Token::End, ""});
  return out;
}

class TermParser {
public:
  TermParser(std::vector<Token> tokens, const TermSyntax &syntax,
             std::string_view file, int line)
      : tokens_(std::move(tokens)), syntax_(syntax), file_(file), line_(line) {}

  Term parse() {
    Term t = expression();
    if (peek().kind != Token::End)
      fail("unexpected trailing input '" + peek().text + "'");
    return t;
  }

private:
  const Token &peek() const { return tokens_[pos_]; }
  Token take() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const std::string &msg) const {
    parse_fail(file_, line_, msg);
  }

  Term expression() {
    Term lhs = primary();
    while (peek().kind == Token::Symbol) {
      std::string op = take().text;
      if (!syntax_.infix.count(op))
        fail("operation '" + op + "' is not declared infix");
      Term rhs = primary();
      lhs = Term::app(op, {std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  Term primary() {
    Token tok = take();
    if (tok.kind == Token::LParen) {
      Term t = expression();
      if (take().kind != Token::RParen)
        fail("expected ')'");
      return t;
    }
    if (tok.kind != Token::Ident && tok.kind != Token::Symbol)
      fail("expected a term, found '" + tok.text + "'");
    if (peek().kind == Token::LParen)
      return application(tok.text);
    if (syntax_.vars.count(tok.text))
      return Term::var(tok.text);
    auto it = syntax_.op_arity.find(tok.text);
    if (it == syntax_.op_arity.end())
      fail("unknown identifier '" + tok.text + "'");
    if (it->second != 0)
      fail("operation '" + tok.text + "' expects " +
           std::to_string(it->second) + " argument(s)");
    return Term::app(tok.text);
  }

  Term application(const std::string &op) {
    auto it = syntax_.op_arity.find(op);
    if (it == syntax_.op_arity.end())
      fail("unknown operation '" + op + "'");
    take(); // '('
    std::vector<Term> args;
    if (peek().kind != Token::RParen) {
      args.push_back(expression());
      while (peek().kind == Token::Comma) {
        take();
        args.push_back(expression());
      }
    }
    if (take().kind != Token::RParen)
      fail("expected ')' after arguments of '" + op + "'");
    if (args.size() != it->second)
      fail("operation '" + op + "' expects " + std::to_string(it->second) +
           " argument(s), got " + std::to_string(args.size()));
    return Term::app(op, std::move(args));
  }

  std::vector<Token> tokens_;
  const TermSyntax &syntax_;
  std::string_view file_;
  int line_;
  size_t pos_ = 0;
};

} // namespace

Term parse_term(std::string_view text, const TermSyntax &syntax,
                std::string_view file, int line) {
  if (text.find_first_not_of(" \t") == std::string_view::npos)
    parse_fail(file, line, "empty term");
  return TermParser(lex(text, file, line), syntax, file, line).parse();
}

namespace {

bool infix_app(const Term &t, const std::set<std::string> &infix) {
  return !t.is_var && t.args.size() == 2 && infix.count(t.head) > 0;
}

void print_term(const Term &t, const std::set<std::string> &infix,
                std::ostream &os) {
  if (t.is_var || t.args.empty()) {
    os << t.head;
    return;
  }
  if (infix_app(t, infix)) {
    // Infix output carries no precedence levels, so nested infix operands are
    // always parenthesized; plain applications never need parentheses.
    for (int side : {0, 1}) {
      if (side == 1)
        os << ' ' << t.head << ' ';
      bool wrap = infix_app(t.args[side], infix);
      if (wrap)
        os << '(';
      print_term(t.args[side], infix, os);
      if (wrap)
        os << ')';
    }
    return;
  }
  os << t.head << '(';
  for (size_t i = 0; i < t.args.size(); ++i) {
    if (i)
      os << ", ";
    print_term(t.args[i], infix, os);
  }
  os << ')';
}

} // namespace

std::string term_text(const Term &t, const std::set<std::string> &infix) {
  std::ostringstream os;
  print_term(t, infix, os);
  return os.str();
}

bool valid_term_name(const std::string &name, bool allow_symbolic) {
  if (name.empty())
    return false;
  if (name == "->" || name == "==" || name == "|->")
    return false;
  bool all_ident = std::all_of(name.begin(), name.end(), ident_char);
  if (all_ident)
    return true;
  if (!allow_symbolic)
    return false;
  return std::all_of(name.begin(), name.end(), symbol_char);
}

} // namespace dred

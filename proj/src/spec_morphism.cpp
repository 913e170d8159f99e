#include "dred/spec_morphism.hpp"

#include "dred/errors.hpp"
#include "dred/textio.hpp"

#include <algorithm>
#include <sstream>

namespace dred {

namespace {

Term apply_term(const Term &t, const std::map<std::string, std::string> &ops,
                const std::map<std::string, Term> &vars) {
  if (t.is_var) {
    auto it = vars.find(t.head);
    if (it == vars.end())
      fail(ErrorKind::Internal, "no image for variable '" + t.head + "'");
    return it->second;
  }
  auto it = ops.find(t.head);
  if (it == ops.end())
    fail(ErrorKind::Internal, "no image for operation '" + t.head + "'");
  Term out = Term::app(it->second);
  out.args.reserve(t.args.size());
  for (const Term &a : t.args)
    out.args.push_back(apply_term(a, ops, vars));
  return out;
}

} // namespace

SpecMorphism SpecMorphism::make(EqSpec dom, EqSpec cod,
                                std::map<std::string, std::string> sort_map,
                                std::map<std::string, std::string> op_map,
                                std::map<std::string, Term> var_map) {
  for (const std::string &s : dom.sorts()) {
    auto it = sort_map.find(s);
    if (it == sort_map.end())
      fail(ErrorKind::EndpointMismatch, "sort '" + s + "' has no image");
    if (!cod.has_sort(it->second))
      fail(ErrorKind::EndpointMismatch,
           "sort '" + s + "' maps to unknown '" + it->second + "'");
  }
  for (const auto &[k, v] : sort_map)
    if (!dom.has_sort(k))
      fail(ErrorKind::EndpointMismatch, "sort map mentions unknown '" + k + "'");

  for (const OpDecl &o : dom.ops()) {
    auto it = op_map.find(o.name);
    if (it == op_map.end())
      fail(ErrorKind::EndpointMismatch, "operation '" + o.name + "' has no image");
    if (!cod.has_op(it->second))
      fail(ErrorKind::EndpointMismatch,
           "operation '" + o.name + "' maps to unknown '" + it->second + "'");
    const OpDecl &img = cod.op(it->second);
    if (img.arg_sorts.size() != o.arg_sorts.size())
      fail(ErrorKind::IllSorted, "operation '" + o.name + "' maps to '" +
                                     it->second + "' of different arity");
    for (size_t i = 0; i < o.arg_sorts.size(); ++i)
      if (img.arg_sorts[i] != sort_map.at(o.arg_sorts[i]))
        fail(ErrorKind::IllSorted, "operation '" + o.name +
                                       "' does not preserve argument sort " +
                                       std::to_string(i + 1));
    if (img.result != sort_map.at(o.result))
      fail(ErrorKind::IllSorted,
           "operation '" + o.name + "' does not preserve result sort");
  }
  for (const auto &[k, v] : op_map)
    if (!dom.has_op(k))
      fail(ErrorKind::EndpointMismatch,
           "operation map mentions unknown '" + k + "'");

  for (const VarDecl &v : dom.vars()) {
    auto it = var_map.find(v.name);
    if (it == var_map.end())
      fail(ErrorKind::EndpointMismatch, "variable '" + v.name + "' has no image");
    std::string got = cod.sort_of(it->second);
    if (got != sort_map.at(v.sort))
      fail(ErrorKind::IllSorted, "variable '" + v.name + "' of sort '" +
                                     v.sort + "' maps to a term of sort '" +
                                     got + "'");
  }
  for (const auto &[k, v] : var_map)
    if (!dom.has_var(k))
      fail(ErrorKind::EndpointMismatch,
           "variable map mentions unknown '" + k + "'");

  for (const Term &t : dom.terms()) {
    Term img = apply_term(t, op_map, var_map);
    if (!cod.terms().count(img))
      fail(ErrorKind::EndpointMismatch,
           "declared term '" + dom.term_text(t) +
               "' maps to '" + cod.term_text(img) +
               "', which the codomain does not declare");
  }
  for (const Equation &e : dom.equations()) {
    Equation img = Equation::make(apply_term(e.lhs, op_map, var_map),
                                  apply_term(e.rhs, op_map, var_map));
    if (!cod.equations().count(img))
      fail(ErrorKind::EndpointMismatch,
           "equation '" + dom.equation_text(e) + "' maps to '" +
               cod.equation_text(img) +
               "', which is not an equation of the codomain");
  }

  SpecMorphism m;
  m.dom_ = std::move(dom);
  m.cod_ = std::move(cod);
  m.sort_map_ = std::move(sort_map);
  m.op_map_ = std::move(op_map);
  m.var_map_ = std::move(var_map);
  return m;
}

SpecMorphism SpecMorphism::identity(const EqSpec &spec) {
  std::map<std::string, std::string> sm, om;
  std::map<std::string, Term> vm;
  for (const std::string &s : spec.sorts()) sm[s] = s;
  for (const OpDecl &o : spec.ops()) om[o.name] = o.name;
  for (const VarDecl &v : spec.vars()) vm[v.name] = Term::var(v.name);
  return make(spec, spec, std::move(sm), std::move(om), std::move(vm));
}

SpecMorphism SpecMorphism::inclusion(const EqSpec &sub, const EqSpec &super) {
  std::map<std::string, std::string> sm, om;
  std::map<std::string, Term> vm;
  for (const std::string &s : sub.sorts()) sm[s] = s;
  for (const OpDecl &o : sub.ops()) om[o.name] = o.name;
  for (const VarDecl &v : sub.vars()) vm[v.name] = Term::var(v.name);
  return make(sub, super, std::move(sm), std::move(om), std::move(vm));
}

const std::string &SpecMorphism::on_sort(const std::string &name) const {
  auto it = sort_map_.find(name);
  if (it == sort_map_.end())
    fail(ErrorKind::Internal, "no sort '" + name + "' in map");
  return it->second;
}

const std::string &SpecMorphism::on_op(const std::string &name) const {
  auto it = op_map_.find(name);
  if (it == op_map_.end())
    fail(ErrorKind::Internal, "no operation '" + name + "' in map");
  return it->second;
}

const Term &SpecMorphism::on_var(const std::string &name) const {
  auto it = var_map_.find(name);
  if (it == var_map_.end())
    fail(ErrorKind::Internal, "no variable '" + name + "' in map");
  return it->second;
}

Term SpecMorphism::apply(const Term &t) const {
  return apply_term(t, op_map_, var_map_);
}

Equation SpecMorphism::apply(const Equation &e) const {
  return Equation::make(apply(e.lhs), apply(e.rhs));
}

bool SpecMorphism::operator==(const SpecMorphism &o) const {
  return dom_ == o.dom_ && cod_ == o.cod_ && sort_map_ == o.sort_map_ &&
         op_map_ == o.op_map_ && var_map_ == o.var_map_;
}

SpecMorphism SpecMorphism::parse(const EqSpec &dom, const EqSpec &cod,
                                 const std::string &text,
                                 const std::string &filename) {
  std::map<std::string, std::string> sm, om;
  std::map<std::string, Term> vm;
  TermSyntax syntax = cod.syntax();
  enum { None, Sorts, Ops, Vars } section = None;
  for (const Line &line : logical_lines(text)) {
    if (line.text == "SORTMAP") { section = Sorts; continue; }
    if (line.text == "OPMAP") { section = Ops; continue; }
    if (line.text == "VARMAP") { section = Vars; continue; }
    if (section == None)
      parse_fail(filename, line.number,
                 "expected SORTMAP, OPMAP, or VARMAP section");
    std::vector<std::string> tok = split_ws(line.text);
    if (tok.size() < 3 || tok[1] != "|->")
      parse_fail(filename, line.number, "expected `x |-> y`");
    if (section == Vars) {
      std::string image = join({tok.begin() + 2, tok.end()}, " ");
      vm[tok[0]] = parse_term(image, syntax, filename, line.number);
    } else {
      if (tok.size() != 3)
        parse_fail(filename, line.number, "expected `x |-> y`");
      (section == Sorts ? sm : om)[tok[0]] = tok[2];
    }
  }
  for (const std::string &s : dom.sorts())
    if (!sm.count(s)) sm[s] = s;
  for (const OpDecl &o : dom.ops())
    if (!om.count(o.name)) om[o.name] = o.name;
  for (const VarDecl &v : dom.vars())
    if (!vm.count(v.name)) vm[v.name] = Term::var(v.name);
  return make(dom, cod, std::move(sm), std::move(om), std::move(vm));
}

std::string SpecMorphism::to_text() const {
  std::ostringstream out;
  if (!sort_map_.empty()) {
    out << "SORTMAP\n";
    for (const auto &[k, v] : sort_map_) out << "  " << k << " |-> " << v << "\n";
  }
  if (!op_map_.empty()) {
    out << "OPMAP\n";
    for (const auto &[k, v] : op_map_) out << "  " << k << " |-> " << v << "\n";
  }
  if (!var_map_.empty()) {
    out << "VARMAP\n";
    for (const auto &[k, v] : var_map_)
      out << "  " << k << " |-> " << cod_.term_text(v) << "\n";
  }
  return out.str();
}

SpecMorphism compose(const SpecMorphism &f, const SpecMorphism &g) {
  if (!(f.cod() == g.dom()))
    fail(ErrorKind::EndpointMismatch, "composition endpoints do not agree");
  std::map<std::string, std::string> sm, om;
  std::map<std::string, Term> vm;
  for (const auto &[k, v] : f.sort_map()) sm[k] = g.on_sort(v);
  for (const auto &[k, v] : f.op_map()) om[k] = g.on_op(v);
  for (const auto &[k, v] : f.var_map()) vm[k] = g.apply(v);
  return SpecMorphism::make(f.dom(), g.cod(), std::move(sm), std::move(om),
                            std::move(vm));
}

bool is_iso(const SpecMorphism &f) {
  // Sorts and operations must be bijective.
  std::set<std::string> seen;
  for (const auto &[k, v] : f.sort_map())
    if (!seen.insert(v).second) return false;
  if (f.sort_map().size() != f.cod().sorts().size()) return false;
  seen.clear();
  for (const auto &[k, v] : f.op_map())
    if (!seen.insert(v).second) return false;
  if (f.op_map().size() != f.cod().ops().size()) return false;
  // Variables must map bijectively onto the codomain's variables.
  seen.clear();
  for (const auto &[k, v] : f.var_map()) {
    if (!v.is_var) return false;
    if (!seen.insert(v.head).second) return false;
  }
  if (f.var_map().size() != f.cod().vars().size()) return false;
  // Declared terms and equations must cover the codomain's exactly.
  TermSet term_image;
  for (const Term &t : f.dom().terms())
    term_image.insert(f.apply(t));
  if (!(term_image == f.cod().terms())) return false;
  EquationSet eqn_image;
  for (const Equation &e : f.dom().equations())
    eqn_image.insert(f.apply(e));
  return eqn_image == f.cod().equations();
}

SpecMorphism invert_iso(const SpecMorphism &f) {
  if (!is_iso(f))
    fail(ErrorKind::Internal, "cannot invert a non-isomorphism");
  std::map<std::string, std::string> sm, om;
  std::map<std::string, Term> vm;
  for (const auto &[k, v] : f.sort_map()) sm[v] = k;
  for (const auto &[k, v] : f.op_map()) om[v] = k;
  for (const auto &[k, v] : f.var_map()) vm[v.head] = Term::var(k);
  return SpecMorphism::make(f.cod(), f.dom(), std::move(sm), std::move(om),
                            std::move(vm));
}

namespace {

// Enumerates all assignments choices[0] x choices[1] x ... in lexicographic
// order of the index vectors, invoking fn on each.
template <typename T, typename Fn>
void product(const std::vector<std::vector<T>> &choices, Fn fn) {
  std::vector<size_t> idx(choices.size(), 0);
  for (const auto &c : choices)
    if (c.empty()) return;
  while (true) {
    std::vector<T> pick;
    pick.reserve(idx.size());
    for (size_t i = 0; i < idx.size(); ++i)
      pick.push_back(choices[i][idx[i]]);
    fn(pick);
    size_t i = idx.size();
    while (i > 0 && ++idx[i - 1] == choices[i - 1].size())
      idx[--i] = 0;
    if (i == 0) return;
  }
}

} // namespace

std::vector<SpecMorphism> enumerate_spec_morphisms(const EqSpec &dom,
                                                   const EqSpec &cod) {
  std::vector<SpecMorphism> out;

  std::vector<std::vector<std::string>> sort_choices;
  for (const std::string &s : dom.sorts()) {
    (void)s;
    sort_choices.push_back(cod.sorts());
  }

  product<std::string>(sort_choices, [&](const std::vector<std::string> &sorts) {
    std::map<std::string, std::string> sm;
    for (size_t i = 0; i < dom.sorts().size(); ++i)
      sm[dom.sorts()[i]] = sorts[i];

    std::vector<std::vector<std::string>> op_choices;
    for (const OpDecl &o : dom.ops()) {
      std::vector<std::string> fits;
      for (const OpDecl &c : cod.ops()) {
        if (c.arg_sorts.size() != o.arg_sorts.size() ||
            c.result != sm.at(o.result))
          continue;
        bool ok = true;
        for (size_t i = 0; i < o.arg_sorts.size(); ++i)
          if (c.arg_sorts[i] != sm.at(o.arg_sorts[i])) { ok = false; break; }
        if (ok) fits.push_back(c.name);
      }
      op_choices.push_back(std::move(fits));
    }

    product<std::string>(op_choices, [&](const std::vector<std::string> &ops) {
      std::map<std::string, std::string> om;
      for (size_t i = 0; i < dom.ops().size(); ++i)
        om[dom.ops()[i].name] = ops[i];

      std::vector<std::vector<Term>> var_choices;
      for (const VarDecl &v : dom.vars()) {
        TermSet pool = cod.terms();
        for (const VarDecl &cv : cod.vars())
          pool.insert(Term::var(cv.name));
        std::vector<Term> fits;
        for (const Term &t : pool)
          if (cod.sort_of(t) == sm.at(v.sort))
            fits.push_back(t);
        var_choices.push_back(std::move(fits));
      }

      product<Term>(var_choices, [&](const std::vector<Term> &vars) {
        std::map<std::string, Term> vm;
        for (size_t i = 0; i < dom.vars().size(); ++i)
          vm[dom.vars()[i].name] = vars[i];
        try {
          out.push_back(SpecMorphism::make(dom, cod, sm, om, vm));
        } catch (const Error &) {
          // Candidate does not preserve terms or equations; skip it.
        }
      });
    });
  });
  return out;
}

std::optional<SpecMorphism> find_spec_iso(const EqSpec &a, const EqSpec &b) {
  if (a.sorts().size() != b.sorts().size() || a.ops().size() != b.ops().size() ||
      a.vars().size() != b.vars().size() ||
      a.terms().size() != b.terms().size() ||
      a.equations().size() != b.equations().size())
    return std::nullopt;

  // Isomorphisms send variables to variables, so the search space is the
  // bijections between name sets with compatible signatures.
  std::vector<std::string> perm = b.sorts();
  std::sort(perm.begin(), perm.end());
  do {
    std::map<std::string, std::string> sm;
    for (size_t i = 0; i < a.sorts().size(); ++i)
      sm[a.sorts()[i]] = perm[i];

    std::vector<std::string> op_names;
    for (const OpDecl &o : b.ops()) op_names.push_back(o.name);
    std::sort(op_names.begin(), op_names.end());
    do {
      std::map<std::string, std::string> om;
      bool sig_ok = true;
      for (size_t i = 0; i < a.ops().size() && sig_ok; ++i) {
        const OpDecl &d = a.ops()[i];
        const OpDecl &c = b.op(op_names[i]);
        if (c.arg_sorts.size() != d.arg_sorts.size() ||
            c.result != sm.at(d.result)) { sig_ok = false; break; }
        for (size_t j = 0; j < d.arg_sorts.size(); ++j)
          if (c.arg_sorts[j] != sm.at(d.arg_sorts[j])) { sig_ok = false; break; }
        om[d.name] = c.name;
      }
      if (!sig_ok) continue;

      std::vector<std::string> var_names;
      for (const VarDecl &v : b.vars()) var_names.push_back(v.name);
      std::sort(var_names.begin(), var_names.end());
      do {
        std::map<std::string, Term> vm;
        bool sort_ok = true;
        for (size_t i = 0; i < a.vars().size(); ++i) {
          if (b.var(var_names[i]).sort != sm.at(a.vars()[i].sort)) {
            sort_ok = false;
            break;
          }
          vm[a.vars()[i].name] = Term::var(var_names[i]);
        }
        if (!sort_ok) continue;
        try {
          SpecMorphism m = SpecMorphism::make(a, b, sm, om, vm);
          if (is_iso(m)) return m;
        } catch (const Error &) {
        }
      } while (std::next_permutation(var_names.begin(), var_names.end()));
    } while (std::next_permutation(op_names.begin(), op_names.end()));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

} // namespace dred

#include "dred/derivability.hpp"

#include "dred/errors.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace dred {

const char *to_string(PleoStatus status) {
  switch (status) {
  case PleoStatus::Verified: return "Verified";
  case PleoStatus::Refuted: return "Refuted";
  case PleoStatus::Unknown: return "Unknown";
  }
  return "Unknown";
}

namespace {

// Ground congruence closure over a growing universe of hash-consed terms.
// Every merge is recorded with its reason so a successful goal check can be
// explained as a list of axiom instances.
class Congruence {
public:
  int add(const Term &t) {
    auto it = id_of_.find(t);
    if (it != id_of_.end())
      return it->second;
    std::vector<int> kids;
    kids.reserve(t.args.size());
    for (const Term &a : t.args)
      kids.push_back(add(a));
    int id = static_cast<int>(terms_.size());
    id_of_.emplace(t, id);
    terms_.push_back(t);
    kids_.push_back(std::move(kids));
    parent_.push_back(id);
    return id;
  }

  size_t size() const { return terms_.size(); }
  const Term &term(int id) const { return terms_[id]; }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool same(int a, int b) { return find(a) == find(b); }

  // Merges two terms as an instance of an axiom. No-op when already equal.
  bool assert_equal(int a, int b, TraceStep step) {
    if (same(a, b))
      return false;
    records_.push_back({a, b, std::move(step), {}});
    parent_[find(a)] = find(b);
    return true;
  }

  // Congruence rule to fixpoint: terms with the same head whose arguments are
  // pairwise equal get merged.
  bool close() {
    bool changed_any = false;
    for (bool changed = true; changed;) {
      changed = false;
      std::map<std::pair<std::string, std::vector<int>>, int> signature;
      for (int id = 0; id < static_cast<int>(terms_.size()); ++id) {
        if (terms_[id].is_var || kids_[id].empty())
          continue;
        std::vector<int> roots;
        roots.reserve(kids_[id].size());
        for (int k : kids_[id])
          roots.push_back(find(k));
        auto [it, fresh] =
            signature.emplace(std::make_pair(terms_[id].head, roots), id);
        if (fresh || same(it->second, id))
          continue;
        std::vector<std::pair<int, int>> why;
        for (size_t i = 0; i < kids_[id].size(); ++i)
          why.emplace_back(kids_[it->second][i], kids_[id][i]);
        records_.push_back({it->second, id, std::nullopt, std::move(why)});
        parent_[find(it->second)] = find(id);
        changed = changed_any = true;
      }
    }
    return changed_any;
  }

  // Axiom instances justifying the merge of a and b, in discovery order.
  std::vector<TraceStep> explain(int a, int b) {
    std::vector<TraceStep> out;
    std::set<std::pair<int, int>> seen;
    explain_rec(a, b, static_cast<int>(records_.size()), out, seen);
    return out;
  }

private:
  struct Record {
    int a, b;
    std::optional<TraceStep> axiom;       // set for axiom-instance merges
    std::vector<std::pair<int, int>> why; // argument pairs for congruence
  };

  void explain_rec(int a, int b, int limit, std::vector<TraceStep> &out,
                   std::set<std::pair<int, int>> &seen) {
    if (a == b || !seen.insert({std::min(a, b), std::max(a, b)}).second)
      return;
    // Records up to `limit` form a graph whose components are the classes at
    // that time; walk a path from a to b and justify each edge on it.
    std::map<int, std::pair<int, int>> from; // node -> (previous node, record)
    std::vector<int> queue{a};
    from[a] = {a, -1};
    for (size_t qi = 0; qi < queue.size() && !from.count(b); ++qi) {
      int at = queue[qi];
      for (int ri = 0; ri < limit; ++ri) {
        const Record &r = records_[ri];
        int next = r.a == at ? r.b : r.b == at ? r.a : -1;
        if (next < 0 || from.count(next))
          continue;
        from[next] = {at, ri};
        queue.push_back(next);
      }
    }
    if (!from.count(b))
      fail(ErrorKind::Internal, "no explanation path between merged terms");
    for (int at = b; at != a;) {
      auto [prev, ri] = from[at];
      const Record &r = records_[ri];
      if (r.axiom) {
        out.push_back(*r.axiom);
      } else {
        for (const auto &[x, y] : r.why)
          explain_rec(x, y, ri, out, seen);
      }
      at = prev;
    }
  }

  std::map<Term, int, TermLess> id_of_;
  std::vector<Term> terms_;
  std::vector<std::vector<int>> kids_;
  std::vector<int> parent_;
  std::vector<Record> records_;
};

std::vector<std::string> sorted_vars(const Equation &e) {
  std::set<std::string> vars;
  e.lhs.collect_vars(vars);
  e.rhs.collect_vars(vars);
  return {vars.begin(), vars.end()};
}

// Deduplicates axiom instances across rounds.
using InstanceKey = std::pair<const Equation *, std::vector<int>>;

} // namespace

DeriveResult derivable(const EqSpec &spec, const Equation &goal,
                       const DeriveOptions &opts) {
  std::string ls = spec.sort_of(goal.lhs), rs = spec.sort_of(goal.rhs);
  if (ls != rs)
    fail(ErrorKind::IllSorted, "goal relates sort '" + ls + "' to sort '" +
                                   rs + "': " + spec.equation_text(goal));

  Congruence cc;
  for (const Term &t : spec.terms())
    cc.add(t);
  int gl = cc.add(goal.lhs), gr = cc.add(goal.rhs);

  // Every axiom holds as stated (variables acting as atoms), so assert all of
  // them up front; axioms with variables additionally get instantiated below.
  std::vector<const Equation *> schematic;
  for (const Equation &e : spec.equations()) {
    cc.assert_equal(cc.add(e.lhs), cc.add(e.rhs), {e, {}});
    if (!sorted_vars(e).empty())
      schematic.push_back(&e);
  }
  cc.close();

  DeriveResult result;
  result.trace.goal = goal;
  if (cc.same(gl, gr)) {
    result.status = PleoStatus::Verified;
    result.trace.steps = cc.explain(gl, gr);
    return result;
  }

  // Sorts are memoized per term id; instances only ever substitute
  // well-sorted terms, so every id in the universe has a sort.
  std::vector<std::string> sort_of;
  auto sort_of_id = [&](int id) -> const std::string & {
    while (sort_of.size() < cc.size())
      sort_of.push_back(spec.sort_of(cc.term(static_cast<int>(sort_of.size()))));
    return sort_of[id];
  };

  std::set<InstanceKey> applied;
  size_t instances = 0;
  bool exhausted = false;

  for (int round = 1; round <= opts.depth && !exhausted; ++round) {
    result.trace.rounds = round;
    int universe = static_cast<int>(cc.size());
    bool progress = false;
    for (const Equation *axiom : schematic) {
      std::vector<std::string> vars = sorted_vars(*axiom);
      std::vector<std::vector<int>> candidates;
      for (const std::string &v : vars) {
        std::vector<int> fits;
        const std::string &want = spec.var(v).sort;
        for (int id = 0; id < universe; ++id)
          if (sort_of_id(id) == want)
            fits.push_back(id);
        candidates.push_back(std::move(fits));
      }
      if (std::any_of(candidates.begin(), candidates.end(),
                      [](const std::vector<int> &c) { return c.empty(); }))
        continue;

      std::vector<size_t> idx(vars.size(), 0);
      while (!exhausted) {
        std::vector<int> key;
        key.reserve(vars.size());
        for (size_t i = 0; i < vars.size(); ++i)
          key.push_back(candidates[i][idx[i]]);
        if (applied.insert({axiom, key}).second) {
          if (++instances > opts.max_instances || cc.size() > opts.max_terms) {
            exhausted = true;
            break;
          }
          std::map<std::string, Term> binding;
          for (size_t i = 0; i < vars.size(); ++i)
            binding[vars[i]] = cc.term(key[i]);
          int il = cc.add(substitute(axiom->lhs, binding));
          int ir = cc.add(substitute(axiom->rhs, binding));
          progress |= cc.assert_equal(il, ir, {*axiom, std::move(binding)});
        }
        size_t i = idx.size();
        while (i > 0 && ++idx[i - 1] == candidates[i - 1].size())
          idx[--i] = 0;
        if (i == 0)
          break;
      }
      progress |= cc.close();
      if (cc.same(gl, gr)) {
        result.status = PleoStatus::Verified;
        result.trace.steps = cc.explain(gl, gr);
        return result;
      }
    }
    if (!progress && static_cast<int>(cc.size()) == universe)
      break; // saturated: more rounds cannot change anything
  }
  return result;
}

bool replay_trace(const EqSpec &spec, const DerivationTrace &trace) {
  Congruence cc;
  int gl = cc.add(trace.goal.lhs), gr = cc.add(trace.goal.rhs);
  for (const TraceStep &step : trace.steps) {
    if (!spec.equations().count(step.axiom))
      fail(ErrorKind::Internal,
           "trace step uses an equation the spec does not contain: " +
               spec.equation_text(step.axiom));
    for (const auto &[name, value] : step.binding)
      if (spec.sort_of(Term::var(name)) != spec.sort_of(value))
        fail(ErrorKind::IllSorted,
             "trace binding for '" + name + "' has the wrong sort");
    cc.assert_equal(cc.add(substitute(step.axiom.lhs, step.binding)),
                    cc.add(substitute(step.axiom.rhs, step.binding)),
                    step);
  }
  cc.close();
  return cc.same(gl, gr);
}

namespace {

// Invokes fn for every assignment of carrier elements to the given variables;
// stops early when fn returns false.
bool for_each_assignment(
    const EqSpec &spec, const Model &model, const std::vector<std::string> &vars,
    const std::function<bool(const std::map<std::string, std::string> &)> &fn) {
  std::vector<const std::vector<std::string> *> pools;
  for (const std::string &v : vars) {
    pools.push_back(&model.carrier(spec.var(v).sort));
    if (pools.back()->empty())
      return true; // no assignments at all
  }
  std::vector<size_t> idx(vars.size(), 0);
  while (true) {
    std::map<std::string, std::string> env;
    for (size_t i = 0; i < vars.size(); ++i)
      env[vars[i]] = (*pools[i])[idx[i]];
    if (!fn(env))
      return false;
    size_t i = idx.size();
    while (i > 0 && ++idx[i - 1] == pools[i - 1]->size())
      idx[--i] = 0;
    if (i == 0)
      return true;
  }
}

} // namespace

std::optional<std::pair<Equation, std::map<std::string, std::string>>>
model_failure(const EqSpec &spec, const Model &model) {
  model.check_signature(spec);
  for (const Equation &e : spec.equations()) {
    std::optional<std::pair<Equation, std::map<std::string, std::string>>> bad;
    for_each_assignment(spec, model, sorted_vars(e),
                        [&](const std::map<std::string, std::string> &env) {
                          if (model.eval(e.lhs, env) != model.eval(e.rhs, env)) {
                            bad = {e, env};
                            return false;
                          }
                          return true;
                        });
    if (bad)
      return bad;
  }
  return std::nullopt;
}

RefuteResult refute(const EqSpec &spec, const Model &model,
                    const Equation &goal) {
  std::string ls = spec.sort_of(goal.lhs), rs = spec.sort_of(goal.rhs);
  if (ls != rs)
    fail(ErrorKind::IllSorted, "goal relates sort '" + ls + "' to sort '" +
                                   rs + "': " + spec.equation_text(goal));
  if (auto bad = model_failure(spec, model))
    fail(ErrorKind::ModelDoesNotSatisfySpec,
         "model violates '" + spec.equation_text(bad->first) +
             "', so it cannot refute anything");

  RefuteResult result;
  for_each_assignment(spec, model, sorted_vars(goal),
                      [&](const std::map<std::string, std::string> &env) {
                        if (model.eval(goal.lhs, env) !=
                            model.eval(goal.rhs, env)) {
                          result.refuted = true;
                          result.assignment = env;
                          return false;
                        }
                        return true;
                      });
  return result;
}

PleoVerdict is_pleomorphism(const SpecMorphism &m, const DeriveOptions &opts,
                            const Model *model) {
  PleoVerdict verdict;

  std::set<std::string> sort_image, op_image;
  for (const auto &[k, v] : m.sort_map())
    sort_image.insert(v);
  for (const auto &[k, v] : m.op_map())
    op_image.insert(v);
  if (sort_image.size() != m.sort_map().size() ||
      sort_image.size() != m.cod().sorts().size()) {
    verdict.status = PleoStatus::Refuted;
    verdict.detail = "not bijective on sorts";
    return verdict;
  }
  if (op_image.size() != m.op_map().size() ||
      op_image.size() != m.cod().ops().size()) {
    verdict.status = PleoStatus::Refuted;
    verdict.detail = "not bijective on operations";
    return verdict;
  }

  EquationSet image;
  for (const Equation &e : m.dom().equations())
    image.insert(m.apply(e));

  // Equations the codomain adds beyond the image must all be derivable from
  // the image over the codomain's universe.
  EqSpec base = EqSpec::make(
      m.cod().sorts(), m.cod().ops(), m.cod().vars(),
      {m.cod().terms().begin(), m.cod().terms().end()},
      {image.begin(), image.end()});

  std::vector<Equation> unknown;
  for (const Equation &e : m.cod().equations()) {
    if (image.count(e))
      continue;
    DeriveResult r = derivable(base, e, opts);
    if (r.status == PleoStatus::Verified) {
      verdict.derivations.emplace_back(e, std::move(r.trace));
      continue;
    }
    if (model) {
      RefuteResult rr = refute(base, *model, e);
      if (rr.refuted) {
        verdict.status = PleoStatus::Refuted;
        verdict.detail = "countermodel refutes an added equation";
        verdict.refuted_equation = e;
        verdict.refuting_assignment = rr.assignment;
        return verdict;
      }
    }
    unknown.push_back(e);
  }

  if (!unknown.empty()) {
    verdict.status = PleoStatus::Unknown;
    std::ostringstream os;
    os << "could not derive:";
    for (const Equation &e : unknown)
      os << " '" << m.cod().equation_text(e) << "'";
    verdict.detail = os.str();
    return verdict;
  }
  verdict.status = PleoStatus::Verified;
  verdict.detail = "all added equations derivable";
  return verdict;
}

} // namespace dred

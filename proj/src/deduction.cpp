#include "dred/deduction.hpp"

#include "dred/textio.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace dred {

using nlohmann::ordered_json;

Fraction Fraction::make(SpecMorphism h, SpecMorphism c,
                        const DeriveOptions &opts, bool assume_pleo) {
  if (!(h.cod() == c.cod()))
    fail(ErrorKind::EndpointMismatch,
         "fraction legs must share their pattern");
  Fraction f;
  f.denominator_verdict = is_pleomorphism(h, opts);
  if (f.denominator_verdict.status == PleoStatus::Refuted)
    fail(ErrorKind::DenominatorNotPleo,
         "denominator is not a pleomorphism: " + f.denominator_verdict.detail);
  if (f.denominator_verdict.status == PleoStatus::Unknown && !assume_pleo)
    fail(ErrorKind::PleoUnverified,
         "denominator could not be verified: " + f.denominator_verdict.detail);
  f.denominator = std::move(h);
  f.numerator = std::move(c);
  return f;
}

Span<SpecCat> kernel_from_names(const EqSpec &hypothesis,
                                const EqSpec &conclusion) {
  std::vector<std::string> sorts;
  for (const std::string &s : hypothesis.sorts())
    if (conclusion.has_sort(s))
      sorts.push_back(s);

  std::vector<OpDecl> ops;
  for (const OpDecl &o : hypothesis.ops()) {
    if (!conclusion.has_op(o.name))
      continue;
    const OpDecl &other = conclusion.op(o.name);
    if (!o.same_signature(other))
      fail(ErrorKind::SortMismatch, "operation '" + o.name +
                                        "' is declared differently in the "
                                        "hypothesis and the conclusion");
    OpDecl shared = o;
    shared.infix = o.infix || other.infix;
    ops.push_back(std::move(shared));
  }

  std::vector<VarDecl> vars;
  for (const VarDecl &v : hypothesis.vars()) {
    if (!conclusion.has_var(v.name))
      continue;
    if (conclusion.var(v.name).sort != v.sort)
      fail(ErrorKind::SortMismatch, "variable '" + v.name +
                                        "' has different sorts in the "
                                        "hypothesis and the conclusion");
    vars.push_back(v);
  }

  std::vector<Term> terms;
  for (const Term &t : hypothesis.terms())
    if (conclusion.terms().count(t))
      terms.push_back(t);

  std::vector<Equation> equations;
  for (const Equation &e : hypothesis.equations())
    if (conclusion.equations().count(e))
      equations.push_back(e);

  EqSpec kernel = EqSpec::make(std::move(sorts), std::move(ops),
                               std::move(vars), std::move(terms),
                               std::move(equations));
  return Span<SpecCat>::make(SpecMorphism::inclusion(kernel, hypothesis),
                             SpecMorphism::inclusion(kernel, conclusion));
}

DeductionRule rule_from_span(std::string name, const Span<SpecCat> &span,
                             const DeriveOptions &opts, bool assume_pleo) {
  PushoutResult<SpecCat> po = spec_pushout(span);
  DeductionRule rule;
  rule.name = std::move(name);
  rule.fraction =
      Fraction::make(po.left_inj, po.right_inj, opts, assume_pleo);
  rule.kernel = span;
  return rule;
}

std::vector<DeductionRule> parse_rules(const std::string &text,
                                       const std::string &filename,
                                       const DeriveOptions &opts,
                                       bool assume_pleo) {
  struct Block {
    std::string name;
    std::map<std::string, std::string> sections;
    int line = 0;
  };
  std::vector<Block> blocks;
  std::string current_section;
  const std::set<std::string> markers = {"H:", "C:", "K:", "P:",
                                         "l:", "r:", "h:", "c:"};
  for (const Line &line : logical_lines(text)) {
    std::vector<std::string> tok = split_ws(line.text);
    if (tok.size() == 2 && tok[0] == "DEDRULE") {
      blocks.push_back({tok[1], {}, line.number});
      current_section.clear();
      continue;
    }
    if (tok.size() == 1 && markers.count(tok[0])) {
      if (blocks.empty())
        parse_fail(filename, line.number, "section outside of a DEDRULE block");
      current_section = tok[0].substr(0, 1);
      continue;
    }
    if (blocks.empty() || current_section.empty())
      parse_fail(filename, line.number, "expected `DEDRULE <name>` header");
    blocks.back().sections[current_section] += line.text + "\n";
  }

  std::vector<DeductionRule> rules;
  for (const Block &b : blocks) {
    for (const char *req : {"H", "C"})
      if (!b.sections.count(req))
        parse_fail(filename, b.line,
                   "rule '" + b.name + "' is missing its " + req + ": section");
    auto section = [&](const char *key) -> std::string {
      auto it = b.sections.find(key);
      return it == b.sections.end() ? std::string() : it->second;
    };
    EqSpec H = EqSpec::parse(section("H"), filename);
    EqSpec C = EqSpec::parse(section("C"), filename);

    if (b.sections.count("K")) {
      // Span form: the pattern is the pushout of H <- K -> C.
      EqSpec K = EqSpec::parse(section("K"), filename);
      SpecMorphism l = SpecMorphism::parse(K, H, section("l"), filename);
      SpecMorphism r = SpecMorphism::parse(K, C, section("r"), filename);
      rules.push_back(rule_from_span(b.name, Span<SpecCat>::make(l, r), opts,
                                     assume_pleo));
      continue;
    }
    if (!b.sections.count("P"))
      parse_fail(filename, b.line,
                 "rule '" + b.name +
                     "' needs either a K: section (span form) or a P: "
                     "section (fraction form)");
    EqSpec P = EqSpec::parse(section("P"), filename);
    SpecMorphism h = SpecMorphism::parse(H, P, section("h"), filename);
    SpecMorphism c = SpecMorphism::parse(C, P, section("c"), filename);
    DeductionRule rule;
    rule.name = b.name;
    rule.fraction = Fraction::make(h, c, opts, assume_pleo);
    // A name-based kernel makes witness-based steps available when its
    // square under the fraction commutes.
    try {
      Span<SpecCat> kernel = kernel_from_names(H, C);
      if (Square<SpecCat>::make(kernel.left, kernel.right, h, c).commutes())
        rule.kernel = std::move(kernel);
    } catch (const Error &) {
      // No usable kernel; the rule still supports classic steps.
    }
    rules.push_back(std::move(rule));
  }
  if (rules.empty())
    fail(ErrorKind::Parse, filename + ": no DEDRULE blocks");
  return rules;
}

std::vector<DeductionRule> load_rules(const std::string &path,
                                      const DeriveOptions &opts,
                                      bool assume_pleo) {
  return parse_rules(read_file(path), path, opts, assume_pleo);
}

ClassicStep classic_step(const Fraction &fraction, const SpecMorphism &instance,
                         const DeriveOptions &opts) {
  if (!(instance.dom() == fraction.hypothesis()))
    fail(ErrorKind::EndpointMismatch,
         "instance domain is not the rule's hypothesis");
  ClassicStep step{spec_pushout(Span<SpecCat>::make(instance,
                                                    fraction.denominator)),
                   {}, {}, {}, {}};
  step.state_inclusion = step.pushout.left_inj;
  step.pattern_instance = step.pushout.right_inj;
  step.conclusion_instance =
      compose(fraction.numerator, step.pushout.right_inj);
  step.inclusion_verdict = is_pleomorphism(step.state_inclusion, opts);
  return step;
}

Witness full_witness(const DeductionRule &rule, const SpecMorphism &instance) {
  if (!rule.kernel)
    fail(ErrorKind::NonComposable,
         "rule '" + rule.name + "' has no kernel span");
  const EqSpec &state = instance.cod();
  return {state, compose(rule.kernel->left, instance),
          SpecMorphism::identity(state)};
}

Witness minimal_witness(const DeductionRule &rule, const SpecMorphism &instance,
                        const DeriveOptions &opts) {
  if (!rule.kernel)
    fail(ErrorKind::NonComposable,
         "rule '" + rule.name + "' has no kernel span");
  const EqSpec &state = instance.cod();
  SpecMorphism base = compose(rule.kernel->left, instance);

  std::vector<Term> image_terms;
  for (const Term &t : base.dom().terms())
    image_terms.push_back(base.apply(t));
  EquationSet image_eqns;
  for (const Equation &e : base.dom().equations())
    image_eqns.insert(base.apply(e));

  auto witness_kernel = [&](const EquationSet &eqns) {
    return EqSpec::make(state.sorts(), state.ops(), state.vars(), image_terms,
                        {eqns.begin(), eqns.end()});
  };
  auto embedding = [&](const EqSpec &kernel) {
    return SpecMorphism::inclusion(kernel, state);
  };

  // Start from every state equation and drop, in canonical order, whatever
  // the embedding can still re-derive without; image equations must stay so
  // the kernel instance remains valid.
  EquationSet kept = state.equations();
  for (const Equation &e : state.equations()) {
    if (image_eqns.count(e))
      continue;
    EquationSet trial = kept;
    trial.erase(e);
    if (is_pleomorphism(embedding(witness_kernel(trial)), opts).status ==
        PleoStatus::Verified)
      kept = std::move(trial);
  }

  EqSpec kernel = witness_kernel(kept);
  SpecMorphism kernel_instance =
      SpecMorphism::make(base.dom(), kernel, base.sort_map(), base.op_map(),
                         base.var_map());
  return {kernel, std::move(kernel_instance), embedding(kernel)};
}

bool PleoStep::all_verified() const {
  for (const CubeFaceCheck &f : faces)
    if (!f.ok())
      return false;
  for (const PleoCheck &p : pleos)
    if (p.verdict.status != PleoStatus::Verified)
      return false;
  return true;
}

PleoStep pleopushout_step(const DeductionRule &rule,
                          const SpecMorphism &instance, const Witness &witness,
                          const DeriveOptions &opts) {
  if (!rule.kernel)
    fail(ErrorKind::NonComposable,
         "rule '" + rule.name + "' has no kernel span");
  const Span<SpecCat> &kernel = *rule.kernel;
  if (!(instance.dom() == rule.fraction.hypothesis()))
    fail(ErrorKind::EndpointMismatch,
         "instance domain is not the rule's hypothesis");
  if (!(witness.instance.dom() == kernel.apex()))
    fail(ErrorKind::EndpointMismatch,
         "witness instance domain is not the rule's kernel");
  if (!(witness.instance.cod() == witness.kernel) ||
      !(witness.to_state.dom() == witness.kernel))
    fail(ErrorKind::EndpointMismatch,
         "witness legs do not agree on the state kernel");
  if (!(witness.to_state.cod() == instance.cod()))
    fail(ErrorKind::EndpointMismatch,
         "witness embedding does not land in the current state");

  if (!(compose(kernel.left, instance) ==
        compose(witness.instance, witness.to_state)))
    fail(ErrorKind::LeftSquareNotCommuting,
         "witness does not commute with the hypothesis instance");

  PleoStep step;
  step.state_kernel = witness.kernel;
  step.witness_instance = witness.instance;
  step.witness_to_state = witness.to_state;

  // Right face: push the kernel instance out along the rule's kernel.
  PushoutResult<SpecCat> right = spec_pushout(
      Span<SpecCat>::make(witness.instance, kernel.right));
  step.state_conclusion = right.object;
  step.witness_to_conclusion = right.left_inj;
  step.conclusion_instance = right.right_inj;

  // Bottom face: join the conclusion state with the old state.
  PushoutResult<SpecCat> bottom = spec_pushout(
      Span<SpecCat>::make(witness.to_state, step.witness_to_conclusion));
  step.state_vertex = bottom.object;
  step.state_to_vertex = bottom.left_inj;
  step.conclusion_to_vertex = bottom.right_inj;

  // The pattern maps into the vertex by the universal property of the top
  // pushout; rebuild it so the comparison with the declared pattern is exact.
  PushoutResult<SpecCat> top = spec_pushout(kernel);
  std::optional<SpecMorphism> onto_pattern = SpecCat::mediating(
      top, rule.fraction.denominator, rule.fraction.numerator);
  if (!onto_pattern || !is_iso(*onto_pattern))
    fail(ErrorKind::CubeCheckFailed,
         "rule pattern is not the pushout of its kernel");
  std::optional<SpecMorphism> onto_vertex = SpecCat::mediating(
      top, compose(instance, step.state_to_vertex),
      compose(step.conclusion_instance, step.conclusion_to_vertex));
  if (!onto_vertex)
    fail(ErrorKind::CubeCheckFailed,
         "no mediating morphism from the pattern onto the state vertex");
  step.pattern_instance = compose(invert_iso(*onto_pattern), *onto_vertex);

  auto face = [&](const char *name, const SpecMorphism &t,
                  const SpecMorphism &l, const SpecMorphism &r,
                  const SpecMorphism &b, bool check_pushout) {
    Square<SpecCat> sq = Square<SpecCat>::make(t, l, r, b);
    CubeFaceCheck check;
    check.name = name;
    check.commutes = sq.commutes();
    if (check_pushout)
      check.pushout = verify_pushout(sq);
    step.faces.push_back(std::move(check));
  };
  face("top", kernel.left, kernel.right, rule.fraction.denominator,
       rule.fraction.numerator, true);
  face("bottom", witness.to_state, step.witness_to_conclusion,
       step.state_to_vertex, step.conclusion_to_vertex, true);
  face("back_left", kernel.left, witness.instance, instance,
       witness.to_state, false);
  face("back_right", kernel.right, witness.instance,
       step.conclusion_instance, step.witness_to_conclusion, true);
  face("front_left", rule.fraction.denominator, instance,
       step.pattern_instance, step.state_to_vertex, true);
  face("front_right", rule.fraction.numerator, step.conclusion_instance,
       step.pattern_instance, step.conclusion_to_vertex, false);

  step.pleos.push_back({"rule_denominator", rule.fraction.denominator_verdict});
  step.pleos.push_back(
      {"witness_to_state", is_pleomorphism(witness.to_state, opts)});
  step.pleos.push_back({"witness_to_conclusion",
                        is_pleomorphism(step.witness_to_conclusion, opts)});
  step.pleos.push_back(
      {"state_to_vertex", is_pleomorphism(step.state_to_vertex, opts)});
  step.pleos.push_back({"conclusion_to_vertex",
                        is_pleomorphism(step.conclusion_to_vertex, opts)});
  return step;
}

std::string cube_dot(const PleoStep &step, const std::string &rule_name) {
  std::ostringstream os;
  os << "digraph cube {\n";
  os << "  label=\"" << rule_name << "\";\n";
  os << "  node [shape=box];\n";
  os << "  rule_kernel; rule_hypothesis; rule_conclusion; rule_pattern;\n";
  os << "  state_kernel; state; state_conclusion; state_vertex;\n";
  os << "  rule_kernel -> rule_hypothesis [label=\"l\"];\n";
  os << "  rule_kernel -> rule_conclusion [label=\"r\"];\n";
  os << "  rule_hypothesis -> rule_pattern [label=\"h\"];\n";
  os << "  rule_conclusion -> rule_pattern [label=\"c\"];\n";
  os << "  rule_kernel -> state_kernel [label=\"kernel instance\"];\n";
  os << "  rule_hypothesis -> state [label=\"instance\"];\n";
  os << "  rule_conclusion -> state_conclusion [label=\"conclusion instance\"];\n";
  os << "  rule_pattern -> state_vertex [label=\"pattern instance\"];\n";
  os << "  state_kernel -> state [label=\"to state\"];\n";
  os << "  state_kernel -> state_conclusion [label=\"to conclusion\"];\n";
  os << "  state -> state_vertex [label=\"to vertex\"];\n";
  os << "  state_conclusion -> state_vertex [label=\"to vertex\"];\n";
  for (const CubeFaceCheck &f : step.faces) {
    os << "  // face " << f.name << ": "
       << (f.commutes ? "commutes" : "does not commute");
    if (f.pushout)
      os << (*f.pushout ? ", pushout" : ", not a pushout");
    os << "\n";
  }
  os << "}\n";
  return os.str();
}

std::vector<ScriptStep> parse_script(const std::string &text,
                                     const std::string &filename) {
  std::vector<ScriptStep> steps;
  for (const Line &line : logical_lines(text)) {
    std::vector<std::string> tok = split_ws(line.text);
    if (tok.size() < 2 || tok[0] != "step")
      parse_fail(filename, line.number, "expected `step <rule> ...`");
    ScriptStep step;
    step.rule = tok[1];
    step.line = line.number;
    for (size_t i = 2; i < tok.size(); ++i) {
      const std::string &t = tok[i];
      if (t == "bind") {
        if (++i >= tok.size())
          parse_fail(filename, line.number, "bind needs `<var>=<term>`");
        size_t eq = tok[i].find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == tok[i].size())
          parse_fail(filename, line.number, "bind needs `<var>=<term>`");
        step.bindings.emplace_back(tok[i].substr(0, eq), tok[i].substr(eq + 1));
      } else if (t.rfind("mode=", 0) == 0) {
        step.mode = t.substr(5);
      } else if (t.rfind("eq=", 0) == 0) {
        step.equation = t.substr(3);
      } else if (t.rfind("term=", 0) == 0) {
        step.term = t.substr(5);
      } else {
        parse_fail(filename, line.number, "unknown step argument '" + t + "'");
      }
    }
    if (step.rule == "instantiate") {
      if (step.equation.empty() || !step.mode.empty() ||
          !step.bindings.empty() || !step.term.empty())
        parse_fail(filename, line.number,
                   "instantiate takes exactly `eq=<lhs>==<rhs>`");
    } else if (step.rule == "declare") {
      if (step.term.empty() || !step.mode.empty() || !step.bindings.empty() ||
          !step.equation.empty())
        parse_fail(filename, line.number,
                   "declare takes exactly `term=<term>`");
    } else {
      if (!step.mode.empty() && step.mode != "classic" && step.mode != "pleo" &&
          step.mode != "pleo-minimal")
        parse_fail(filename, line.number,
                   "mode must be classic, pleo, or pleo-minimal");
      if (!step.equation.empty())
        parse_fail(filename, line.number, "eq= is only for instantiate steps");
      if (!step.term.empty())
        parse_fail(filename, line.number, "term= is only for declare steps");
    }
    steps.push_back(std::move(step));
  }
  return steps;
}

namespace {

ordered_json trace_json(const EqSpec &spec, const DerivationTrace &trace) {
  ordered_json steps = ordered_json::array();
  for (const TraceStep &s : trace.steps) {
    ordered_json binding = ordered_json::object();
    for (const auto &[var, term] : s.binding)
      binding[var] = spec.term_text(term);
    steps.push_back({{"axiom", spec.equation_text(s.axiom)},
                     {"binding", std::move(binding)}});
  }
  return {{"goal", spec.equation_text(trace.goal)},
          {"rounds", trace.rounds},
          {"steps", std::move(steps)}};
}

} // namespace

ordered_json pleo_verdict_json(const PleoVerdict &verdict, const EqSpec &onto) {
  ordered_json out;
  out["status"] = to_string(verdict.status);
  if (!verdict.detail.empty())
    out["detail"] = verdict.detail;
  if (!verdict.derivations.empty()) {
    ordered_json ds = ordered_json::array();
    for (const auto &[eq, trace] : verdict.derivations) {
      (void)eq;
      ds.push_back(trace_json(onto, trace));
    }
    out["derivations"] = std::move(ds);
  }
  if (verdict.refuted_equation) {
    out["refuted_equation"] = onto.equation_text(*verdict.refuted_equation);
    ordered_json env = ordered_json::object();
    for (const auto &[var, value] : verdict.refuting_assignment)
      env[var] = value;
    out["assignment"] = std::move(env);
  }
  return out;
}

SpecMorphism instance_from_bindings(
    const EqSpec &hypothesis, const EqSpec &state,
    const std::vector<std::pair<std::string, std::string>> &bindings,
    const std::string &filename, int line) {
  TermSyntax syntax = state.syntax();
  std::map<std::string, Term> vm;
  for (const auto &[var, text] : bindings) {
    if (!hypothesis.has_var(var))
      parse_fail(filename, line,
                 "binding for unknown hypothesis variable '" + var + "'");
    vm[var] = parse_term(text, syntax, filename, line);
  }
  for (const VarDecl &v : hypothesis.vars())
    if (!vm.count(v.name))
      vm[v.name] = Term::var(v.name);

  std::map<std::string, std::string> sm;
  for (const VarDecl &v : hypothesis.vars()) {
    std::string target;
    try {
      target = state.sort_of(vm.at(v.name));
    } catch (const Error &) {
      continue; // let SpecMorphism::make report the bad image
    }
    auto [it, fresh] = sm.emplace(v.sort, target);
    if (!fresh && it->second != target)
      fail(ErrorKind::IllSorted, "bindings map sort '" + v.sort +
                                     "' to both '" + it->second + "' and '" +
                                     target + "'");
  }
  for (const std::string &s : hypothesis.sorts()) {
    if (sm.count(s))
      continue;
    if (!state.has_sort(s))
      fail(ErrorKind::HypothesisNotPresent,
           "cannot infer an image for sort '" + s +
               "'; bind a variable of that sort");
    sm[s] = s;
  }

  std::map<std::string, std::string> om;
  for (const OpDecl &o : hypothesis.ops()) {
    if (!state.has_op(o.name))
      fail(ErrorKind::HypothesisNotPresent,
           "state has no operation '" + o.name + "'");
    om[o.name] = o.name;
  }

  try {
    return SpecMorphism::make(hypothesis, state, std::move(sm), std::move(om),
                              std::move(vm));
  } catch (const Error &e) {
    fail(ErrorKind::HypothesisNotPresent,
         std::string("hypothesis instance invalid: ") + e.what());
  }
}

namespace {

ordered_json face_json(const CubeFaceCheck &f) {
  ordered_json out;
  out["face"] = f.name;
  out["commutes"] = f.commutes;
  if (f.pushout)
    out["pushout"] = *f.pushout;
  return out;
}

} // namespace

RunResult run_derivation(const EqSpec &initial,
                         const std::vector<DeductionRule> &rules,
                         const std::vector<ScriptStep> &script,
                         const RunOptions &opts) {
  RunResult run;
  run.initial = initial;
  run.state = initial;
  run.trace["command"] = "deduce";
  if (opts.assume_pleo)
    run.trace["assume_pleo"] = true;
  run.trace["initial"] = initial.to_text();
  run.trace["steps"] = ordered_json::array();

  for (size_t index = 0; index < script.size(); ++index) {
    const ScriptStep &s = script[index];
    ordered_json entry;
    entry["index"] = index;

    if (s.rule == "declare") {
      Term t = parse_term(s.term, run.state.syntax(), "", s.line);
      std::vector<Term> terms{run.state.terms().begin(),
                              run.state.terms().end()};
      terms.push_back(t);
      EqSpec next = EqSpec::make(
          run.state.sorts(), run.state.ops(), run.state.vars(), terms,
          {run.state.equations().begin(), run.state.equations().end()});
      SpecMorphism inclusion = SpecMorphism::inclusion(run.state, next);
      PleoVerdict verdict = is_pleomorphism(inclusion, opts.derive);
      entry["kind"] = "declare";
      entry["term"] = next.term_text(t);
      entry["state"] = next.to_text();
      run.zigzag.push_back({inclusion, true, std::move(verdict)});
      run.state = std::move(next);
      run.trace["steps"].push_back(std::move(entry));
      continue;
    }

    if (s.rule == "instantiate") {
      size_t split = s.equation.find("==");
      if (split == std::string::npos)
        fail(ErrorKind::Parse, "instantiate needs eq=<lhs>==<rhs>");
      TermSyntax syntax = run.state.syntax();
      Equation eq = Equation::make(
          parse_term(s.equation.substr(0, split), syntax, "", s.line),
          parse_term(s.equation.substr(split + 2), syntax, "", s.line));

      std::vector<Equation> eqns{run.state.equations().begin(),
                                 run.state.equations().end()};
      eqns.push_back(eq);
      EqSpec next = EqSpec::make(
          run.state.sorts(), run.state.ops(), run.state.vars(),
          {run.state.terms().begin(), run.state.terms().end()}, eqns);
      SpecMorphism inclusion = SpecMorphism::inclusion(run.state, next);
      PleoVerdict verdict = is_pleomorphism(inclusion, opts.derive);
      if (verdict.status != PleoStatus::Verified)
        fail(ErrorKind::PleoUnverified,
             "cannot justify instance '" + run.state.equation_text(eq) +
                 "': " + verdict.detail);

      entry["kind"] = "instantiate";
      entry["equation"] = next.equation_text(eq);
      entry["inclusion"] = pleo_verdict_json(verdict, next);
      entry["state"] = next.to_text();
      run.zigzag.push_back({inclusion, true, std::move(verdict)});
      run.state = std::move(next);
      run.trace["steps"].push_back(std::move(entry));
      continue;
    }

    auto rule = std::find_if(rules.begin(), rules.end(),
                             [&](const DeductionRule &r) { return r.name == s.rule; });
    if (rule == rules.end())
      fail(ErrorKind::Parse, "script uses unknown rule '" + s.rule + "'");

    const std::string mode = s.mode.empty() ? opts.default_mode : s.mode;
    SpecMorphism instance = instance_from_bindings(
        rule->fraction.hypothesis(), run.state, s.bindings, "", s.line);
    entry["kind"] = mode;
    entry["rule"] = rule->name;
    ordered_json binds = ordered_json::object();
    for (const auto &[var, image] : instance.var_map())
      binds[var] = run.state.term_text(image);
    entry["bindings"] = std::move(binds);

    if (mode == "classic") {
      ClassicStep cs = classic_step(rule->fraction, instance, opts.derive);
      entry["inclusion"] =
          pleo_verdict_json(cs.inclusion_verdict, cs.pushout.object);
      entry["conclusion"] = ordered_json::array();
      for (const Equation &e : rule->fraction.conclusion().equations())
        entry["conclusion"].push_back(
            cs.pushout.object.equation_text(cs.conclusion_instance.apply(e)));
      entry["state"] = cs.pushout.object.to_text();
      run.zigzag.push_back({cs.state_inclusion, true,
                            std::move(cs.inclusion_verdict)});
      run.state = cs.pushout.object;
    } else {
      Witness witness = mode == "pleo"
                            ? full_witness(*rule, instance)
                            : minimal_witness(*rule, instance, opts.derive);
      PleoStep ps = pleopushout_step(*rule, instance, witness, opts.derive);

      entry["witness_kernel"] = ps.state_kernel.to_text();
      entry["faces"] = ordered_json::array();
      for (const CubeFaceCheck &f : ps.faces)
        entry["faces"].push_back(face_json(f));
      entry["pleos"] = ordered_json::array();
      for (const PleoCheck &p : ps.pleos)
        entry["pleos"].push_back(
            {{"morphism", p.name},
             {"status", to_string(p.verdict.status)}});
      entry["vertex"] = ps.state_vertex.to_text();
      entry["state"] = ps.state_conclusion.to_text();

      if (!ps.all_verified()) {
        for (const CubeFaceCheck &f : ps.faces)
          if (!f.ok())
            fail(ErrorKind::CubeCheckFailed,
                 "cube face '" + f.name + "' failed verification");
        for (const PleoCheck &p : ps.pleos)
          if (p.verdict.status != PleoStatus::Verified) {
            ErrorKind kind = p.name == "witness_to_state"
                                 ? ErrorKind::WitnessNotPleo
                                 : ErrorKind::PleoVerificationFailed;
            fail(kind, "'" + p.name + "' is not a verified pleomorphism: " +
                           p.verdict.detail);
          }
      }

      PleoVerdict to_state, to_conclusion;
      for (PleoCheck &p : ps.pleos) {
        if (p.name == "witness_to_state") to_state = p.verdict;
        if (p.name == "witness_to_conclusion") to_conclusion = p.verdict;
      }
      run.zigzag.push_back({ps.witness_to_state, false, std::move(to_state)});
      run.zigzag.push_back(
          {ps.witness_to_conclusion, true, std::move(to_conclusion)});
      run.state = ps.state_conclusion;
      run.cubes.emplace_back(rule->name, std::move(ps));
    }
    run.trace["steps"].push_back(std::move(entry));
  }

  run.trace["final"] = run.state.to_text();
  return run;
}

std::string run_trace_text(const RunResult &run) {
  std::ostringstream os;
  const ordered_json &steps = run.trace.at("steps");
  for (const auto &entry : steps) {
    os << "step " << entry.at("index").get<int>() << ": "
       << entry.at("kind").get<std::string>();
    if (entry.contains("rule"))
      os << " " << entry.at("rule").get<std::string>();
    if (entry.contains("equation"))
      os << " " << entry.at("equation").get<std::string>();
    if (entry.contains("term"))
      os << " " << entry.at("term").get<std::string>();
    os << "\n";
    if (entry.contains("bindings"))
      for (const auto &[var, term] : entry.at("bindings").items())
        os << "  bind " << var << " = " << term.get<std::string>() << "\n";
    if (entry.contains("faces")) {
      for (const auto &f : entry.at("faces")) {
        os << "  face " << f.at("face").get<std::string>() << ": "
           << (f.at("commutes").get<bool>() ? "commutes" : "FAILS");
        if (f.contains("pushout"))
          os << (f.at("pushout").get<bool>() ? ", pushout" : ", NOT a pushout");
        os << "\n";
      }
      for (const auto &p : entry.at("pleos"))
        os << "  pleo " << p.at("morphism").get<std::string>() << ": "
           << p.at("status").get<std::string>() << "\n";
    }
    if (entry.contains("conclusion"))
      for (const auto &eq : entry.at("conclusion"))
        os << "  concludes " << eq.get<std::string>() << "\n";
  }
  os << "final state:\n";
  std::istringstream body(run.state.to_text());
  for (std::string line; std::getline(body, line);)
    os << "  " << line << "\n";
  return os.str();
}

} // namespace dred

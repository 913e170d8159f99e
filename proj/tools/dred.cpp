#include "CLI11.hpp"

#include "dred/colimit.hpp"
#include "dred/deduction.hpp"
#include "dred/rewriting.hpp"
#include "dred/spec_colimit.hpp"
#include "dred/textio.hpp"

#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

using namespace dred;
using nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// Shared plumbing

void emit(const std::string &payload, const std::string &out_path) {
  if (out_path.empty())
    std::cout << payload;
  else
    write_file(out_path, payload);
}

std::vector<std::pair<std::string, std::string>>
split_bindings(const std::vector<std::string> &raw) {
  std::vector<std::pair<std::string, std::string>> bindings;
  for (const std::string &b : raw) {
    size_t eq = b.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == b.size())
      fail(ErrorKind::Parse, "--bind expects <var>=<term>, got '" + b + "'");
    bindings.emplace_back(b.substr(0, eq), b.substr(eq + 1));
  }
  return bindings;
}

const DeductionRule &find_rule(const std::vector<DeductionRule> &rules,
                               const std::string &name) {
  for (const DeductionRule &r : rules)
    if (r.name == name)
      return r;
  fail(ErrorKind::Parse, "no rule named '" + name + "' in the rule file");
}

// ---------------------------------------------------------------------------
// Square files: a SQUARE header picks the category, then four object blocks
// and four morphism blocks give the commuting-square candidate
//
//   A --top--> B
//   |          |
//  left      right
//   v          v
//   C -bottom-> D

struct SquareFile {
  std::string kind; // "graph" | "spec"
  std::map<std::string, std::string> sections;
};

SquareFile parse_square_file(const std::string &text,
                             const std::string &filename) {
  SquareFile sq;
  const std::set<std::string> markers = {"A:",   "B:",    "C:",     "D:",
                                         "top:", "left:", "right:", "bottom:"};
  std::string current;
  for (const Line &line : logical_lines(text)) {
    std::vector<std::string> tok = split_ws(line.text);
    if (tok.size() == 2 && tok[0] == "SQUARE") {
      if (!sq.kind.empty())
        parse_fail(filename, line.number, "only one SQUARE header per file");
      if (tok[1] != "graph" && tok[1] != "spec")
        parse_fail(filename, line.number, "SQUARE kind must be graph or spec");
      sq.kind = tok[1];
      continue;
    }
    if (tok.size() == 1 && markers.count(tok[0])) {
      current = tok[0].substr(0, tok[0].size() - 1);
      continue;
    }
    if (sq.kind.empty() || current.empty())
      parse_fail(filename, line.number, "expected `SQUARE graph|spec` header");
    sq.sections[current] += line.text + "\n";
  }
  if (sq.kind.empty())
    parse_fail(filename, 0, "missing SQUARE header");
  for (const char *obj : {"A", "B", "C", "D"})
    if (!sq.sections.count(obj))
      parse_fail(filename, 0, std::string("missing object block ") + obj + ":");
  return sq;
}

struct SquareReport {
  bool commutes = false;
  bool pushout = false;
};

SquareReport check_square_file(const SquareFile &sq,
                               const std::string &filename) {
  auto section = [&](const char *key) -> std::string {
    auto it = sq.sections.find(key);
    return it == sq.sections.end() ? std::string() : it->second;
  };
  SquareReport report;
  if (sq.kind == "graph") {
    Graph a = Graph::parse(section("A"), filename);
    Graph b = Graph::parse(section("B"), filename);
    Graph c = Graph::parse(section("C"), filename);
    Graph d = Graph::parse(section("D"), filename);
    Square<GraphCat> square = Square<GraphCat>::make(
        GraphMorphism::parse(a, b, section("top"), filename),
        GraphMorphism::parse(a, c, section("left"), filename),
        GraphMorphism::parse(b, d, section("right"), filename),
        GraphMorphism::parse(c, d, section("bottom"), filename));
    report.commutes = square.commutes();
    report.pushout = report.commutes && verify_pushout(square);
  } else {
    EqSpec a = EqSpec::parse(section("A"), filename);
    EqSpec b = EqSpec::parse(section("B"), filename);
    EqSpec c = EqSpec::parse(section("C"), filename);
    EqSpec d = EqSpec::parse(section("D"), filename);
    Square<SpecCat> square = Square<SpecCat>::make(
        SpecMorphism::parse(a, b, section("top"), filename),
        SpecMorphism::parse(a, c, section("left"), filename),
        SpecMorphism::parse(b, d, section("right"), filename),
        SpecMorphism::parse(c, d, section("bottom"), filename));
    report.commutes = square.commutes();
    report.pushout = report.commutes && verify_pushout(square);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Subcommand payload builders

int cmd_rewrite(const std::string &rules_path, const std::string &graph_path,
                const std::string &mode_name, const std::string &format,
                const std::string &out_path) {
  RewriteMode mode =
      mode_name == "sqpo" ? RewriteMode::SqPO : RewriteMode::DPO;
  std::vector<RewriteRule> rules =
      RewriteRule::parse_file(read_file(rules_path), rules_path);
  Graph host = Graph::parse(read_file(graph_path), graph_path);

  size_t matches = 0, successes = 0;
  std::string text;
  ordered_json json = ordered_json::array();
  for (const RewriteRule &rule : rules) {
    std::vector<RewriteOutcome> outcomes = apply_all(rule, host, mode);
    matches += outcomes.size();
    for (const RewriteOutcome &o : outcomes)
      successes += o.ok() ? 1 : 0;
    if (format == "json") {
      json.push_back(rewrite_trace_json(rule, host, mode, outcomes));
    } else if (format == "dot") {
      int index = 0;
      for (const RewriteOutcome &o : outcomes) {
        std::string name = rule.name + "_" + std::to_string(index++);
        if (o.ok())
          text += o.diagram->to_dot(name);
      }
    } else {
      text += rewrite_trace_text(rule, host, mode, outcomes);
    }
  }
  emit(format == "json" ? json.dump(2) + "\n" : text, out_path);
  return matches > 0 && successes == 0 ? 2 : 0;
}

int cmd_deduce(const std::string &spec_path, const std::string &rules_path,
               const std::string &script_path, const RunOptions &opts,
               const std::string &format, const std::string &out_path) {
  EqSpec initial = EqSpec::load(spec_path);
  std::vector<DeductionRule> rules =
      load_rules(rules_path, opts.derive, opts.assume_pleo);
  std::vector<ScriptStep> script =
      parse_script(read_file(script_path), script_path);

  RunResult run = run_derivation(initial, rules, script, opts);
  if (format == "json") {
    std::cout << run.trace.dump(2) << "\n";
  } else if (format == "dot") {
    for (const auto &[name, cube] : run.cubes)
      std::cout << cube_dot(cube, name);
  } else {
    std::cout << run_trace_text(run);
  }
  if (!out_path.empty())
    write_file(out_path, run.state.to_text());
  return 0;
}

int cmd_verify_pushout(const std::string &square_path,
                       const std::string &format) {
  SquareFile sq = parse_square_file(read_file(square_path), square_path);
  SquareReport report = check_square_file(sq, square_path);
  if (format == "json") {
    ordered_json out{{"command", "verify-pushout"},
                     {"square", square_path},
                     {"kind", sq.kind},
                     {"commutes", report.commutes},
                     {"pushout", report.pushout}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "square: " << square_path << " (" << sq.kind << ")\n"
              << "commutes: " << (report.commutes ? "yes" : "no") << "\n"
              << "pushout: " << (report.pushout ? "confirmed" : "refuted")
              << "\n";
  }
  return report.pushout ? 0 : 2;
}

int cmd_verify_pleo(const std::string &from_path, const std::string &to_path,
                    const std::string &map_path, const std::string &model_path,
                    const DeriveOptions &opts, const std::string &format) {
  EqSpec dom = EqSpec::load(from_path);
  EqSpec cod = EqSpec::load(to_path);
  SpecMorphism m =
      map_path.empty()
          ? SpecMorphism::parse(dom, cod, "", "(identity-by-name)")
          : SpecMorphism::parse(dom, cod, read_file(map_path), map_path);
  std::optional<Model> model;
  if (!model_path.empty())
    model = Model::load(model_path);
  PleoVerdict verdict =
      is_pleomorphism(m, opts, model ? &*model : nullptr);

  if (format == "json") {
    ordered_json out{{"command", "verify-pleo"},
                     {"from", from_path},
                     {"to", to_path},
                     {"depth", opts.depth}};
    out["verdict"] = pleo_verdict_json(verdict, cod);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "morphism: " << from_path << " -> " << to_path << "\n"
              << "status: " << to_string(verdict.status) << "\n";
    if (!verdict.detail.empty())
      std::cout << "detail: " << verdict.detail << "\n";
    for (const auto &[eq, trace] : verdict.derivations)
      std::cout << "derived: " << cod.equation_text(eq) << " (rounds "
                << trace.rounds << ", steps " << trace.steps.size() << ")\n";
    if (verdict.refuted_equation) {
      std::cout << "refuted: " << cod.equation_text(*verdict.refuted_equation);
      if (!verdict.refuting_assignment.empty()) {
        std::cout << " under";
        for (const auto &[var, value] : verdict.refuting_assignment)
          std::cout << " " << var << "=" << value;
      }
      std::cout << "\n";
    }
  }
  return verdict.status == PleoStatus::Verified ? 0 : 2;
}

PleoStep build_cube(const std::string &spec_path, const std::string &rules_path,
                    const std::string &rule_name,
                    const std::vector<std::string> &raw_bindings,
                    const std::string &witness_kind, const RunOptions &opts,
                    std::string &rule_name_out) {
  EqSpec state = EqSpec::load(spec_path);
  std::vector<DeductionRule> rules =
      load_rules(rules_path, opts.derive, opts.assume_pleo);
  const DeductionRule &rule = find_rule(rules, rule_name);
  SpecMorphism instance = instance_from_bindings(
      rule.fraction.hypothesis(), state, split_bindings(raw_bindings));
  Witness witness = witness_kind == "minimal"
                        ? minimal_witness(rule, instance, opts.derive)
                        : full_witness(rule, instance);
  rule_name_out = rule.name;
  return pleopushout_step(rule, instance, witness, opts.derive);
}

int cmd_verify_cube(const std::string &spec_path, const std::string &rules_path,
                    const std::string &rule_name,
                    const std::vector<std::string> &raw_bindings,
                    const std::string &witness_kind, const RunOptions &opts,
                    const std::string &format) {
  std::string name;
  PleoStep step = build_cube(spec_path, rules_path, rule_name, raw_bindings,
                             witness_kind, opts, name);
  if (format == "json") {
    ordered_json faces = ordered_json::array();
    for (const CubeFaceCheck &f : step.faces) {
      ordered_json fj{{"face", f.name}, {"commutes", f.commutes}};
      if (f.pushout)
        fj["pushout"] = *f.pushout;
      faces.push_back(std::move(fj));
    }
    ordered_json pleos = ordered_json::array();
    for (const PleoCheck &p : step.pleos)
      pleos.push_back(
          {{"morphism", p.name}, {"status", to_string(p.verdict.status)}});
    ordered_json out{{"command", "verify-cube"},
                     {"rule", name},
                     {"witness", witness_kind},
                     {"faces", std::move(faces)},
                     {"pleos", std::move(pleos)},
                     {"all_verified", step.all_verified()}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "rule: " << name << " (witness " << witness_kind << ")\n";
    for (const CubeFaceCheck &f : step.faces) {
      std::cout << "face " << f.name << ": "
                << (f.commutes ? "commutes" : "FAILS");
      if (f.pushout)
        std::cout << (*f.pushout ? ", pushout" : ", NOT a pushout");
      std::cout << "\n";
    }
    for (const PleoCheck &p : step.pleos)
      std::cout << "pleo " << p.name << ": " << to_string(p.verdict.status)
                << "\n";
    std::cout << (step.all_verified() ? "all checks verified"
                                      : "verification FAILED")
              << "\n";
  }
  return step.all_verified() ? 0 : 2;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"graph rewriting and diagrammatic deduction workbench"};
  app.require_subcommand(1);

  // rewrite ------------------------------------------------------------
  auto *rewrite = app.add_subcommand("rewrite", "apply rewrite rules to a graph");
  std::string rw_rules, rw_graph, rw_mode = "dpo", rw_emit = "text", rw_out;
  rewrite->add_option("--rules", rw_rules, "rule file")->required();
  rewrite->add_option("--graph", rw_graph, "host graph file")->required();
  rewrite->add_option("--mode", rw_mode, "dpo | sqpo")
      ->check(CLI::IsMember({"dpo", "sqpo"}));
  rewrite->add_option("--emit", rw_emit, "text | json | dot")
      ->check(CLI::IsMember({"text", "json", "dot"}));
  rewrite->add_option("--out", rw_out, "write output to file instead of stdout");

  // deduce -------------------------------------------------------------
  auto *deduce = app.add_subcommand("deduce", "run a deduction script");
  std::string dd_spec, dd_rules, dd_script, dd_mode = "classic",
                                            dd_emit = "text", dd_out;
  int dd_depth = 3;
  bool dd_assume = false;
  deduce->add_option("--spec", dd_spec, "initial specification")->required();
  deduce->add_option("--rules", dd_rules, "deduction rule file")->required();
  deduce->add_option("--script", dd_script, "script file")->required();
  deduce->add_option("--mode", dd_mode, "default step mode")
      ->check(CLI::IsMember({"classic", "pleo", "pleo-minimal"}));
  deduce->add_option("--depth", dd_depth, "derivability search depth")
      ->envname("DRED_DEPTH");
  deduce->add_flag("--assume-pleo", dd_assume,
                   "accept Unknown denominator verdicts (recorded in trace)");
  deduce->add_option("--emit", dd_emit, "text | json | dot")
      ->check(CLI::IsMember({"text", "json", "dot"}));
  deduce->add_option("--out", dd_out, "write the final specification here");

  // verify -------------------------------------------------------------
  auto *verify = app.add_subcommand("verify", "check a diagram or morphism");
  verify->require_subcommand(1);

  auto *vpo = verify->add_subcommand("pushout", "check a candidate square");
  std::string vpo_square, vpo_emit = "text";
  vpo->add_option("--square", vpo_square, "square file")->required();
  vpo->add_option("--emit", vpo_emit, "text | json")
      ->check(CLI::IsMember({"text", "json"}));

  auto *vpl = verify->add_subcommand("pleo", "check a specification morphism");
  std::string vpl_from, vpl_to, vpl_map, vpl_model, vpl_emit = "text";
  int vpl_depth = 3;
  vpl->add_option("--from", vpl_from, "domain specification")->required();
  vpl->add_option("--to", vpl_to, "codomain specification")->required();
  vpl->add_option("--map", vpl_map, "morphism file (default maps by name)");
  vpl->add_option("--model", vpl_model, "countermodel candidate");
  vpl->add_option("--depth", vpl_depth, "derivability search depth")
      ->envname("DRED_DEPTH");
  vpl->add_option("--emit", vpl_emit, "text | json")
      ->check(CLI::IsMember({"text", "json"}));

  auto *vcb = verify->add_subcommand("cube", "check one witness-based step");
  std::string vcb_spec, vcb_rules, vcb_rule, vcb_witness = "minimal",
                                             vcb_emit = "text";
  std::vector<std::string> vcb_bind;
  int vcb_depth = 3;
  bool vcb_assume = false;
  vcb->add_option("--spec", vcb_spec, "state specification")->required();
  vcb->add_option("--rules", vcb_rules, "deduction rule file")->required();
  vcb->add_option("--rule", vcb_rule, "rule name")->required();
  vcb->add_option("--bind", vcb_bind, "variable binding <var>=<term>");
  vcb->add_option("--witness", vcb_witness, "full | minimal")
      ->check(CLI::IsMember({"full", "minimal"}));
  vcb->add_option("--depth", vcb_depth, "derivability search depth")
      ->envname("DRED_DEPTH");
  vcb->add_flag("--assume-pleo", vcb_assume,
                "accept Unknown denominator verdicts");
  vcb->add_option("--emit", vcb_emit, "text | json")
      ->check(CLI::IsMember({"text", "json"}));

  // export -------------------------------------------------------------
  auto *exp = app.add_subcommand("export", "render an object for inspection");
  exp->require_subcommand(1);

  auto *xg = exp->add_subcommand("graph", "render a graph");
  std::string xg_graph, xg_emit = "dot", xg_out;
  xg->add_option("--graph", xg_graph, "graph file")->required();
  xg->add_option("--emit", xg_emit, "dot | text")
      ->check(CLI::IsMember({"dot", "text"}));
  xg->add_option("--out", xg_out, "write output to file instead of stdout");

  auto *xc = exp->add_subcommand("cube", "render one witness-based step");
  std::string xc_spec, xc_rules, xc_rule, xc_witness = "minimal", xc_out;
  std::vector<std::string> xc_bind;
  int xc_depth = 3;
  bool xc_assume = false;
  xc->add_option("--spec", xc_spec, "state specification")->required();
  xc->add_option("--rules", xc_rules, "deduction rule file")->required();
  xc->add_option("--rule", xc_rule, "rule name")->required();
  xc->add_option("--bind", xc_bind, "variable binding <var>=<term>");
  xc->add_option("--witness", xc_witness, "full | minimal")
      ->check(CLI::IsMember({"full", "minimal"}));
  xc->add_option("--depth", xc_depth, "derivability search depth")
      ->envname("DRED_DEPTH");
  xc->add_flag("--assume-pleo", xc_assume,
               "accept Unknown denominator verdicts");
  xc->add_option("--out", xc_out, "write output to file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (rewrite->parsed())
      return cmd_rewrite(rw_rules, rw_graph, rw_mode, rw_emit, rw_out);
    if (deduce->parsed()) {
      RunOptions opts;
      opts.derive.depth = dd_depth;
      opts.assume_pleo = dd_assume;
      opts.default_mode = dd_mode;
      return cmd_deduce(dd_spec, dd_rules, dd_script, opts, dd_emit, dd_out);
    }
    if (vpo->parsed())
      return cmd_verify_pushout(vpo_square, vpo_emit);
    if (vpl->parsed()) {
      DeriveOptions opts;
      opts.depth = vpl_depth;
      return cmd_verify_pleo(vpl_from, vpl_to, vpl_map, vpl_model, opts,
                             vpl_emit);
    }
    if (vcb->parsed()) {
      RunOptions opts;
      opts.derive.depth = vcb_depth;
      opts.assume_pleo = vcb_assume;
      return cmd_verify_cube(vcb_spec, vcb_rules, vcb_rule, vcb_bind,
                             vcb_witness, opts, vcb_emit);
    }
    if (xg->parsed()) {
      Graph g = Graph::parse(read_file(xg_graph), xg_graph);
      emit(xg_emit == "text" ? g.to_text() : g.to_dot("G"), xg_out);
      return 0;
    }
    if (xc->parsed()) {
      RunOptions opts;
      opts.derive.depth = xc_depth;
      opts.assume_pleo = xc_assume;
      std::string name;
      PleoStep step = build_cube(xc_spec, xc_rules, xc_rule, xc_bind,
                                 xc_witness, opts, name);
      emit(cube_dot(step, name), xc_out);
      return 0;
    }
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::Parse || e.kind() == ErrorKind::Io ? 1 : 2;
  }
  return 0;
}

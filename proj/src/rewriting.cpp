#include "dred/rewriting.hpp"

#include <sstream>

#include "dred/textio.hpp"

namespace dred {

namespace {

GraphMorphism with_name_defaults(const Graph &dom, const Graph &cod,
                                 std::map<std::string, std::string> node_map,
                                 std::map<std::string, std::string> edge_map) {
  for (const GraphNode &n : dom.nodes())
    if (!node_map.count(n.id)) node_map[n.id] = n.id;
  for (const GraphEdge &e : dom.edges())
    if (!edge_map.count(e.id)) edge_map[e.id] = e.id;
  return GraphMorphism::make(dom, cod, std::move(node_map), std::move(edge_map));
}

bool applicability_error(ErrorKind kind) {
  return kind == ErrorKind::DanglingViolation ||
         kind == ErrorKind::IdentificationViolation ||
         kind == ErrorKind::UnsupportedMatch || kind == ErrorKind::LabelClash;
}

} // namespace

const char *to_string(RewriteMode mode) {
  return mode == RewriteMode::DPO ? "dpo" : "sqpo";
}

RewriteRule RewriteRule::make(std::string name, GraphMorphism left_leg,
                              GraphMorphism right_leg) {
  if (!(left_leg.dom() == right_leg.dom()))
    fail(ErrorKind::EndpointMismatch, "rule legs have different interfaces");
  return {std::move(name), std::move(left_leg), std::move(right_leg)};
}

std::vector<RewriteRule> RewriteRule::parse_file(std::string_view text,
                                                 std::string_view filename) {
  struct Block {
    std::string name;
    std::map<std::string, std::string> sections; // L/K/R/l/r -> raw text
    int line = 0;
  };
  std::vector<Block> blocks;
  std::string current_section;
  for (const Line &line : logical_lines(text)) {
    std::vector<std::string> tok = split_ws(line.text);
    if (tok.size() == 2 && tok[0] == "RULE") {
      blocks.push_back({tok[1], {}, line.number});
      current_section.clear();
      continue;
    }
    if (tok.size() == 1 && (tok[0] == "L:" || tok[0] == "K:" || tok[0] == "R:" ||
                            tok[0] == "l:" || tok[0] == "r:")) {
      if (blocks.empty())
        parse_fail(filename, line.number, "section outside of a RULE block");
      current_section = tok[0].substr(0, 1);
      continue;
    }
    if (blocks.empty() || current_section.empty())
      parse_fail(filename, line.number, "expected `RULE <name>` header");
    blocks.back().sections[current_section] += line.text + "\n";
  }

  std::vector<RewriteRule> rules;
  for (const Block &b : blocks) {
    for (const char *req : {"L", "K", "R"})
      if (!b.sections.count(req))
        parse_fail(filename, b.line,
                   "rule '" + b.name + "' is missing its " + req + ": section");
    Graph L = Graph::parse(b.sections.at("L"), filename);
    Graph K = Graph::parse(b.sections.at("K"), filename);
    Graph R = Graph::parse(b.sections.at("R"), filename);
    auto parse_map = [&](const char *key, const Graph &cod) {
      std::map<std::string, std::string> nm, em;
      if (b.sections.count(key)) {
        enum { None, Nodes, Edges } section = None;
        for (const Line &line : logical_lines(b.sections.at(key))) {
          if (line.text == "NODEMAP") { section = Nodes; continue; }
          if (line.text == "EDGEMAP") { section = Edges; continue; }
          std::vector<std::string> tok = split_ws(line.text);
          if (section == None || tok.size() != 3 || tok[1] != "|->")
            parse_fail(filename, b.line, "bad morphism line in rule '" + b.name + "'");
          (section == Nodes ? nm : em)[tok[0]] = tok[2];
        }
      }
      return with_name_defaults(K, cod, std::move(nm), std::move(em));
    };
    rules.push_back(make(b.name, parse_map("l", L), parse_map("r", R)));
  }
  if (rules.empty()) fail(ErrorKind::Parse, std::string(filename) + ": no RULE blocks");
  return rules;
}

std::string RewriteRule::to_text() const {
  std::ostringstream out;
  out << "RULE " << name << "\n";
  out << "L:\n" << lhs().to_text();
  out << "K:\n" << interface().to_text();
  out << "R:\n" << rhs().to_text();
  out << "l:\n" << left_leg.to_text();
  out << "r:\n" << right_leg.to_text();
  return out.str();
}

namespace {

RewriteDiagram assemble(RewriteMode mode, const RewriteRule &rule,
                        const GraphMorphism &match,
                        const ComplementResult<GraphCat> &left) {
  PushoutResult<GraphCat> right = pushout(Span<GraphCat>::make(
      left.apex_to_complement, rule.right_leg));
  RewriteDiagram d;
  d.mode = mode;
  d.left_leg = rule.left_leg;
  d.right_leg = rule.right_leg;
  d.match = match;
  d.context_match = left.apex_to_complement;
  d.comatch = right.right_inj;
  d.to_input = left.complement_to_base;
  d.to_result = right.left_inj;
  return d;
}

} // namespace

RewriteDiagram dpo_step(const RewriteRule &rule, const GraphMorphism &match) {
  if (!(match.dom() == rule.lhs()))
    fail(ErrorKind::EndpointMismatch, "match domain is not the rule's left-hand side");
  return assemble(RewriteMode::DPO, rule, match,
                  pushout_complement(rule.left_leg, match));
}

RewriteDiagram sqpo_step(const RewriteRule &rule, const GraphMorphism &match) {
  if (!(match.dom() == rule.lhs()))
    fail(ErrorKind::EndpointMismatch, "match domain is not the rule's left-hand side");
  return assemble(RewriteMode::SqPO, rule, match,
                  final_pullback_complement(rule.left_leg, match));
}

std::vector<RewriteOutcome> apply_all(const RewriteRule &rule, const Graph &host,
                                      RewriteMode mode) {
  MatchOptions options{.mono_only = mode == RewriteMode::SqPO};
  std::vector<RewriteOutcome> out;
  for (const GraphMorphism &m : find_matches(rule.lhs(), host, options)) {
    RewriteOutcome outcome{m, std::nullopt, "", ""};
    try {
      outcome.diagram = mode == RewriteMode::DPO ? dpo_step(rule, m)
                                                 : sqpo_step(rule, m);
    } catch (const Error &e) {
      if (!applicability_error(e.kind())) throw;
      outcome.error_kind = to_string(e.kind());
      outcome.error_message = e.what();
    }
    out.push_back(std::move(outcome));
  }
  return out;
}

nlohmann::ordered_json morphism_json(const GraphMorphism &m) {
  nlohmann::ordered_json j;
  j["nodes"] = m.node_map();
  j["edges"] = m.edge_map();
  return j;
}

nlohmann::ordered_json rewrite_trace_json(const RewriteRule &rule,
                                          const Graph &host, RewriteMode mode,
                                          const std::vector<RewriteOutcome> &outcomes) {
  nlohmann::ordered_json steps = nlohmann::ordered_json::array();
  int index = 0;
  for (const RewriteOutcome &o : outcomes) {
    nlohmann::ordered_json step;
    step["index"] = index++;
    step["match"] = morphism_json(o.match);
    if (o.ok()) {
      step["status"] = "ok";
      step["context"] = o.diagram->context().to_text();
      step["result"] = o.diagram->result().to_text();
      step["comatch"] = morphism_json(o.diagram->comatch);
    } else {
      step["status"] = "error";
      step["error"] = {{"kind", o.error_kind}, {"message", o.error_message}};
    }
    steps.push_back(std::move(step));
  }
  nlohmann::ordered_json j;
  j["command"] = "rewrite";
  j["rule"] = rule.name;
  j["mode"] = to_string(mode);
  j["input"] = host.to_text();
  j["steps"] = std::move(steps);
  return j;
}

std::string rewrite_trace_text(const RewriteRule &rule, const Graph &host,
                               RewriteMode mode,
                               const std::vector<RewriteOutcome> &outcomes) {
  std::ostringstream out;
  out << "rule " << rule.name << " mode " << to_string(mode) << " on graph with "
      << host.nodes().size() << " nodes, " << host.edges().size() << " edges\n";
  int index = 0;
  for (const RewriteOutcome &o : outcomes) {
    out << "match " << index++ << ":";
    for (const auto &[k, v] : o.match.node_map()) out << " " << k << "->" << v;
    if (o.ok()) {
      out << " : ok, result has " << o.diagram->result().nodes().size()
          << " nodes, " << o.diagram->result().edges().size() << " edges\n";
      std::istringstream body(o.diagram->result().to_text());
      for (std::string line; std::getline(body, line);)
        out << "    " << line << "\n";
    } else {
      out << " : " << o.error_message << "\n";
    }
  }
  if (outcomes.empty()) out << "no matches\n";
  return out.str();
}

namespace {

void dot_cluster(std::ostream &out, const Graph &g, const std::string &tag,
                 const std::string &title) {
  out << "  subgraph cluster_" << tag << " {\n    label=\"" << title << "\";\n";
  if (g.nodes().empty())
    out << "    \"" << tag << "__empty\" [shape=point, style=invis];\n";
  for (const GraphNode &n : g.nodes())
    out << "    \"" << tag << "_" << n.id << "\" [label=\""
        << (n.label.empty() ? n.id : n.id + ":" + n.label) << "\"];\n";
  for (const GraphEdge &e : g.edges())
    out << "    \"" << tag << "_" << e.src << "\" -> \"" << tag << "_" << e.tgt
        << "\" [label=\"" << (e.label.empty() ? e.id : e.id + ":" + e.label)
        << "\"];\n";
  out << "  }\n";
}

std::string anchor(const Graph &g, const std::string &tag) {
  if (g.nodes().empty()) return "\"" + tag + "__empty\"";
  return "\"" + tag + "_" + g.nodes().front().id + "\"";
}

} // namespace

std::string RewriteDiagram::to_dot(std::string_view name) const {
  std::ostringstream out;
  out << "digraph \"" << name << "\" {\n  compound=true;\n";
  dot_cluster(out, left_leg.cod(), "L", "pattern");
  dot_cluster(out, left_leg.dom(), "K", "interface");
  dot_cluster(out, right_leg.cod(), "R", "replacement");
  dot_cluster(out, input(), "G", "input");
  dot_cluster(out, context(), "D", "context");
  dot_cluster(out, result(), "H", "result");
  struct Arrow { const Graph &from; const char *ftag; const Graph &to; const char *ttag; const char *label; };
  const Arrow arrows[] = {
      {left_leg.dom(), "K", left_leg.cod(), "L", "left leg"},
      {right_leg.dom(), "K", right_leg.cod(), "R", "right leg"},
      {match.dom(), "L", match.cod(), "G", "match"},
      {context_match.dom(), "K", context_match.cod(), "D", "context match"},
      {comatch.dom(), "R", comatch.cod(), "H", "comatch"},
      {to_input.dom(), "D", to_input.cod(), "G", "into input"},
      {to_result.dom(), "D", to_result.cod(), "H", "into result"},
  };
  for (const Arrow &a : arrows)
    out << "  " << anchor(a.from, a.ftag) << " -> " << anchor(a.to, a.ttag)
        << " [ltail=cluster_" << a.ftag << ", lhead=cluster_" << a.ttag
        << ", style=dashed, label=\"" << a.label << "\"];\n";
  out << "}\n";
  return out.str();
}

} // namespace dred

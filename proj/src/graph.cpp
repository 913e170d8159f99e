#include "dred/graph.hpp"

#include <algorithm>
#include <sstream>

#include "dred/errors.hpp"
#include "dred/textio.hpp"

namespace dred {

namespace {

bool valid_id(const std::string &id) {
  if (id.empty()) return false;
  for (char c : id)
    if (c == ':' || c == '#' || isspace(static_cast<unsigned char>(c)))
      return false;
  return id != "->" && id != "|->";
}

std::string quote_dot(const std::string &s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

} // namespace

Graph Graph::make(std::vector<GraphNode> nodes, std::vector<GraphEdge> edges) {
  std::sort(nodes.begin(), nodes.end());
  std::sort(edges.begin(), edges.end());
  Graph g;
  g.nodes_ = std::move(nodes);
  g.edges_ = std::move(edges);
  for (size_t i = 0; i < g.nodes_.size(); ++i) {
    if (!valid_id(g.nodes_[i].id))
      fail(ErrorKind::Parse, "bad node id '" + g.nodes_[i].id + "'");
    if (i > 0 && g.nodes_[i].id == g.nodes_[i - 1].id)
      fail(ErrorKind::Parse, "duplicate node id '" + g.nodes_[i].id + "'");
  }
  for (size_t i = 0; i < g.edges_.size(); ++i) {
    const GraphEdge &e = g.edges_[i];
    if (!valid_id(e.id)) fail(ErrorKind::Parse, "bad edge id '" + e.id + "'");
    if (i > 0 && e.id == g.edges_[i - 1].id)
      fail(ErrorKind::Parse, "duplicate edge id '" + e.id + "'");
    if (!g.has_node(e.src))
      fail(ErrorKind::Parse, "edge '" + e.id + "' has unknown source '" + e.src + "'");
    if (!g.has_node(e.tgt))
      fail(ErrorKind::Parse, "edge '" + e.id + "' has unknown target '" + e.tgt + "'");
  }
  return g;
}

bool Graph::has_node(std::string_view id) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id,
                             [](const GraphNode &n, std::string_view v) { return n.id < v; });
  return it != nodes_.end() && it->id == id;
}

bool Graph::has_edge(std::string_view id) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                             [](const GraphEdge &e, std::string_view v) { return e.id < v; });
  return it != edges_.end() && it->id == id;
}

const GraphNode &Graph::node(std::string_view id) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id,
                             [](const GraphNode &n, std::string_view v) { return n.id < v; });
  if (it == nodes_.end() || it->id != id)
    fail(ErrorKind::Internal, "no node '" + std::string(id) + "'");
  return *it;
}

const GraphEdge &Graph::edge(std::string_view id) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                             [](const GraphEdge &e, std::string_view v) { return e.id < v; });
  if (it == edges_.end() || it->id != id)
    fail(ErrorKind::Internal, "no edge '" + std::string(id) + "'");
  return *it;
}

Graph Graph::parse(std::string_view text, std::string_view filename) {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;
  enum { None, Nodes, Edges } section = None;
  for (const Line &line : logical_lines(text)) {
    if (line.text == "NODES") { section = Nodes; continue; }
    if (line.text == "EDGES") { section = Edges; continue; }
    std::vector<std::string> tok = split_ws(line.text);
    if (section == Nodes) {
      // `id` or `id : label`
      if (tok.size() == 1) { nodes.push_back({tok[0], ""}); continue; }
      if (tok.size() == 3 && tok[1] == ":") { nodes.push_back({tok[0], tok[2]}); continue; }
      parse_fail(filename, line.number, "expected `id` or `id : label`");
    } else if (section == Edges) {
      // `id : src -> tgt` or `id : src -> tgt : label`
      if (tok.size() == 5 && tok[1] == ":" && tok[3] == "->") {
        edges.push_back({tok[0], tok[2], tok[4], ""});
        continue;
      }
      if (tok.size() == 7 && tok[1] == ":" && tok[3] == "->" && tok[5] == ":") {
        edges.push_back({tok[0], tok[2], tok[4], tok[6]});
        continue;
      }
      parse_fail(filename, line.number, "expected `id : src -> tgt [: label]`");
    } else {
      parse_fail(filename, line.number, "expected NODES or EDGES section");
    }
  }
  try {
    return make(std::move(nodes), std::move(edges));
  } catch (const Error &e) {
    fail(ErrorKind::Parse, std::string(filename.empty() ? "input" : filename) + ": " + e.what());
  }
}

std::string Graph::to_text() const {
  std::ostringstream out;
  if (!nodes_.empty()) {
    out << "NODES\n";
    for (const GraphNode &n : nodes_) {
      out << "  " << n.id;
      if (!n.label.empty()) out << " : " << n.label;
      out << "\n";
    }
  }
  if (!edges_.empty()) {
    out << "EDGES\n";
    for (const GraphEdge &e : edges_) {
      out << "  " << e.id << " : " << e.src << " -> " << e.tgt;
      if (!e.label.empty()) out << " : " << e.label;
      out << "\n";
    }
  }
  return out.str();
}

std::string Graph::to_dot(std::string_view name) const {
  std::ostringstream out;
  out << "digraph " << quote_dot(std::string(name)) << " {\n";
  for (const GraphNode &n : nodes_) {
    out << "  " << quote_dot(n.id) << " [label="
        << quote_dot(n.label.empty() ? n.id : n.id + ":" + n.label) << "];\n";
  }
  for (const GraphEdge &e : edges_) {
    out << "  " << quote_dot(e.src) << " -> " << quote_dot(e.tgt) << " [label="
        << quote_dot(e.label.empty() ? e.id : e.id + ":" + e.label) << "];\n";
  }
  out << "}\n";
  return out.str();
}

} // namespace dred

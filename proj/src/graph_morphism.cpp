#include "dred/graph_morphism.hpp"

#include <set>
#include <sstream>

#include "dred/errors.hpp"
#include "dred/textio.hpp"

namespace dred {

GraphMorphism GraphMorphism::make(Graph dom, Graph cod,
                                  std::map<std::string, std::string> node_map,
                                  std::map<std::string, std::string> edge_map) {
  for (const GraphNode &n : dom.nodes()) {
    auto it = node_map.find(n.id);
    if (it == node_map.end())
      fail(ErrorKind::EndpointMismatch, "node '" + n.id + "' has no image");
    if (!cod.has_node(it->second))
      fail(ErrorKind::EndpointMismatch,
           "node '" + n.id + "' maps to unknown '" + it->second + "'");
    if (cod.node(it->second).label != n.label)
      fail(ErrorKind::LabelClash, "node '" + n.id + "' (label '" + n.label +
                                      "') maps to '" + it->second + "' (label '" +
                                      cod.node(it->second).label + "')");
  }
  for (const auto &[k, v] : node_map)
    if (!dom.has_node(k))
      fail(ErrorKind::EndpointMismatch, "node map mentions unknown '" + k + "'");
  for (const GraphEdge &e : dom.edges()) {
    auto it = edge_map.find(e.id);
    if (it == edge_map.end())
      fail(ErrorKind::EndpointMismatch, "edge '" + e.id + "' has no image");
    if (!cod.has_edge(it->second))
      fail(ErrorKind::EndpointMismatch,
           "edge '" + e.id + "' maps to unknown '" + it->second + "'");
    const GraphEdge &img = cod.edge(it->second);
    if (img.label != e.label)
      fail(ErrorKind::LabelClash, "edge '" + e.id + "' label mismatch");
    if (img.src != node_map.at(e.src) || img.tgt != node_map.at(e.tgt))
      fail(ErrorKind::EndpointMismatch,
           "edge '" + e.id + "' image does not preserve incidence");
  }
  for (const auto &[k, v] : edge_map)
    if (!dom.has_edge(k))
      fail(ErrorKind::EndpointMismatch, "edge map mentions unknown '" + k + "'");
  GraphMorphism m;
  m.dom_ = std::move(dom);
  m.cod_ = std::move(cod);
  m.node_map_ = std::move(node_map);
  m.edge_map_ = std::move(edge_map);
  return m;
}

GraphMorphism GraphMorphism::identity(const Graph &g) {
  std::map<std::string, std::string> nm, em;
  for (const GraphNode &n : g.nodes()) nm[n.id] = n.id;
  for (const GraphEdge &e : g.edges()) em[e.id] = e.id;
  return make(g, g, std::move(nm), std::move(em));
}

const std::string &GraphMorphism::on_node(const std::string &id) const {
  auto it = node_map_.find(id);
  if (it == node_map_.end()) fail(ErrorKind::Internal, "no node '" + id + "' in map");
  return it->second;
}

const std::string &GraphMorphism::on_edge(const std::string &id) const {
  auto it = edge_map_.find(id);
  if (it == edge_map_.end()) fail(ErrorKind::Internal, "no edge '" + id + "' in map");
  return it->second;
}

GraphMorphism GraphMorphism::parse(const Graph &dom, const Graph &cod,
                                   std::string_view text,
                                   std::string_view filename) {
  std::map<std::string, std::string> nm, em;
  enum { None, Nodes, Edges } section = None;
  for (const Line &line : logical_lines(text)) {
    if (line.text == "NODEMAP") { section = Nodes; continue; }
    if (line.text == "EDGEMAP") { section = Edges; continue; }
    std::vector<std::string> tok = split_ws(line.text);
    if (section == None)
      parse_fail(filename, line.number, "expected NODEMAP or EDGEMAP section");
    if (tok.size() != 3 || tok[1] != "|->")
      parse_fail(filename, line.number, "expected `x |-> y`");
    (section == Nodes ? nm : em)[tok[0]] = tok[2];
  }
  return make(dom, cod, std::move(nm), std::move(em));
}

std::string GraphMorphism::to_text() const {
  std::ostringstream out;
  if (!node_map_.empty()) {
    out << "NODEMAP\n";
    for (const auto &[k, v] : node_map_) out << "  " << k << " |-> " << v << "\n";
  }
  if (!edge_map_.empty()) {
    out << "EDGEMAP\n";
    for (const auto &[k, v] : edge_map_) out << "  " << k << " |-> " << v << "\n";
  }
  return out.str();
}

GraphMorphism compose(const GraphMorphism &f, const GraphMorphism &g) {
  if (!(f.cod() == g.dom()))
    fail(ErrorKind::EndpointMismatch, "composition endpoints do not agree");
  std::map<std::string, std::string> nm, em;
  for (const auto &[k, v] : f.node_map()) nm[k] = g.on_node(v);
  for (const auto &[k, v] : f.edge_map()) em[k] = g.on_edge(v);
  return GraphMorphism::make(f.dom(), g.cod(), std::move(nm), std::move(em));
}

bool is_mono(const GraphMorphism &m) {
  std::set<std::string> nseen, eseen;
  for (const auto &[k, v] : m.node_map())
    if (!nseen.insert(v).second) return false;
  for (const auto &[k, v] : m.edge_map())
    if (!eseen.insert(v).second) return false;
  return true;
}

bool is_iso(const GraphMorphism &m) {
  return is_mono(m) && m.node_map().size() == m.cod().nodes().size() &&
         m.edge_map().size() == m.cod().edges().size();
}

} // namespace dred

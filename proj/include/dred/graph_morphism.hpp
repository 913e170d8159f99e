#pragma once

#include <map>
#include <string>
#include <string_view>

#include "dred/graph.hpp"

namespace dred {

// Structure-preserving map between graphs: nodes to nodes, edges to edges,
// preserving incidence and labels. Total on the domain.
class GraphMorphism {
public:
  GraphMorphism() = default;
  static GraphMorphism make(Graph dom, Graph cod,
                            std::map<std::string, std::string> node_map,
                            std::map<std::string, std::string> edge_map);
  static GraphMorphism identity(const Graph &g);

  const Graph &dom() const { return dom_; }
  const Graph &cod() const { return cod_; }
  const std::map<std::string, std::string> &node_map() const { return node_map_; }
  const std::map<std::string, std::string> &edge_map() const { return edge_map_; }

  const std::string &on_node(const std::string &id) const;
  const std::string &on_edge(const std::string &id) const;

  bool operator==(const GraphMorphism &) const = default;

  // NODEMAP/EDGEMAP sections of `x |-> y` lines; dom and cod give context.
  static GraphMorphism parse(const Graph &dom, const Graph &cod,
                             std::string_view text,
                             std::string_view filename = "");
  std::string to_text() const;

private:
  Graph dom_, cod_;
  std::map<std::string, std::string> node_map_, edge_map_;
};

// Diagrammatic order: apply f first, then g. EndpointMismatch if f's codomain
// is not g's domain (on-the-nose object equality).
GraphMorphism compose(const GraphMorphism &f, const GraphMorphism &g);

bool is_mono(const GraphMorphism &m);
bool is_iso(const GraphMorphism &m);

} // namespace dred

#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace dred {

struct GraphNode {
  std::string id;
  std::string label;
  auto operator<=>(const GraphNode &) const = default;
};

struct GraphEdge {
  std::string id;
  std::string src;
  std::string tgt;
  std::string label;
  auto operator<=>(const GraphEdge &) const = default;
};

// Finite labeled directed multigraph. Node/edge lists are kept sorted by id,
// so equality is set equality and serialization is canonical.
class Graph {
public:
  Graph() = default;
  static Graph make(std::vector<GraphNode> nodes, std::vector<GraphEdge> edges);

  const std::vector<GraphNode> &nodes() const { return nodes_; }
  const std::vector<GraphEdge> &edges() const { return edges_; }

  bool has_node(std::string_view id) const;
  bool has_edge(std::string_view id) const;
  const GraphNode &node(std::string_view id) const;
  const GraphEdge &edge(std::string_view id) const;

  bool operator==(const Graph &) const = default;

  static Graph parse(std::string_view text, std::string_view filename = "");
  std::string to_text() const;
  std::string to_dot(std::string_view name = "G") const;

private:
  std::vector<GraphNode> nodes_;
  std::vector<GraphEdge> edges_;
};

} // namespace dred

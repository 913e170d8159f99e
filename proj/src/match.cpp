#include "dred/match.hpp"

#include <algorithm>
#include <set>

namespace dred {

namespace {

struct MatchSearch {
  const Graph &pattern;
  const Graph &host;
  MatchOptions options;
  std::map<std::string, std::string> node_map;
  std::set<std::string> used_nodes;
  std::vector<GraphMorphism> out;

  // Host edges compatible with pattern edge `pe` under the current node map.
  std::vector<const GraphEdge *> edge_candidates(const GraphEdge &pe) const {
    std::vector<const GraphEdge *> cands;
    const std::string &src = node_map.at(pe.src);
    const std::string &tgt = node_map.at(pe.tgt);
    for (const GraphEdge &he : host.edges())
      if (he.src == src && he.tgt == tgt && he.label == pe.label)
        cands.push_back(&he);
    return cands;
  }

  void assign_edges(size_t i, std::map<std::string, std::string> &edge_map,
                    std::set<std::string> &used_edges) {
    if (i == pattern.edges().size()) {
      out.push_back(GraphMorphism::make(pattern, host, node_map, edge_map));
      return;
    }
    const GraphEdge &pe = pattern.edges()[i];
    for (const GraphEdge *he : edge_candidates(pe)) {
      if (options.mono_only && used_edges.count(he->id)) continue;
      edge_map[pe.id] = he->id;
      used_edges.insert(he->id);
      assign_edges(i + 1, edge_map, used_edges);
      used_edges.erase(he->id);
      edge_map.erase(pe.id);
    }
  }

  void assign_nodes(size_t i) {
    if (i == pattern.nodes().size()) {
      // Prune early: every pattern edge must have at least one candidate.
      for (const GraphEdge &pe : pattern.edges())
        if (edge_candidates(pe).empty()) return;
      std::map<std::string, std::string> edge_map;
      std::set<std::string> used_edges;
      assign_edges(0, edge_map, used_edges);
      return;
    }
    const GraphNode &pn = pattern.nodes()[i];
    for (const GraphNode &hn : host.nodes()) {
      if (hn.label != pn.label) continue;
      if (options.mono_only && used_nodes.count(hn.id)) continue;
      node_map[pn.id] = hn.id;
      used_nodes.insert(hn.id);
      assign_nodes(i + 1);
      used_nodes.erase(hn.id);
      node_map.erase(pn.id);
    }
  }
};

} // namespace

std::vector<GraphMorphism> find_matches(const Graph &pattern, const Graph &host,
                                        MatchOptions options) {
  MatchSearch search{pattern, host, options, {}, {}, {}};
  search.assign_nodes(0);
  return search.out;
}

std::optional<GraphMorphism> find_graph_iso(const Graph &a, const Graph &b) {
  if (a.nodes().size() != b.nodes().size() || a.edges().size() != b.edges().size())
    return std::nullopt;
  for (const GraphMorphism &m : find_matches(a, b, {.mono_only = true}))
    if (is_iso(m)) return m;
  return std::nullopt;
}

} // namespace dred

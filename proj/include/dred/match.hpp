#pragma once

#include <optional>
#include <vector>

#include "dred/graph_morphism.hpp"

namespace dred {

struct MatchOptions {
  bool mono_only = false;
};

// All homomorphisms pattern -> host in canonical order: node assignments are
// enumerated lexicographically over the sorted pattern nodes, then edge
// assignments lexicographically over the sorted pattern edges.
std::vector<GraphMorphism> find_matches(const Graph &pattern, const Graph &host,
                                        MatchOptions options = {});

std::optional<GraphMorphism> find_graph_iso(const Graph &a, const Graph &b);

inline bool graphs_isomorphic(const Graph &a, const Graph &b) {
  return find_graph_iso(a, b).has_value();
}

} // namespace dred

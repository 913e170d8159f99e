#pragma once

// Shared helpers for the test suites: deliberately naive re-implementations
// of graph constructions (used as oracles against the engine), small-object
// enumerators, and a process runner for command-line checks.

#include "dred/colimit.hpp"
#include "dred/graph.hpp"
#include "dred/graph_morphism.hpp"
#include "dred/match.hpp"

#include <array>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace support {

using namespace dred;

// ---------------------------------------------------------------------------
// Process runner

struct CmdResult {
  int exit_code = -1;
  std::string out;
};

// Runs a shell command from `dir` with DRED_DEPTH cleared, capturing stdout.
inline CmdResult run_cmd(const std::string &dir, const std::string &cmd) {
  std::string full = "cd '" + dir + "' && env -u DRED_DEPTH " + cmd;
  CmdResult result;
  FILE *pipe = popen(full.c_str(), "r");
  if (!pipe)
    return result;
  std::array<char, 4096> buffer;
  size_t got;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.out.append(buffer.data(), got);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

inline std::string read_file(const std::string &path) {
  FILE *f = std::fopen(path.c_str(), "rb");
  if (!f)
    fail(ErrorKind::Io, "cannot open " + path);
  std::string text;
  std::array<char, 4096> buffer;
  size_t got;
  while ((got = fread(buffer.data(), 1, buffer.size(), f)) > 0)
    text.append(buffer.data(), got);
  std::fclose(f);
  return text;
}

// ---------------------------------------------------------------------------
// Naive homomorphism enumeration (independent oracle for find_matches)

namespace detail {

inline void extend_edges(const Graph &a, const Graph &b, size_t next,
                         const std::map<std::string, std::string> &nm,
                         std::map<std::string, std::string> &em,
                         std::vector<GraphMorphism> &found) {
  if (next == a.edges().size()) {
    found.push_back(GraphMorphism::make(a, b, nm, em));
    return;
  }
  const GraphEdge &src = a.edges()[next];
  for (const GraphEdge &dst : b.edges()) {
    if (src.label != dst.label || nm.at(src.src) != dst.src ||
        nm.at(src.tgt) != dst.tgt)
      continue;
    em[src.id] = dst.id;
    extend_edges(a, b, next + 1, nm, em, found);
    em.erase(src.id);
  }
}

inline void extend_nodes(const Graph &a, const Graph &b, size_t next,
                         std::map<std::string, std::string> &nm,
                         std::vector<GraphMorphism> &found) {
  if (next == a.nodes().size()) {
    std::map<std::string, std::string> em;
    extend_edges(a, b, 0, nm, em, found);
    return;
  }
  const GraphNode &src = a.nodes()[next];
  for (const GraphNode &dst : b.nodes()) {
    if (src.label != dst.label)
      continue;
    nm[src.id] = dst.id;
    extend_nodes(a, b, next + 1, nm, found);
    nm.erase(src.id);
  }
}

} // namespace detail

// Every label- and incidence-preserving assignment, found by plain recursive
// choice with no pruning or ordering tricks.
inline std::vector<GraphMorphism> naive_homs(const Graph &a, const Graph &b) {
  std::vector<GraphMorphism> found;
  std::map<std::string, std::string> nm;
  detail::extend_nodes(a, b, 0, nm, found);
  return found;
}

// ---------------------------------------------------------------------------
// Independent pushout construction (oracle for pushout())
//
// Tags every item of the two feet, merges classes by linear scan (no
// union-find), and names classes after their sorted member lists. Shares no
// code with the engine.

struct OraclePushout {
  Graph object;
  GraphMorphism left_inj, right_inj;
};

namespace detail {

class SweepClasses {
public:
  void add(const std::string &x) {
    if (find(x) < 0)
      classes_.push_back({x});
  }
  void unite(const std::string &x, const std::string &y) {
    add(x);
    add(y);
    int cx = find(x), cy = find(y);
    if (cx == cy)
      return;
    classes_[static_cast<size_t>(cx)].insert(
        classes_[static_cast<size_t>(cy)].begin(),
        classes_[static_cast<size_t>(cy)].end());
    classes_.erase(classes_.begin() + cy);
  }
  const std::vector<std::set<std::string>> &classes() const { return classes_; }

  std::string name_of(const std::string &x) const {
    int c = find(x);
    if (c < 0)
      fail(ErrorKind::Internal, "oracle: item was never registered");
    std::string name;
    for (const std::string &m : classes_[static_cast<size_t>(c)])
      name += (name.empty() ? "" : "=") + m;
    return name;
  }

private:
  int find(const std::string &x) const {
    for (size_t i = 0; i < classes_.size(); ++i)
      if (classes_[i].count(x))
        return static_cast<int>(i);
    return -1;
  }
  std::vector<std::set<std::string>> classes_;
};

} // namespace detail

inline OraclePushout oracle_pushout(const Span<GraphCat> &span) {
  const Graph &a = span.left.dom();
  const Graph &b = span.left.cod();
  const Graph &c = span.right.cod();

  auto tag = [](char side, const std::string &id) {
    return std::string(1, side) + "." + id;
  };

  detail::SweepClasses node_cls, edge_cls;
  for (const GraphNode &n : b.nodes())
    node_cls.add(tag('b', n.id));
  for (const GraphNode &n : c.nodes())
    node_cls.add(tag('c', n.id));
  for (const GraphNode &n : a.nodes())
    node_cls.unite(tag('b', span.left.on_node(n.id)),
                   tag('c', span.right.on_node(n.id)));
  for (const GraphEdge &e : b.edges())
    edge_cls.add(tag('b', e.id));
  for (const GraphEdge &e : c.edges())
    edge_cls.add(tag('c', e.id));
  for (const GraphEdge &e : a.edges())
    edge_cls.unite(tag('b', span.left.on_edge(e.id)),
                   tag('c', span.right.on_edge(e.id)));

  auto node_of = [&](const std::string &t) -> const GraphNode & {
    return t[0] == 'b' ? b.node(t.substr(2)) : c.node(t.substr(2));
  };
  auto edge_of = [&](const std::string &t) -> const GraphEdge & {
    return t[0] == 'b' ? b.edge(t.substr(2)) : c.edge(t.substr(2));
  };

  std::vector<GraphNode> nodes;
  for (const auto &cls : node_cls.classes()) {
    std::string name = node_cls.name_of(*cls.begin());
    std::string label = node_of(*cls.begin()).label;
    for (const std::string &t : cls)
      if (node_of(t).label != label)
        fail(ErrorKind::LabelClash, "oracle: node label clash");
    nodes.push_back({name, label});
  }

  std::vector<GraphEdge> edges;
  for (const auto &cls : edge_cls.classes()) {
    std::string name = edge_cls.name_of(*cls.begin());
    const std::string &rep_tag = *cls.begin();
    const GraphEdge &rep = edge_of(rep_tag);
    std::string src = node_cls.name_of(tag(rep_tag[0], rep.src));
    std::string tgt = node_cls.name_of(tag(rep_tag[0], rep.tgt));
    for (const std::string &t : cls) {
      const GraphEdge &e = edge_of(t);
      if (e.label != rep.label)
        fail(ErrorKind::LabelClash, "oracle: edge label clash");
      if (node_cls.name_of(tag(t[0], e.src)) != src ||
          node_cls.name_of(tag(t[0], e.tgt)) != tgt)
        fail(ErrorKind::LabelClash, "oracle: edge endpoints disagree");
    }
    edges.push_back({name, src, tgt, rep.label});
  }

  OraclePushout out{Graph::make(nodes, edges), {}, {}};
  std::map<std::string, std::string> bn, be, cn, ce;
  for (const GraphNode &n : b.nodes())
    bn[n.id] = node_cls.name_of(tag('b', n.id));
  for (const GraphEdge &e : b.edges())
    be[e.id] = edge_cls.name_of(tag('b', e.id));
  for (const GraphNode &n : c.nodes())
    cn[n.id] = node_cls.name_of(tag('c', n.id));
  for (const GraphEdge &e : c.edges())
    ce[e.id] = edge_cls.name_of(tag('c', e.id));
  out.left_inj = GraphMorphism::make(b, out.object, bn, be);
  out.right_inj = GraphMorphism::make(c, out.object, cn, ce);
  return out;
}

// Two pushout candidates over the same span agree when some isomorphism
// carries one cocone to the other; found by enumerating morphisms.
inline bool cocones_isomorphic(const PushoutResult<GraphCat> &engine,
                               const OraclePushout &oracle) {
  for (const GraphMorphism &h : naive_homs(engine.object, oracle.object)) {
    if (!is_iso(h))
      continue;
    if (compose(engine.left_inj, h) == oracle.left_inj &&
        compose(engine.right_inj, h) == oracle.right_inj)
      return true;
  }
  return false;
}

// Number of morphisms out of the pushout object commuting with a given
// cocone; 1 on every cocone is the universal property, made exhaustive.
inline size_t count_mediators(const PushoutResult<GraphCat> &po,
                              const GraphMorphism &from_left,
                              const GraphMorphism &from_right) {
  size_t count = 0;
  for (const GraphMorphism &u : naive_homs(po.object, from_left.cod()))
    if (compose(po.left_inj, u) == from_left &&
        compose(po.right_inj, u) == from_right)
      ++count;
  return count;
}

// ---------------------------------------------------------------------------
// Small-graph enumeration: every unlabeled graph with exactly `node_count`
// nodes and at most `max_edges` edges (edges as a multiset of ordered pairs),
// each handed to the visitor once.

template <typename F>
void for_each_graph(size_t node_count, size_t max_edges, F &&visit) {
  std::vector<GraphNode> nodes;
  for (size_t i = 0; i < node_count; ++i)
    nodes.push_back({"g" + std::to_string(i), ""});
  if (node_count == 0) {
    visit(Graph::make({}, {}));
    return;
  }

  size_t pairs = node_count * node_count;
  std::vector<size_t> chosen;
  std::function<void(size_t, size_t)> rec = [&](size_t remaining, size_t from) {
    std::vector<GraphEdge> edges;
    for (size_t i = 0; i < chosen.size(); ++i)
      edges.push_back({"e" + std::to_string(i),
                       nodes[chosen[i] / node_count].id,
                       nodes[chosen[i] % node_count].id, ""});
    visit(Graph::make(nodes, edges));
    if (remaining == 0)
      return;
    for (size_t p = from; p < pairs; ++p) {
      chosen.push_back(p);
      rec(remaining - 1, p);
      chosen.pop_back();
    }
  };
  rec(max_edges, 0);
}

} // namespace support

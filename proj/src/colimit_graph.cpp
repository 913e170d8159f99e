#include <algorithm>
#include <set>
#include <sstream>

#include "dred/colimit.hpp"
#include "quotient.hpp"

namespace dred {

namespace {

std::vector<std::string> node_names(const Graph &g) {
  std::vector<std::string> out;
  for (const GraphNode &n : g.nodes()) out.push_back(n.id);
  return out;
}

std::vector<std::string> edge_names(const Graph &g) {
  std::vector<std::string> out;
  for (const GraphEdge &e : g.edges()) out.push_back(e.id);
  return out;
}

std::string join(const std::set<std::string> &items) {
  std::string out;
  for (const std::string &s : items) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

// Unique name from `base` not yet in `taken`.
std::string allocate(std::set<std::string> &taken, const std::string &base) {
  std::string name = base;
  for (int k = 2; taken.count(name); ++k) name = base + "~" + std::to_string(k);
  taken.insert(name);
  return name;
}

} // namespace

PushoutResult<GraphCat> GraphCat::pushout(const Span<GraphCat> &span) {
  return dred::pushout(span);
}

PushoutResult<GraphCat> pushout(const Span<GraphCat> &span) {
  const Graph &apex = span.apex();
  const Graph &left = span.left.cod();
  const Graph &right = span.right.cod();

  detail::ItemQuotient qn(node_names(left), node_names(right));
  detail::ItemQuotient qe(edge_names(left), edge_names(right));
  for (const GraphNode &a : apex.nodes())
    qn.unite(qn.left_index(span.left.on_node(a.id)),
             qn.right_index(span.right.on_node(a.id)));
  for (const GraphEdge &a : apex.edges())
    qe.unite(qe.left_index(span.left.on_edge(a.id)),
             qe.right_index(span.right.on_edge(a.id)));
  qn.finalize();
  qe.finalize();

  auto foot_node = [&](int idx) -> const GraphNode & {
    return qn.is_left(idx) ? left.node(qn.raw_name(idx)) : right.node(qn.raw_name(idx));
  };
  auto foot_edge = [&](int idx) -> const GraphEdge & {
    return qe.is_left(idx) ? left.edge(qe.raw_name(idx)) : right.edge(qe.raw_name(idx));
  };

  std::vector<GraphNode> nodes;
  for (int rep : qn.class_reps()) {
    std::set<std::string> labels;
    for (int idx : qn.members(rep)) labels.insert(foot_node(idx).label);
    if (labels.size() > 1)
      fail(ErrorKind::LabelClash,
           "pushout would merge nodes with labels {" + join(labels) + "}");
    nodes.push_back({qn.name_of(rep), *labels.begin()});
  }

  auto node_class_name = [&](int edge_idx, bool source) -> std::string {
    const GraphEdge &e = foot_edge(edge_idx);
    const std::string &end = source ? e.src : e.tgt;
    int idx = qe.is_left(edge_idx) ? qn.left_index(end) : qn.right_index(end);
    return qn.name_of(idx);
  };

  std::vector<GraphEdge> edges;
  for (int rep : qe.class_reps()) {
    std::set<std::string> labels;
    for (int idx : qe.members(rep)) labels.insert(foot_edge(idx).label);
    if (labels.size() > 1)
      fail(ErrorKind::LabelClash,
           "pushout would merge edges with labels {" + join(labels) + "}");
    int idx0 = qe.members(rep).front();
    edges.push_back({qe.name_of(rep), node_class_name(idx0, true),
                     node_class_name(idx0, false), *labels.begin()});
  }

  Graph object = Graph::make(std::move(nodes), std::move(edges));

  std::map<std::string, std::string> lnm, lem, rnm, rem;
  for (const GraphNode &n : left.nodes()) lnm[n.id] = qn.name_of(qn.left_index(n.id));
  for (const GraphEdge &e : left.edges()) lem[e.id] = qe.name_of(qe.left_index(e.id));
  for (const GraphNode &n : right.nodes()) rnm[n.id] = qn.name_of(qn.right_index(n.id));
  for (const GraphEdge &e : right.edges()) rem[e.id] = qe.name_of(qe.right_index(e.id));

  return {object, GraphMorphism::make(left, object, std::move(lnm), std::move(lem)),
          GraphMorphism::make(right, object, std::move(rnm), std::move(rem))};
}

std::optional<GraphMorphism> GraphCat::mediating(const PushoutResult<GraphCat> &po,
                                                 const GraphMorphism &from_left,
                                                 const GraphMorphism &from_right) {
  if (!(from_left.dom() == po.left_inj.dom()) ||
      !(from_right.dom() == po.right_inj.dom()) ||
      !(from_left.cod() == from_right.cod()))
    return std::nullopt;

  std::map<std::string, std::string> nm, em;
  auto record = [](std::map<std::string, std::string> &m, const std::string &k,
                   const std::string &v) {
    auto [it, inserted] = m.emplace(k, v);
    return inserted || it->second == v;
  };
  for (const auto &[b, v] : po.left_inj.node_map())
    if (!record(nm, v, from_left.on_node(b))) return std::nullopt;
  for (const auto &[c, v] : po.right_inj.node_map())
    if (!record(nm, v, from_right.on_node(c))) return std::nullopt;
  for (const auto &[b, v] : po.left_inj.edge_map())
    if (!record(em, v, from_left.on_edge(b))) return std::nullopt;
  for (const auto &[c, v] : po.right_inj.edge_map())
    if (!record(em, v, from_right.on_edge(c))) return std::nullopt;

  try {
    GraphMorphism u = GraphMorphism::make(po.object, from_left.cod(),
                                          std::move(nm), std::move(em));
    if (!(compose(po.left_inj, u) == from_left)) return std::nullopt;
    if (!(compose(po.right_inj, u) == from_right)) return std::nullopt;
    return u;
  } catch (const Error &) {
    return std::nullopt;
  }
}

ComplementResult<GraphCat> pushout_complement(const GraphMorphism &l,
                                              const GraphMorphism &m) {
  if (!(l.cod() == m.dom()))
    fail(ErrorKind::EndpointMismatch, "pushout complement: l and m do not compose");
  const Graph &K = l.dom();
  const Graph &L = l.cod();
  const Graph &G = m.cod();

  std::set<std::string> kept_nodes, kept_edges; // l(K) inside L
  for (const auto &[k, v] : l.node_map()) kept_nodes.insert(v);
  for (const auto &[k, v] : l.edge_map()) kept_edges.insert(v);

  std::set<std::string> deleted_nodes, deleted_edges; // m(L \ l(K)) inside G
  for (const GraphNode &n : L.nodes())
    if (!kept_nodes.count(n.id)) deleted_nodes.insert(m.on_node(n.id));
  for (const GraphEdge &e : L.edges())
    if (!kept_edges.count(e.id)) deleted_edges.insert(m.on_edge(e.id));

  // Identification condition: an item outside l(K) may not share its image
  // with any other item of L.
  std::map<std::string, int> node_hits, edge_hits;
  for (const GraphNode &n : L.nodes()) ++node_hits[m.on_node(n.id)];
  for (const GraphEdge &e : L.edges()) ++edge_hits[m.on_edge(e.id)];
  for (const GraphNode &n : L.nodes())
    if (!kept_nodes.count(n.id) && node_hits[m.on_node(n.id)] > 1)
      fail(ErrorKind::IdentificationViolation,
           "deleted node '" + n.id + "' is identified with another preimage of '" +
               m.on_node(n.id) + "'");
  for (const GraphEdge &e : L.edges())
    if (!kept_edges.count(e.id) && edge_hits[m.on_edge(e.id)] > 1)
      fail(ErrorKind::IdentificationViolation,
           "deleted edge '" + e.id + "' is identified with another preimage of '" +
               m.on_edge(e.id) + "'");

  // Dangling condition: no surviving edge may touch a deleted node.
  for (const GraphEdge &e : G.edges())
    if (!deleted_edges.count(e.id) &&
        (deleted_nodes.count(e.src) || deleted_nodes.count(e.tgt)))
      fail(ErrorKind::DanglingViolation,
           "edge '" + e.id + "' would dangle after deleting its endpoint");

  std::vector<GraphNode> dnodes;
  std::vector<GraphEdge> dedges;
  for (const GraphNode &n : G.nodes())
    if (!deleted_nodes.count(n.id)) dnodes.push_back(n);
  for (const GraphEdge &e : G.edges())
    if (!deleted_edges.count(e.id)) dedges.push_back(e);
  Graph D = Graph::make(std::move(dnodes), std::move(dedges));

  std::map<std::string, std::string> knm, kem, inm, iem;
  for (const GraphNode &k : K.nodes()) knm[k.id] = m.on_node(l.on_node(k.id));
  for (const GraphEdge &k : K.edges()) kem[k.id] = m.on_edge(l.on_edge(k.id));
  for (const GraphNode &n : D.nodes()) inm[n.id] = n.id;
  for (const GraphEdge &e : D.edges()) iem[e.id] = e.id;

  ComplementResult<GraphCat> result{
      GraphMorphism::make(K, D, std::move(knm), std::move(kem)),
      GraphMorphism::make(D, G, std::move(inm), std::move(iem))};
  if (!verify_pushout<GraphCat>(l, result.apex_to_complement, m,
                                result.complement_to_base))
    fail(ErrorKind::Internal, "pushout complement does not re-push-out");
  return result;
}

Span<GraphCat> pullback(const Cospan<GraphCat> &cospan) {
  const Graph &B = cospan.left.dom();
  const Graph &C = cospan.right.dom();

  std::vector<GraphNode> vnodes;
  std::vector<GraphEdge> vedges;
  std::map<std::string, std::string> pbn, pcn, pbe, pce;
  std::map<std::pair<std::string, std::string>, std::string> node_pair_name;

  for (const GraphNode &b : B.nodes())
    for (const GraphNode &c : C.nodes())
      if (cospan.left.on_node(b.id) == cospan.right.on_node(c.id)) {
        std::string name = b.id + "&" + c.id;
        vnodes.push_back({name, b.label});
        node_pair_name[{b.id, c.id}] = name;
        pbn[name] = b.id;
        pcn[name] = c.id;
      }
  for (const GraphEdge &b : B.edges())
    for (const GraphEdge &c : C.edges())
      if (cospan.left.on_edge(b.id) == cospan.right.on_edge(c.id)) {
        std::string name = b.id + "&" + c.id;
        vedges.push_back({name, node_pair_name.at({b.src, c.src}),
                          node_pair_name.at({b.tgt, c.tgt}), b.label});
        pbe[name] = b.id;
        pce[name] = c.id;
      }

  Graph vertex = Graph::make(std::move(vnodes), std::move(vedges));
  return Span<GraphCat>{
      GraphMorphism::make(vertex, B, std::move(pbn), std::move(pbe)),
      GraphMorphism::make(vertex, C, std::move(pcn), std::move(pce))};
}

ComplementResult<GraphCat> final_pullback_complement(const GraphMorphism &l,
                                                     const GraphMorphism &m) {
  if (!(l.cod() == m.dom()))
    fail(ErrorKind::EndpointMismatch, "final pullback complement: l and m do not compose");
  if (!is_mono(m))
    fail(ErrorKind::UnsupportedMatch, "final pullback complement requires a mono match");
  const Graph &K = l.dom();
  const Graph &L = l.cod();
  const Graph &G = m.cod();

  std::map<std::string, std::string> matched_node; // G node -> L node, where hit
  std::map<std::string, std::string> matched_edge;
  for (const GraphNode &n : L.nodes()) matched_node[m.on_node(n.id)] = n.id;
  for (const GraphEdge &e : L.edges()) matched_edge[m.on_edge(e.id)] = e.id;

  std::vector<std::string> context_nodes;
  for (const GraphNode &n : G.nodes())
    if (!matched_node.count(n.id)) context_nodes.push_back(n.id);
  detail::ItemQuotient qn(context_nodes, node_names(K));
  qn.finalize();

  std::vector<GraphNode> dnodes;
  std::map<std::string, std::string> knm, l1n;
  for (const std::string &id : context_nodes) {
    const std::string &name = qn.name_of(qn.left_index(id));
    dnodes.push_back({name, G.node(id).label});
    l1n[name] = id;
  }
  for (const GraphNode &k : K.nodes()) {
    const std::string &name = qn.name_of(qn.right_index(k.id));
    dnodes.push_back({name, k.label});
    knm[k.id] = name;
    l1n[name] = m.on_node(l.on_node(k.id));
  }

  // The fiber of a G node: its own copy when unmatched, the copies of its
  // K-preimages when matched.
  auto fiber = [&](const std::string &gnode) {
    std::vector<std::string> out;
    auto it = matched_node.find(gnode);
    if (it == matched_node.end()) {
      out.push_back(qn.name_of(qn.left_index(gnode)));
    } else {
      for (const GraphNode &k : K.nodes())
        if (l.on_node(k.id) == it->second) out.push_back(knm.at(k.id));
    }
    return out;
  };

  std::vector<GraphEdge> dedges;
  std::map<std::string, std::string> kem, l1e;
  std::set<std::string> taken;
  for (const GraphEdge &k : K.edges()) {
    std::string name = allocate(taken, k.id);
    dedges.push_back({name, knm.at(k.src), knm.at(k.tgt), k.label});
    kem[k.id] = name;
    l1e[name] = m.on_edge(l.on_edge(k.id));
  }
  for (const GraphEdge &e : G.edges()) {
    if (matched_edge.count(e.id)) continue;
    std::vector<std::string> srcs = fiber(e.src), tgts = fiber(e.tgt);
    for (const std::string &s : srcs)
      for (const std::string &t : tgts) {
        std::string base =
            (srcs.size() == 1 && tgts.size() == 1) ? e.id : e.id + "@" + s + "@" + t;
        std::string name = allocate(taken, base);
        dedges.push_back({name, s, t, e.label});
        l1e[name] = e.id;
      }
  }

  Graph D = Graph::make(std::move(dnodes), std::move(dedges));
  ComplementResult<GraphCat> result{
      GraphMorphism::make(K, D, std::move(knm), std::move(kem)),
      GraphMorphism::make(D, G, std::move(l1n), std::move(l1e))};

  // The completed square must be a pullback with apex K.
  Span<GraphCat> pb = pullback(
      Cospan<GraphCat>::make(m, result.complement_to_base));
  std::map<std::string, std::string> cn, ce;
  for (const GraphNode &k : K.nodes())
    cn[k.id] = l.on_node(k.id) + "&" + result.apex_to_complement.on_node(k.id);
  for (const GraphEdge &k : K.edges())
    ce[k.id] = l.on_edge(k.id) + "&" + result.apex_to_complement.on_edge(k.id);
  try {
    GraphMorphism cmp = GraphMorphism::make(K, pb.apex(), std::move(cn), std::move(ce));
    if (!is_iso(cmp))
      fail(ErrorKind::Internal, "final pullback complement square is not a pullback");
  } catch (const Error &e) {
    if (e.kind() == ErrorKind::Internal) throw;
    fail(ErrorKind::Internal,
         std::string("final pullback complement comparison failed: ") + e.what());
  }
  return result;
}

} // namespace dred

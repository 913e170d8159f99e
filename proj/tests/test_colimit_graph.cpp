#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dred/colimit.hpp"
#include "dred/graph.hpp"
#include "dred/graph_morphism.hpp"
#include "dred/match.hpp"

#include "support.hpp"

#include <optional>
#include <string>
#include <vector>

using namespace dred;

namespace {

Graph g(const char *text) { return Graph::parse(text, "inline"); }

using GSpan = Span<GraphCat>;
using GCospan = Cospan<GraphCat>;
using GSquare = Square<GraphCat>;

// Pullback-square test by comparison with the computed pullback: the square
// (top, left, right, bottom) with right/bottom the cospan is a pullback iff
// some isomorphism carries its apex onto the computed vertex leg-for-leg.
bool is_pullback_square(const GraphMorphism &top, const GraphMorphism &left,
                        const GraphMorphism &right, const GraphMorphism &bottom) {
  GSquare sq = GSquare::make(top, left, right, bottom);
  if (!sq.commutes())
    return false;
  GSpan pb = pullback(GCospan::make(right, bottom));
  for (const GraphMorphism &u : support::naive_homs(top.dom(), pb.apex()))
    if (is_iso(u) && compose(u, pb.left) == top && compose(u, pb.right) == left)
      return true;
  return false;
}

} // namespace

TEST_CASE("pushout glues two edges along a shared node") {
  Graph apex = g("NODES\n k\n");
  Graph left_foot = g("NODES\n a\n b\nEDGES\n ab : a -> b\n");
  Graph right_foot = g("NODES\n c\n d\nEDGES\n cd : c -> d\n");
  GraphMorphism to_left = GraphMorphism::make(apex, left_foot, {{"k", "b"}}, {});
  GraphMorphism to_right = GraphMorphism::make(apex, right_foot, {{"k", "c"}}, {});

  PushoutResult<GraphCat> po = pushout(GSpan::make(to_left, to_right));
  CHECK(po.object.nodes().size() == 3);
  CHECK(po.object.edges().size() == 2);
  // b and c are the same node of the result; the two edges form a path.
  CHECK(po.left_inj.on_node("b") == po.right_inj.on_node("c"));
  CHECK(po.object.edge(po.left_inj.on_edge("ab")).tgt ==
        po.object.edge(po.right_inj.on_edge("cd")).src);
  CHECK(graphs_isomorphic(
      po.object, g("NODES\n x\n y\n z\nEDGES\n e1 : x -> y\n e2 : y -> z\n")));
}

TEST_CASE("pushout along a collapsing leg merges the other foot") {
  Graph apex = g("NODES\n x\n y\n");
  Graph point = g("NODES\n p\n");
  Graph pair = g("NODES\n u\n v\n");
  GraphMorphism collapse =
      GraphMorphism::make(apex, point, {{"x", "p"}, {"y", "p"}}, {});
  GraphMorphism embed =
      GraphMorphism::make(apex, pair, {{"x", "u"}, {"y", "v"}}, {});

  PushoutResult<GraphCat> po = pushout(GSpan::make(collapse, embed));
  CHECK(po.object.nodes().size() == 1);
  CHECK(po.right_inj.on_node("u") == po.right_inj.on_node("v"));
}

TEST_CASE("pushout over the empty apex is the disjoint union") {
  Graph empty = g("");
  Graph one = g("NODES\n a\nEDGES\n aa : a -> a\n");
  Graph two = g("NODES\n b\n c\nEDGES\n bc : b -> c\n");
  GraphMorphism to_one = GraphMorphism::make(empty, one, {}, {});
  GraphMorphism to_two = GraphMorphism::make(empty, two, {}, {});

  PushoutResult<GraphCat> po = pushout(GSpan::make(to_one, to_two));
  CHECK(po.object.nodes().size() == 3);
  CHECK(po.object.edges().size() == 2);
  CHECK(is_mono(po.left_inj));
  CHECK(is_mono(po.right_inj));
}

TEST_CASE("pushout agrees with the independent oracle over enumerated spans") {
  size_t spans_checked = 0;
  support::for_each_graph(1, 1, [&](const Graph &apex) {
    support::for_each_graph(2, 2, [&](const Graph &left_foot) {
      support::for_each_graph(2, 1, [&](const Graph &right_foot) {
        for (const GraphMorphism &f : support::naive_homs(apex, left_foot))
          for (const GraphMorphism &h : support::naive_homs(apex, right_foot)) {
            GSpan span = GSpan::make(f, h);
            PushoutResult<GraphCat> engine = pushout(span);
            support::OraclePushout oracle = support::oracle_pushout(span);
            REQUIRE(support::cocones_isomorphic(engine, oracle));
            ++spans_checked;
          }
      });
    });
  });
  CHECK(spans_checked > 300);
}

TEST_CASE("pushout satisfies the universal property exhaustively") {
  // For each enumerated span and each cocone into a small candidate vertex,
  // exactly one morphism out of the pushout object mediates.
  Graph apex = g("NODES\n k\n");
  Graph foot = g("NODES\n a\n b\nEDGES\n ab : a -> b\n");
  GraphMorphism f = GraphMorphism::make(apex, foot, {{"k", "a"}}, {});
  GraphMorphism h = GraphMorphism::make(apex, foot, {{"k", "b"}}, {});
  PushoutResult<GraphCat> po = pushout(GSpan::make(f, h));

  size_t cocones = 0;
  support::for_each_graph(3, 2, [&](const Graph &candidate) {
    for (const GraphMorphism &p : support::naive_homs(foot, candidate))
      for (const GraphMorphism &q : support::naive_homs(foot, candidate)) {
        if (compose(f, p) == compose(h, q)) {
          CHECK(support::count_mediators(po, p, q) == 1);
          ++cocones;
        }
      }
  });
  CHECK(cocones > 20);
}

TEST_CASE("mediating returns the unique factorization or nothing") {
  Graph apex = g("NODES\n k\n");
  Graph foot = g("NODES\n a\n b\nEDGES\n ab : a -> b\n");
  GraphMorphism f = GraphMorphism::make(apex, foot, {{"k", "a"}}, {});
  GraphMorphism h = GraphMorphism::make(apex, foot, {{"k", "b"}}, {});
  PushoutResult<GraphCat> po = pushout(GSpan::make(f, h));

  // The pushout's own cocone mediates via the identity.
  std::optional<GraphMorphism> self =
      GraphCat::mediating(po, po.left_inj, po.right_inj);
  REQUIRE(self.has_value());
  CHECK(*self == GraphMorphism::identity(po.object));

  // A genuine cocone into another vertex.
  Graph vertex = g("NODES\n x\nEDGES\n xx : x -> x\n");
  GraphMorphism p =
      GraphMorphism::make(foot, vertex, {{"a", "x"}, {"b", "x"}}, {{"ab", "xx"}});
  std::optional<GraphMorphism> u = GraphCat::mediating(po, p, p);
  REQUIRE(u.has_value());
  CHECK(compose(po.left_inj, *u) == p);
  CHECK(compose(po.right_inj, *u) == p);

  // A non-commuting pair is not a cocone; nothing mediates.
  Graph two = g("NODES\n x\n y\nEDGES\n xy : x -> y\n yx : y -> x\n");
  GraphMorphism p2 =
      GraphMorphism::make(foot, two, {{"a", "x"}, {"b", "y"}}, {{"ab", "xy"}});
  // compose(f, p2) sends the apex to x while compose(h, p2) sends it to y.
  CHECK_FALSE(GraphCat::mediating(po, p2, p2).has_value());
}

TEST_CASE("verify_pushout accepts computed pushouts and rejects corruptions") {
  Graph apex = g("NODES\n k\n");
  Graph left_foot = g("NODES\n a\n b\nEDGES\n ab : a -> b\n");
  Graph right_foot = g("NODES\n c\n");
  GraphMorphism f = GraphMorphism::make(apex, left_foot, {{"k", "a"}}, {});
  GraphMorphism h = GraphMorphism::make(apex, right_foot, {{"k", "c"}}, {});
  PushoutResult<GraphCat> po = pushout(GSpan::make(f, h));
  CHECK(verify_pushout<GraphCat>(f, h, po.left_inj, po.right_inj));

  // Extra junk in the vertex: still commutes, no longer jointly surjective.
  Graph bigger = Graph::parse(po.object.to_text() + "NODES\n  zz\n");
  GraphMorphism include =
      GraphMorphism::make(po.object, bigger,
                          [&] {
                            std::map<std::string, std::string> nm;
                            for (const GraphNode &n : po.object.nodes())
                              nm[n.id] = n.id;
                            return nm;
                          }(),
                          [&] {
                            std::map<std::string, std::string> em;
                            for (const GraphEdge &e : po.object.edges())
                              em[e.id] = e.id;
                            return em;
                          }());
  CHECK_FALSE(verify_pushout<GraphCat>(f, h, compose(po.left_inj, include),
                                       compose(po.right_inj, include)));

  // Jointly surjective but over-merged: everything to a single point.
  Graph empty = g("");
  Graph b1 = g("NODES\n a\n");
  Graph c1 = g("NODES\n c\n");
  Graph point = g("NODES\n p\n");
  GraphMorphism eb = GraphMorphism::make(empty, b1, {}, {});
  GraphMorphism ec = GraphMorphism::make(empty, c1, {}, {});
  GraphMorphism bp = GraphMorphism::make(b1, point, {{"a", "p"}}, {});
  GraphMorphism cp = GraphMorphism::make(c1, point, {{"c", "p"}}, {});
  CHECK(Square<GraphCat>::make(eb, ec, bp, cp).commutes());
  CHECK_FALSE(verify_pushout<GraphCat>(eb, ec, bp, cp));

  // Non-commuting data reports NonCommuting rather than false.
  Graph two = g("NODES\n x\n y\n");
  GraphMorphism bx = GraphMorphism::make(b1, two, {{"a", "x"}}, {});
  GraphMorphism cy = GraphMorphism::make(c1, two, {{"c", "y"}}, {});
  CHECK(verify_pushout<GraphCat>(eb, ec, bx, cy)); // coproduct: fine
  try {
    // The four morphisms do not even assemble into a square.
    verify_pushout<GraphCat>(GraphMorphism::identity(b1),
                             GraphMorphism::identity(b1),
                             GraphMorphism::identity(two), bx);
    CHECK(false);
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::NonCommuting);
  }
}

TEST_CASE("pushout complement removes the matched image and re-pushes out") {
  Graph host = g(R"(NODES
  n0
  n1
  n2
EDGES
  e01 : n0 -> n1
  e12 : n1 -> n2
  e20 : n2 -> n0
)");
  Graph L = g("NODES\n a\n b\nEDGES\n ab : a -> b\n");
  Graph K = g("NODES\n a\n b\n");
  GraphMorphism l = GraphMorphism::make(K, L, {{"a", "a"}, {"b", "b"}}, {});
  GraphMorphism m = GraphMorphism::make(L, host, {{"a", "n0"}, {"b", "n1"}},
                                        {{"ab", "e01"}});

  ComplementResult<GraphCat> comp = pushout_complement(l, m);
  const Graph &D = comp.complement_to_base.dom();
  CHECK(D.nodes().size() == 3);
  CHECK(D.edges().size() == 2); // e01 removed
  CHECK_FALSE(D.has_edge("e01"));
  CHECK(verify_pushout<GraphCat>(l, comp.apex_to_complement, m,
                                 comp.complement_to_base));
}

TEST_CASE("pushout complement enforces the gluing conditions") {
  Graph host = g("NODES\n n0\nEDGES\n e00 : n0 -> n0\n");
  Graph L = g("NODES\n a\n");
  Graph K = g("");
  GraphMorphism l = GraphMorphism::make(K, L, {}, {});
  GraphMorphism m = GraphMorphism::make(L, host, {{"a", "n0"}}, {});
  // Deleting the node would leave its loop dangling.
  try {
    pushout_complement(l, m);
    CHECK(false);
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::DanglingViolation);
  }

  // Identification: one deleted and one kept item share an image.
  Graph L2 = g("NODES\n a\n b\n");
  Graph K2 = g("NODES\n b\n");
  GraphMorphism l2 = GraphMorphism::make(K2, L2, {{"b", "b"}}, {});
  Graph host2 = g("NODES\n n0\n");
  GraphMorphism m2 =
      GraphMorphism::make(L2, host2, {{"a", "n0"}, {"b", "n0"}}, {});
  try {
    pushout_complement(l2, m2);
    CHECK(false);
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::IdentificationViolation);
  }
}

TEST_CASE("every successful pushout complement re-pushes out, exhaustively") {
  // Rule interfaces K c L over one- and two-node patterns, all matches into
  // small hosts: pushout_complement either reports a gluing violation or
  // returns a genuine pushout square.
  Graph L = g("NODES\n a\n b\nEDGES\n ab : a -> b\n");
  std::vector<Graph> interfaces = {g(""), g("NODES\n a\n"), g("NODES\n a\n b\n")};
  size_t succeeded = 0, rejected = 0;
  for (const Graph &K : interfaces) {
    std::map<std::string, std::string> nm;
    for (const GraphNode &n : K.nodes())
      nm[n.id] = n.id;
    GraphMorphism l = GraphMorphism::make(K, L, nm, {});
    support::for_each_graph(3, 3, [&](const Graph &host) {
      for (const GraphMorphism &m : find_matches(L, host)) {
        try {
          ComplementResult<GraphCat> comp = pushout_complement(l, m);
          CHECK(verify_pushout<GraphCat>(l, comp.apex_to_complement, m,
                                         comp.complement_to_base));
          ++succeeded;
        } catch (const Error &e) {
          bool gluing = e.kind() == ErrorKind::DanglingViolation ||
                        e.kind() == ErrorKind::IdentificationViolation;
          CHECK(gluing);
          ++rejected;
        }
      }
    });
  }
  CHECK(succeeded > 50);
  CHECK(rejected > 50);
}

TEST_CASE("pullback vertex consists of the agreeing pairs") {
  Graph D = g("NODES\n s\n t\nEDGES\n st : s -> t\n");
  Graph B = g("NODES\n b1\n b2\n");
  Graph C = g("NODES\n c\n");
  GraphMorphism into_d_b =
      GraphMorphism::make(B, D, {{"b1", "s"}, {"b2", "t"}}, {});
  GraphMorphism into_d_c = GraphMorphism::make(C, D, {{"c", "s"}}, {});

  GSpan pb = pullback(GCospan::make(into_d_b, into_d_c));
  REQUIRE(pb.apex().nodes().size() == 1);
  CHECK(pb.apex().nodes()[0].id == "b1&c");
  CHECK(pb.left.on_node("b1&c") == "b1");
  CHECK(pb.right.on_node("b1&c") == "c");

  // Product shape over a single point: 2 x 3 = 6 pairs.
  Graph point = g("NODES\n p\n");
  Graph three = g("NODES\n x\n y\n z\n");
  GraphMorphism bp = GraphMorphism::make(B, point, {{"b1", "p"}, {"b2", "p"}}, {});
  GraphMorphism tp = GraphMorphism::make(
      three, point, {{"x", "p"}, {"y", "p"}, {"z", "p"}}, {});
  CHECK(pullback(GCospan::make(bp, tp)).apex().nodes().size() == 6);
}

TEST_CASE("pullback squares verify against the engine's own construction") {
  Graph D = g("NODES\n s\n t\nEDGES\n st : s -> t\n e2 : s -> t\n");
  Graph B = g("NODES\n b\nEDGES\n"); // lone node onto s
  GraphMorphism into_d_b = GraphMorphism::make(B, D, {{"b", "s"}}, {});
  GraphMorphism id_d = GraphMorphism::identity(D);

  GSpan pb = pullback(GCospan::make(into_d_b, id_d));
  // Pulling back along the identity recovers B up to the pair renaming.
  CHECK(pb.apex().nodes().size() == 1);
  CHECK(is_pullback_square(pb.left, pb.right, into_d_b, id_d));
}

TEST_CASE("final pullback complement deletes nodes with their incident edges") {
  Graph host = g("NODES\n n0\n n1\nEDGES\n e00 : n0 -> n0\n e01 : n0 -> n1\n");
  Graph L = g("NODES\n a\n");
  Graph K = g("");
  GraphMorphism l = GraphMorphism::make(K, L, {}, {});
  GraphMorphism m = GraphMorphism::make(L, host, {{"a", "n0"}}, {});

  // DPO refuses (dangling edges), SqPO deletes them.
  CHECK_THROWS_AS(pushout_complement(l, m), Error);
  ComplementResult<GraphCat> comp = final_pullback_complement(l, m);
  const Graph &D = comp.complement_to_base.dom();
  CHECK(D.nodes().size() == 1);
  CHECK(D.edges().empty());
  CHECK(graphs_isomorphic(D, g("NODES\n n1\n")));
  CHECK(is_pullback_square(l, comp.apex_to_complement, m,
                           comp.complement_to_base));
}

TEST_CASE("final pullback complement clones nodes with copied incident edges") {
  Graph host = g("NODES\n n0\nEDGES\n e00 : n0 -> n0\n");
  Graph L = g("NODES\n a\n");
  Graph K = g("NODES\n a1\n a2\n");
  GraphMorphism l = GraphMorphism::make(K, L, {{"a1", "a"}, {"a2", "a"}}, {});
  GraphMorphism m = GraphMorphism::make(L, host, {{"a", "n0"}}, {});

  ComplementResult<GraphCat> comp = final_pullback_complement(l, m);
  const Graph &D = comp.complement_to_base.dom();
  // Two clones of the node; the loop is copied once per clone pair.
  CHECK(D.nodes().size() == 2);
  CHECK(D.edges().size() == 4);
  CHECK(is_pullback_square(l, comp.apex_to_complement, m,
                           comp.complement_to_base));
}

TEST_CASE("final pullback complement rejects non-mono matches") {
  Graph host = g("NODES\n n0\n");
  Graph L = g("NODES\n a\n b\n");
  Graph K = g("NODES\n a\n b\n");
  GraphMorphism l = GraphMorphism::identity(L);
  GraphMorphism m = GraphMorphism::make(L, host, {{"a", "n0"}, {"b", "n0"}}, {});
  try {
    final_pullback_complement(l, m);
    CHECK(false);
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::UnsupportedMatch);
  }
}

TEST_CASE("final pullback complement is final among pullback squares") {
  // Over every bounded candidate square (same rule leg, same match) that is a
  // pullback, exactly one morphism into the computed complement mediates.
  struct CaseDef {
    const char *host;
    const char *lhs;
    const char *interface;
  };
  std::vector<CaseDef> cases = {
      {"NODES\n n0\nEDGES\n e00 : n0 -> n0\n", "NODES\n a\n", ""},
      {"NODES\n n0\n n1\nEDGES\n e01 : n0 -> n1\n", "NODES\n a\n", ""},
      {"NODES\n n0\nEDGES\n e00 : n0 -> n0\n", "NODES\n a\n", "NODES\n a\n"},
  };
  for (const CaseDef &c : cases) {
    Graph host = g(c.host);
    Graph L = g(c.lhs);
    Graph K = g(c.interface);
    std::map<std::string, std::string> nm;
    for (const GraphNode &n : K.nodes())
      nm[n.id] = n.id;
    GraphMorphism l = GraphMorphism::make(K, L, nm, {});
    for (const GraphMorphism &m : find_matches(L, host, {.mono_only = true})) {
      ComplementResult<GraphCat> comp = final_pullback_complement(l, m);

      size_t candidates = 0;
      for (size_t nodes = 0; nodes <= 2; ++nodes) {
        support::for_each_graph(nodes, 2, [&](const Graph &Dp) {
          for (const GraphMorphism &gp : support::naive_homs(Dp, host))
            for (const GraphMorphism &kp : support::naive_homs(K, Dp)) {
              if (!(compose(kp, gp) == compose(l, m)))
                continue;
              if (!is_pullback_square(l, kp, m, gp))
                continue;
              ++candidates;
              // Unique mediator delta with kp;delta == comp.apex_to_complement
              // and delta;complement_to_base == gp.
              size_t mediators = 0;
              for (const GraphMorphism &delta :
                   support::naive_homs(Dp, comp.complement_to_base.dom())) {
                if (compose(kp, delta) == comp.apex_to_complement &&
                    compose(delta, comp.complement_to_base) == gp)
                  ++mediators;
              }
              CHECK(mediators == 1);
            }
        });
      }
      CHECK(candidates > 0);
    }
  }
}

TEST_CASE("pasting two pushout squares yields a pushout rectangle") {
  Graph A = g("NODES\n k\n");
  Graph B = g("NODES\n a\n b\nEDGES\n ab : a -> b\n");
  Graph C = g("NODES\n c\n");
  GraphMorphism f = GraphMorphism::make(A, B, {{"k", "a"}}, {});
  GraphMorphism a_leg = GraphMorphism::make(A, C, {{"k", "c"}}, {});
  PushoutResult<GraphCat> po1 = pushout(GSpan::make(f, a_leg));
  GSquare sq1 = GSquare::make(f, a_leg, po1.left_inj, po1.right_inj);

  // Second square: push B out along another morphism, sharing edge b = left_inj.
  Graph E = g("NODES\n a\n b\n x\nEDGES\n ab : a -> b\n bx : b -> x\n");
  std::map<std::string, std::string> nm{{"a", "a"}, {"b", "b"}},
      em{{"ab", "ab"}};
  GraphMorphism into_e = GraphMorphism::make(B, E, nm, em);
  PushoutResult<GraphCat> po2 = pushout(GSpan::make(into_e, po1.left_inj));
  GSquare sq2 = GSquare::make(into_e, po1.left_inj, po2.left_inj, po2.right_inj);

  PasteCheck<GraphCat> both = paste_check(sq1, sq2);
  CHECK(both.second_is_pushout);
  CHECK(both.composite_is_pushout);
  CHECK(both.agree());
}

TEST_CASE("pasting detects a broken second square on both sides at once") {
  Graph A = g("NODES\n k\n");
  Graph B = g("NODES\n a\n");
  Graph C = g("NODES\n c\n");
  GraphMorphism f = GraphMorphism::make(A, B, {{"k", "a"}}, {});
  GraphMorphism a_leg = GraphMorphism::make(A, C, {{"k", "c"}}, {});
  PushoutResult<GraphCat> po1 = pushout(GSpan::make(f, a_leg));
  GSquare sq1 = GSquare::make(f, a_leg, po1.left_inj, po1.right_inj);

  // A commuting but non-pushout continuation: inflate the vertex.
  const Graph &D = po1.object;
  Graph F = Graph::parse(D.to_text() + "NODES\n  zz\n");
  std::map<std::string, std::string> dn, de;
  for (const GraphNode &n : D.nodes())
    dn[n.id] = n.id;
  for (const GraphEdge &e : D.edges())
    de[e.id] = e.id;
  GraphMorphism k_leg = GraphMorphism::make(D, F, dn, de);
  GraphMorphism g_leg = GraphMorphism::identity(B);
  GraphMorphism e_leg = compose(po1.left_inj, k_leg);
  GSquare sq2 = GSquare::make(g_leg, po1.left_inj, e_leg, k_leg);

  PasteCheck<GraphCat> both = paste_check(sq1, sq2);
  CHECK_FALSE(both.second_is_pushout);
  CHECK_FALSE(both.composite_is_pushout);
  CHECK(both.agree());
}

TEST_CASE("paste_check validates its inputs") {
  Graph A = g("NODES\n k\n");
  Graph B = g("NODES\n a\n");
  GraphMorphism f = GraphMorphism::make(A, B, {{"k", "a"}}, {});
  PushoutResult<GraphCat> po = pushout(GSpan::make(f, f));
  GSquare sq1 = GSquare::make(f, f, po.left_inj, po.right_inj);

  // Middle edges differ.
  GSquare sq_far = GSquare::make(GraphMorphism::identity(A), f,
                                 compose(f, po.right_inj), po.right_inj);
  try {
    paste_check(sq1, sq_far);
    CHECK(false);
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::NonComposable);
  }

  // First square is not a pushout: use an inflated vertex.
  Graph bigger = Graph::parse(po.object.to_text() + "NODES\n  zz\n");
  std::map<std::string, std::string> nm;
  for (const GraphNode &n : po.object.nodes())
    nm[n.id] = n.id;
  GraphMorphism inflate = GraphMorphism::make(po.object, bigger, nm, {});
  GSquare not_po = GSquare::make(f, f, compose(po.left_inj, inflate),
                                 compose(po.right_inj, inflate));
  GSquare sq2 = GSquare::make(GraphMorphism::identity(B),
                              compose(po.left_inj, inflate),
                              compose(po.left_inj, inflate),
                              GraphMorphism::identity(bigger));
  try {
    paste_check(not_po, sq2);
    CHECK(false);
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::NonComposable);
  }
}

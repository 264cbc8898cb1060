#include <boost/geometry.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>
#include <random>

#include "cgd/draw.hpp"
#include "cgd/error.hpp"
#include "cgd/generators.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cgd;

namespace {

namespace bg = boost::geometry;
using BP = bg::model::d2::point_xy<double>;
using Poly = bg::model::polygon<BP>;

Poly poly_of(const std::vector<Point>& pts) {
  Poly p;
  for (auto q : pts) bg::append(p.outer(), BP(q.x, q.y));
  bg::append(p.outer(), BP(pts[0].x, pts[0].y));
  bg::correct(p);
  return p;
}

// Hand-made drawing: root plus `k` regions, all children of the root.
GeometricDrawing blank(int k) {
  GeometricDrawing d;
  d.regions.assign(k + 1, {});
  d.region_parent.assign(k + 1, 0);
  d.region_parent[0] = -1;
  return d;
}

const std::vector<Point> kComb{{0, 0},     {5, 0},   {5, 1},   {4, 1}, {4, 0.3}, {3, 0.3},
                               {3, 1},     {2, 1},   {2, 0.3}, {1, 0.3}, {1, 1},   {0, 1}};

// Triangle a,b,c in cluster k; d joined to a outside it.
const char* kTriangleTail =
    "cg 1\nv a\nv b\nv c\nv d\ne a b\ne b c\ne a c\ne a d\nc k root\nm a k\nm b k\nm c k\nm d root\n";

}  // namespace

TEST_CASE("edge through a comb: five boundary hits") {
  auto d = blank(1);
  d.vertices = {{0.5, 0.5}, {10, 0.5}};
  d.edges = {{0, 1}};
  d.regions[1] = kComb;
  auto r = count_crossings_geometric(d);
  CHECK(r.beta == 2);
  CHECK(r.alpha == 0);
  CHECK(r.gamma == 0);
}

TEST_CASE("region cut into three pieces") {
  auto d = blank(2);
  d.regions[1] = {{0, 0}, {10, 0}, {10, 1}, {0, 1}};
  d.regions[2] = {{2, -1}, {3, -1}, {3, 1.5}, {6, 1.5}, {6, -1}, {7, -1}, {7, 2}, {2, 2}};
  auto r = count_crossings_geometric(d);
  CHECK(r.gamma == 2);
  // Nested pairs never count.
  d.region_parent[2] = 1;
  CHECK(count_crossings_geometric(d).gamma == 0);
}

TEST_CASE("single piercing and disjoint regions") {
  auto d = blank(2);
  d.vertices = {{0.5, 0.5}, {3, 0.5}, {-1, 3}, {3, 3}};
  d.edges = {{0, 1}, {2, 3}};
  d.regions[1] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  d.regions[2] = {{5, 5}, {6, 5}, {6, 6}};
  auto r = count_crossings_geometric(d);
  CHECK(r.beta == 0);
  CHECK(r.gamma == 0);
  // Passing right through: two hits, one crossing.
  d.vertices[0] = {-1, 0.5};
  CHECK(count_crossings_geometric(d).beta == 1);
  // Overlapping squares split each other into one piece only.
  d.regions[2] = {{0.5, 0.5}, {2, 0.5}, {2, 2}, {0.5, 2}};
  CHECK(count_crossings_geometric(d).gamma == 0);
}

TEST_CASE("edge crossings and touching") {
  auto d = blank(0);
  d.vertices = {{0, 0}, {2, 2}, {0, 2}, {2, 0}, {-1, 5}};
  d.edges = {{0, 1}, {2, 3}, {0, 4}};
  CHECK(count_crossings_geometric(d).alpha == 1);
  // A vertex sitting on an edge is nudged away rather than refused.
  d.vertices[4] = {1, 1};
  d.edges = {{0, 1}, {2, 4}};
  CHECK_NOTHROW(count_crossings_geometric(d));
}

TEST_CASE("cluster order keeps clusters consecutive") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    auto cg = random_clustered(6 + i % 8, i % 3, 1 + i % 5, rng);
    auto order = cluster_order(cg);
    CHECK(order.size() == static_cast<size_t>(cg.vertex_count()));
    std::vector<int> pos(cg.vertex_count());
    for (size_t k = 0; k < order.size(); ++k) pos[order[k]] = static_cast<int>(k);
    for (int c = 1; c < cg.cluster_count(); ++c) {
      int lo = cg.vertex_count(), hi = -1;
      for (int v : cg.cluster_vertices(c)) lo = std::min(lo, pos[v]), hi = std::max(hi, pos[v]);
      CHECK(hi - lo + 1 == static_cast<int>(cg.cluster_vertices(c).size()));
    }
  }
}

TEST_CASE("a00 drawings") {
  auto k4 = testing::cg_from("cg 1\nv a\nv b\nv c\nv d\ne a b\ne a c\ne a d\ne b c\ne b d\ne c d\nm a root\n"
                             "m b root\nm c root\nm d root\n");
  CHECK(construct_a00(k4).second.alpha == 1);

  std::mt19937_64 rng(33);
  for (int i = 0; i < 80; ++i) {
    auto cg = random_clustered(5 + i % 10, i % 4, 1 + i % 6, rng);
    auto [d, rep] = construct_a00(cg);
    CAPTURE(serialize(cg));
    CHECK(rep.beta == 0);
    CHECK(rep.gamma == 0);
    for (int c = 1; c < cg.cluster_count(); ++c) {
      auto poly = poly_of(d.regions[c]);
      for (int v = 0; v < cg.vertex_count(); ++v)
        CHECK(bg::within(BP(d.vertices[v].x, d.vertices[v].y), poly) == cg.contains(c, v));
      int p = cg.cluster_parent(c);
      if (p != ClusteredGraph::kRoot) CHECK(bg::within(poly, poly_of(d.regions[p])));
    }
    // The stored report is what a recount finds.
    auto back = drawing_from_json(to_json(d, rep, cg), cg);
    CHECK(count_crossings_geometric(back).alpha == rep.alpha);
  }
}

TEST_CASE("spanning tree examples") {
  auto tri = testing::cg_from("cg 1\nv a\nv b\nv c\ne a b\ne b c\ne a c\nc k root\nm a k\nm b k\nm c k\n");
  auto t = cluster_spanning_tree(tri, TreeMode::CConnected);
  CHECK(t.edges.size() == 2);
  for (auto& e : t.edges) CHECK(e.in_graph());
  CHECK(t.cluster_edges[1].size() == 2);

  auto two = testing::cg_from("cg 1\nv a\nv b\nc p root\nc q root\nm a p\nm b q\n");
  auto g = cluster_spanning_tree(two, TreeMode::General);
  REQUIRE(g.edges.size() == 1);
  CHECK_FALSE(g.edges[0].in_graph());
  try {
    cluster_spanning_tree(two, TreeMode::CConnected);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotCConnected);
  }
}

TEST_CASE("spanning trees restrict to every cluster") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    auto cg = random_clustered(5 + i % 10, i % 4, 1 + i % 5, rng);
    auto t = cluster_spanning_tree(cg, TreeMode::General);
    CHECK(t.edges.size() == static_cast<size_t>(cg.vertex_count() - 1));
    for (int c = 0; c < cg.cluster_count(); ++c) {
      const auto& vs = cg.cluster_vertices(c);
      CHECK(t.cluster_edges[c].size() + 1 == vs.size());
      std::vector<char> in(cg.vertex_count(), 0);
      for (int v : vs) in[v] = 1;
      Graph sub(cg.vertex_count());
      for (int k : t.cluster_edges[c]) sub.add_edge(t.edges[k].u, t.edges[k].v);
      CHECK(induced_connected(sub, in));
    }
  }
}

TEST_CASE("0b0 examples") {
  auto path = testing::cg_from("cg 1\nv a\nv b\nv c\ne a b\ne b c\nc k root\nm a k\nm b k\nm c root\n");
  CHECK(construct_0b0(path).beta == 0);

  auto tt = testing::cg_from(kTriangleTail);
  auto p = construct_0b0(tt);
  CHECK(p.c_connected);
  CHECK(p.beta == 1);
  CHECK(p.routes.empty());

  // c-connected: one crossing per cluster edge left out of the tree, per
  // cluster holding it.
  std::mt19937_64 rng(21);
  int seen = 0;
  for (int i = 0; i < 300 && seen < 60; ++i) {
    auto cg = gen("cplanar-random", 6 + i % 10, 1000 + i);
    if (!is_c_connected(cg)) continue;
    long long expect = 0;
    for (int c = 1; c < cg.cluster_count(); ++c) {
      auto sub = cluster_subgraph(cg, c);
      expect += static_cast<long long>(sub.edge_ids.size()) - (static_cast<long long>(sub.vertices.size()) - 1);
    }
    auto b = construct_0b0(cg);
    CHECK(b.beta == expect);
    CHECK(b.routes.empty());
    ++seen;
  }
  CHECK(seen > 10);

  for (int n : {12, 30}) CHECK(construct_0b0(gen("nested-triangles-flat", n)).beta == n / 3);
}

TEST_CASE("0b0 in general mode") {
  std::mt19937_64 rng(13);
  int routed = 0;
  for (int i = 0; i < 80; ++i) {
    auto cg = random_clustered(6 + i % 8, i % 4, 2 + i % 4, rng);
    auto p = construct_0b0(cg);
    CAPTURE(serialize(cg));
    long long sum = 0;
    for (auto& [k, v] : p.ledger) sum += v;
    CHECK(sum == p.beta);
    CHECK(beta_ledger(cg, p.tree, p.routes) == p.ledger);
    for (const auto& r : p.routes) {
      CHECK(r.crossed.size() <= static_cast<size_t>(cg.edge_count()));
      // Tree edges are never crossed.
      for (int e : r.crossed)
        for (const auto& te : p.tree.edges) CHECK(te.edge != e);
      ++routed;
    }
    // JSON round trip keeps everything.
    auto back = beta_plan_from_json(to_json(p, cg), cg);
    CHECK(back.beta == p.beta);
    CHECK(back.ledger == p.ledger);
    CHECK(back.routes.size() == p.routes.size());
    CHECK(report_of(p).beta == p.beta);
  }
  CHECK(routed > 10);
}

TEST_CASE("Tutte layout is a planar straight-line drawing") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 30; ++i) {
    // Saturated, hence 3-connected; weaker graphs can collapse.
    Graph g = random_biconnected_planar(4 + i % 12, 100, rng);
    REQUIRE(is_triconnected(g));
    auto cg = testing::cluster_randomly(g, 1, false, rng);
    auto rs = planar_embed(cg.graph());
    auto pos = tutte_layout(rs);
    GeometricDrawing d = drawing_skeleton(cg);
    d.vertices = pos;
    d.regions.assign(cg.cluster_count(), {});
    CHECK(count_crossings_geometric(d).alpha == 0);
  }
}

TEST_CASE("svg output") {
  auto cg = gen("sun-flat", 8);
  auto [d, rep] = construct_a00(cg);
  CHECK(svg_of(d, cg).find("<svg") != std::string::npos);
  CHECK(svg_of(construct_0b0(cg), cg).find("</svg>") != std::string::npos);
}

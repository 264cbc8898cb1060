#include <boost/geometry.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>
#include <functional>
#include <random>
#include <set>

#include "cgd/draw.hpp"
#include "cgd/embedding.hpp"
#include "cgd/error.hpp"
#include "cgd/generators.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cgd;

namespace {

Graph complete(int n) {
  Graph g(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) g.add_edge(a, b);
  return g;
}

Graph cycle(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

// Random connected graph, planar or not.
Graph random_connected(int n, int extra, std::mt19937_64& rng) {
  Graph g(n);
  for (int v = 1; v < n; ++v) g.add_edge(v, std::uniform_int_distribution<int>(0, v - 1)(rng));
  for (int i = 0; i < extra; ++i) {
    int a = std::uniform_int_distribution<int>(0, n - 1)(rng);
    int b = std::uniform_int_distribution<int>(0, n - 1)(rng);
    if (a != b && g.find_edge(a, b) < 0) g.add_edge(a, b);
  }
  return g;
}

std::uint64_t brute_count(const Graph& g) {
  EmbeddingEnumerator en(g, 10);
  std::uint64_t c = 0;
  for (std::uint64_t i = 0; i < en.candidate_count(); ++i) c += en.candidate(i).has_value();
  return c;
}

// Stacked triangulation: always 3-connected, so Tutte drawings are planar.
Graph stacked(int n, std::mt19937_64& rng) {
  Graph g(3, {{0, 1}, {1, 2}, {2, 0}});
  std::vector<std::array<int, 3>> tri{{0, 1, 2}, {0, 1, 2}};
  while (g.n < n) {
    size_t i = std::uniform_int_distribution<size_t>(0, tri.size() - 1)(rng);
    auto t = tri[i];
    int v = g.n++;
    g.adj.emplace_back();
    for (int x : t) g.add_edge(v, x);
    tri.erase(tri.begin() + i);
    tri.push_back({t[0], t[1], v});
    tri.push_back({t[1], t[2], v});
    tri.push_back({t[0], t[2], v});
  }
  return g;
}

}  // namespace

TEST_CASE("rotation system counts") {
  CHECK(enumerate_rotation_systems(cycle(4)).size() == 1);
  CHECK(enumerate_rotation_systems(complete(4)).size() == 2);
  CHECK(enumerate_rotation_systems(complete(5)).empty());
  CHECK_THROWS_AS(enumerate_rotation_systems(cycle(12), 8), Error);
}

TEST_CASE("edge insertion agrees with brute force") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 120; ++i) {
    Graph g = random_connected(3 + i % 5, i % 6, rng);
    CAPTURE(i);
    std::set<std::vector<std::vector<int>>> seen;
    std::uint64_t count = 0;
    for_each_planar_rotation(g, 10, [&](const RotationSystem& rs) {
      CHECK(is_planar_rotation(rs));
      // Canonical: rotate each list to start at its smallest dart.
      auto key = rs.rotation;
      for (auto& r : key)
        if (!r.empty()) std::rotate(r.begin(), std::min_element(r.begin(), r.end()), r.end());
      seen.insert(key);
      ++count;
      return true;
    });
    CHECK(seen.size() == count);
    CHECK(count == brute_count(g));
  }
}

TEST_CASE("embeddings and faces") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    Graph g = random_biconnected_planar(3 + i % 15, i % 7, rng);
    auto rs = planar_embed(g);
    REQUIRE(is_planar_rotation(rs));
    FaceSet fs = faces(rs);
    CHECK(g.n - g.edge_count() + fs.count() == 2);
    size_t darts = 0;
    for (auto& f : fs.faces) darts += f.size();
    CHECK(darts == static_cast<size_t>(2 * g.edge_count()));
    // Moving the outer face keeps the rotation.
    int f = i % fs.count();
    auto moved = with_outer_face(rs, fs.faces[f].front());
    CHECK(moved.rotation == rs.rotation);
    CHECK(faces(moved).faces[faces(moved).outer].size() == fs.faces[f].size());
    CHECK(dual_graph(rs).n == fs.count());
  }
  CHECK_FALSE(is_planar(complete(5)));
  Graph k33(6);
  for (int a = 0; a < 3; ++a)
    for (int b = 3; b < 6; ++b) k33.add_edge(a, b);
  CHECK_FALSE(is_planar(k33));
}

TEST_CASE("embedding JSON round trip") {
  auto cg = gen("sun-flat", 8);
  auto rs = planar_embed(cg.graph());
  auto back = embedding_from_json(embedding_to_json(rs, cg.vertex_names()), cg.graph(), cg.vertex_names());
  CHECK(back.rotation == rs.rotation);
  CHECK(faces(back).faces[faces(back).outer].size() == faces(rs).faces[faces(rs).outer].size());
}

TEST_CASE("enclosed_violation agrees with point-in-polygon on straight-line drawings") {
  namespace bg = boost::geometry;
  using P = bg::model::d2::point_xy<double>;
  std::mt19937_64 rng(99);
  int violations = 0, cases = 0;
  for (int i = 0; i < 60; ++i) {
    Graph g = stacked(5 + i % 4, rng);
    auto cg = testing::cluster_randomly(g, 1 + i % 3, i % 2 == 0, rng);
    auto base = planar_embed(cg.graph());
    FaceSet fs = faces(base);
    for (int f = 0; f < fs.count(); ++f) {
      auto rs = with_outer_face(base, fs.faces[f].front());
      auto pos = tutte_layout(rs);
      for (int mu = 1; mu < cg.cluster_count(); ++mu) {
        auto mask = cg.cluster_mask(mu);
        // All simple cycles of G(mu), each found from its smallest vertex.
        bool enclosed = false;
        std::vector<int> path;
        std::vector<char> used(g.n, 0);
        std::function<void(int)> dfs = [&](int x) {
          for (auto inc : cg.graph().adj[x]) {
            int y = inc.neighbor;
            if (!mask[y] || y < path[0]) continue;
            if (y == path[0] && path.size() >= 3) {
              bg::model::polygon<P> poly;
              for (int z : path) bg::append(poly.outer(), P(pos[z].x, pos[z].y));
              bg::append(poly.outer(), P(pos[path[0]].x, pos[path[0]].y));
              bg::correct(poly);
              for (int v = 0; v < g.n; ++v)
                if (!mask[v] && bg::within(P(pos[v].x, pos[v].y), poly)) enclosed = true;
            } else if (!used[y]) {
              used[y] = 1;
              path.push_back(y);
              dfs(y);
              path.pop_back();
              used[y] = 0;
            }
          }
        };
        for (int s = 0; s < g.n && !enclosed; ++s) {
          if (!mask[s]) continue;
          path = {s};
          used[s] = 1;
          dfs(s);
          used[s] = 0;
        }
        auto w = enclosed_violation(rs, cg, mu);
        CHECK(w.has_value() == enclosed);
        if (w) {
          bg::model::polygon<P> poly;
          for (int z : w->cycle) bg::append(poly.outer(), P(pos[z].x, pos[z].y));
          bg::append(poly.outer(), P(pos[w->cycle[0]].x, pos[w->cycle[0]].y));
          bg::correct(poly);
          CHECK(bg::within(P(pos[w->vertex].x, pos[w->vertex].y), poly));
          CHECK_FALSE(mask[w->vertex]);
        }
        violations += enclosed;
        ++cases;
      }
    }
  }
  CHECK(violations > 20);
  CHECK(violations < cases);
}

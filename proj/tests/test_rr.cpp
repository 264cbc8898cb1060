#include <algorithm>
#include <random>

#include "cgd/error.hpp"
#include "cgd/generators.hpp"
#include "cgd/rr.hpp"
#include "cgd/spqr.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cgd;

TEST_CASE("infeasible families are rejected") {
  for (const char* f : {"infeasible-parallel", "infeasible-triconnected"}) {
    CAPTURE(f);
    auto cg = gen(f);
    auto r = test_rr_biconnected(cg);
    CHECK_FALSE(r.feasible);
    CHECK_FALSE(r.witness.has_value());
    CHECK_FALSE(oracle_test_rr(cg, 8).feasible);
  }
}

TEST_CASE("fixed embedding: K4 with a triangle cluster") {
  auto cg = testing::cg_from(
      "cg 1\nv a\nv b\nv c\nv d\ne a b\ne a c\ne a d\ne b c\ne b d\ne c d\n"
      "c k root\nm a k\nm b k\nm c k\nm d root\n");
  auto rs = planar_embed(cg.graph());
  FaceSet fs = faces(rs);
  int ok = 0, bad = 0;
  for (int f = 0; f < fs.count(); ++f) {
    auto vs = fs.vertices_of(rs, f);
    bool d_outside = std::find(vs.begin(), vs.end(), 3) != vs.end();
    auto r = check_fixed_embedding(cg, rs, fs.faces[f].front());
    CHECK(r.feasible == d_outside);
    if (!r.feasible) {
      REQUIRE(r.violation.has_value());
      CHECK(r.violation->condition == "enclosed vertex");
      CHECK(r.violation->vertex == 3);
      ++bad;
    } else {
      ++ok;
    }
  }
  CHECK(ok == 3);
  CHECK(bad == 1);
  CHECK(test_rr_biconnected(cg).feasible);
}

TEST_CASE("H(mu) connects vertices sharing a face") {
  // Opposite corners of a square share both faces.
  auto cg = testing::cg_from(
      "cg 1\nv a\nv b\nv c\nv d\ne a b\ne b c\ne c d\ne d a\nc k root\nm a k\nm c k\nm b root\nm d root\n");
  auto h = h_mu(planar_embed(cg.graph()), cg, 1);
  CHECK(h.vertices.size() == 2);
  CHECK(h.graph.edge_count() >= 1);
  CHECK(is_connected(h.graph));
}

TEST_CASE("decision agrees with the exhaustive oracle") {
  std::mt19937_64 rng(71);
  int feasible = 0, cases = 0;
  for (int i = 0; i < 150; ++i) {
    Graph g = random_biconnected_planar(4 + i % 4, i % 5, rng);
    auto cg = testing::cluster_randomly(g, 1 + i % 3, i % 2 == 1, rng);
    auto fast = test_rr_biconnected(cg);
    auto slow = oracle_test_rr(cg, 8);
    CAPTURE(serialize(cg));
    REQUIRE(fast.feasible == slow.feasible);
    if (fast.feasible) {
      REQUIRE(fast.witness.has_value());
      CHECK(check_fixed_embedding(cg, *fast.witness).feasible);
      CHECK(is_planar_rotation(*fast.witness));
      ++feasible;
    }
    ++cases;
  }
  CHECK(feasible > 15);
  CHECK(feasible < cases);
}

TEST_CASE("one reference edge: feasible with that edge on the outer face") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 40; ++i) {
    Graph g = random_biconnected_planar(5 + i % 3, i % 4, rng);
    auto cg = testing::cluster_randomly(g, 2, i % 2 == 0, rng);
    const int m = cg.edge_count();
    std::vector<char> expect(m, 0);
    enumerate_embeddings(cg.graph(), 8, [&](const RotationSystem& rs) {
      if (!check_fixed_embedding(cg, rs).feasible) return true;
      FaceSet fs = faces(rs);
      for (int d : fs.faces[fs.outer]) expect[edge_of(d)] = 1;
      return true;
    });
    bool any = false;
    for (int e = 0; e < m; ++e) {
      CAPTURE(e);
      CHECK(test_rr_rooted(cg, e).feasible == static_cast<bool>(expect[e]));
      any |= expect[e];
    }
    CHECK(test_rr_biconnected(cg).feasible == any);
  }
}

TEST_CASE("answer is invariant under relabeling") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 60; ++i) {
    Graph g = random_biconnected_planar(5 + i % 5, i % 6, rng);
    auto cg = testing::cluster_randomly(g, 1 + i % 3, i % 2 == 0, rng);
    // Rename vertices through a random permutation and rebuild.
    std::vector<int> perm(cg.vertex_count());
    for (int v = 0; v < cg.vertex_count(); ++v) perm[v] = v;
    std::shuffle(perm.begin(), perm.end(), rng);
    ClusteredGraphBuilder b;
    for (int c = 1; c < cg.cluster_count(); ++c)
      b.cluster(cg.cluster_names()[c], cg.cluster_names()[cg.cluster_parent(c)]);
    for (int v = 0; v < cg.vertex_count(); ++v) {
      std::string name = "y" + std::to_string(perm[v]);
      b.vertex(name).member(name, cg.cluster_names()[cg.membership(v)]);
    }
    for (auto [x, y] : cg.edges()) b.edge("y" + std::to_string(perm[x]), "y" + std::to_string(perm[y]));
    auto other = b.build();
    CHECK(test_rr_biconnected(cg).feasible == test_rr_biconnected(other).feasible);
  }
}

TEST_CASE("c-planar instances are always feasible") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto cg = gen("cplanar-random", 8 + static_cast<int>(seed % 10), seed);
    auto r = test_rr_biconnected(cg);
    CAPTURE(seed);
    CHECK(r.feasible);
  }
}

TEST_CASE("flags are coherent") {
  std::mt19937_64 rng(40);
  for (int i = 0; i < 100; ++i) {
    Graph g = random_biconnected_planar(4 + i % 9, i % 5, rng);
    auto cg = testing::cluster_randomly(g, 1 + i % 4, i % 2 == 0, rng);
    auto t = build_spqr(cg.graph(), 0);
    auto flags = classify_flags(t, cg);
    for (int x = 1; x < t.size(); ++x)
      for (int mu = 0; mu < cg.cluster_count(); ++mu) {
        auto f = flags[x][mu];
        if (f.full) CHECK(f.spined);
        if (f.spined) CHECK(f.traversable);
        // The root cluster holds everything.
        if (mu == 0) CHECK(f.full);
        auto out = outside_flags(t, cg, x);
        if (out[mu].full) CHECK(out[mu].spined);
      }
  }
}

TEST_CASE("construct_00c ledger is reproducible") {
  std::mt19937_64 rng(6);
  int done = 0;
  for (int i = 0; i < 60; ++i) {
    Graph g = random_biconnected_planar(6 + i % 6, i % 5, rng);
    auto cg = testing::cluster_randomly(g, 2 + i % 3, i % 2 == 0, rng);
    auto r = test_rr_biconnected(cg);
    if (!r.feasible) continue;
    auto p = construct_00c(cg, *r.witness);
    long long sum = 0;
    for (auto& [k, v] : p.ledger) {
      CHECK(k.first < k.second);
      CHECK(v >= 0);
      sum += v;
    }
    CHECK(sum == p.gamma);
    CHECK(gamma_ledger(cg, p.embedding, p.routes) == p.ledger);
    ++done;
  }
  CHECK(done > 10);
}

TEST_CASE("oracle refuses large inputs") {
  auto cg = gen("sun-flat", 16);
  CHECK_THROWS_AS(oracle_test_rr(cg, 8), Error);
}

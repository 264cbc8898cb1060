#include <random>

#include "cgd/error.hpp"
#include "cgd/generators.hpp"
#include "cgd/model.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cgd;

TEST_CASE("smallest instance") {
  auto cg = testing::cg_from("cg 1\nv a\nv b\ne a b\nc k root\nm a k\nm b k\n");
  CHECK(cg.vertex_count() == 2);
  CHECK(cg.edge_count() == 1);
  CHECK(cg.cluster_count() == 2);
  CHECK(cg.cluster_names()[0] == "root");
  CHECK(cg.cluster_names()[1] == "k");
}

TEST_CASE("missing membership is reported") {
  try {
    testing::cg_from("cg 1\nv a\nv b\ne a b\nc k root\nm a k\n");
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MissingMembership);
    CHECK(std::string(e.what()).find("vertex without cluster membership") != std::string::npos);
  }
}

TEST_CASE("parse errors") {
  auto kind = [](const std::string& text) {
    try {
      testing::cg_from(text);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Inconsistent;
  };
  CHECK(kind("v a\n") == ErrorKind::Syntax);
  CHECK(kind("cg 1\nv a\nm a nope\n") == ErrorKind::UnknownIdentifier);
  CHECK(kind("cg 1\nv a\nc k root\nm a k\nm a root\n") == ErrorKind::DuplicateMembership);
  CHECK(kind("cg 1\nv a\nc k j\nc j k\nm a k\n") == ErrorKind::NotATree);
  CHECK(kind("cg 1\nv a\nv b\ne a b\ne b a\nm a root\nm b root\n") == ErrorKind::Syntax);
  CHECK(kind("cg 1\nv a\ne a a\nm a root\n") == ErrorKind::Syntax);
  try {
    testing::cg_from("cg 1\nv a\nfoo\n");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("serialize is canonical and round-trips") {
  auto a = testing::cg_from("cg 1\nv z\nv a\ne z a\nc q root\nm z q\nm a root\n");
  auto b = testing::cg_from(serialize(a));
  CHECK(a == b);
  CHECK(serialize(b) == serialize(a));
  auto sun = gen("sun-flat", 8);
  CHECK(parse_clustered_graph(serialize(sun)) == sun);
}

TEST_CASE("every family survives a round trip") {
  const std::vector<std::pair<std::string, int>> sizes{
      {"abc-sum", 2},           {"k5-minus-de", 14},  {"matching-k5", 40},
      {"nested-triangles-flat", 12}, {"nested-triangles-nonflat", 12},
      {"sun-flat", 8},          {"sun-nonflat", 8},   {"infeasible-parallel", 0},
      {"infeasible-triconnected", 0}, {"osmosis-c1", 2}, {"osmosis-c2", 2},
      {"osmosis-c3", 2},        {"cplanar-random", 9}};
  CHECK(sizes.size() == family_names().size());
  for (auto& [f, n] : sizes) {
    CAPTURE(f);
    auto cg = gen(f, n, 7);
    auto text = serialize(cg);
    CHECK(parse_clustered_graph(text) == cg);
    CHECK(serialize(parse_clustered_graph(text)) == text);
  }
}

TEST_CASE("validate examples") {
  auto tri = testing::cg_from("cg 1\nv a\nv b\nv c\ne a b\ne b c\ne a c\nc k root\nm a k\nm b k\nm c k\n");
  auto r = validate(tri);
  CHECK(r.is_planar);
  CHECK(r.is_c_connected);
  CHECK(r.is_flat);
  CHECK(r.is_biconnected);
  CHECK(r.violations.empty());

  ClusteredGraphBuilder b;
  for (char x = 'a'; x <= 'e'; ++x) b.vertex(std::string(1, x)).member(std::string(1, x), "root");
  for (char x = 'a'; x <= 'e'; ++x)
    for (char y = x + 1; y <= 'e'; ++y) b.edge(std::string(1, x), std::string(1, y));
  CHECK_FALSE(validate(b.build()).is_planar);

  auto nt = validate(gen("nested-triangles-flat", 12));
  CHECK(nt.is_c_connected);
  CHECK(nt.is_flat);
  CHECK_FALSE(validate(gen("nested-triangles-nonflat", 12)).is_flat);
}

TEST_CASE("cluster_subgraph") {
  auto cg = gen("abc-sum", 2);
  auto root = cluster_subgraph(cg, "root");
  CHECK(root.vertices.size() == static_cast<size_t>(cg.vertex_count()));
  CHECK(root.edges.size() == static_cast<size_t>(cg.edge_count()));
  auto ab = cluster_subgraph(cg, "mu_ab_1");
  REQUIRE(ab.vertices.size() == 2);
  CHECK(cg.vertex_names()[ab.vertices[0]] == "ab_1");
  CHECK(cg.vertex_names()[ab.vertices[1]] == "ba_1");
  CHECK(ab.edges.empty());
  auto single = cluster_subgraph(cg, "mu_a");
  CHECK(single.vertices.size() == 1);
  CHECK(single.edges.empty());
  CHECK_THROWS_AS(cluster_subgraph(cg, "nope"), Error);
}

TEST_CASE("cluster vertex sets are unions of their children") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    auto cg = random_clustered(5 + i % 8, i % 4, 1 + i % 6, rng);
    for (int c = 0; c < cg.cluster_count(); ++c) {
      std::vector<int> expect;
      for (int v = 0; v < cg.vertex_count(); ++v)
        if (cg.membership(v) == c) expect.push_back(v);
      for (int ch : cg.cluster_children(c))
        for (int v : cg.cluster_vertices(ch)) expect.push_back(v);
      std::sort(expect.begin(), expect.end());
      CHECK(expect == cg.cluster_vertices(c));
    }
  }
}

TEST_CASE("flags agree with naive recomputation") {
  std::mt19937_64 rng(2024);
  int cc = 0, flat = 0;
  for (int i = 0; i < 1000; ++i) {
    int n = 4 + i % 9;
    Graph g = random_biconnected_planar(n, i % 3, rng);
    auto cg = testing::cluster_randomly(g, 1 + i % 4, i % 2 == 1, rng);
    bool naive_cc = true, naive_flat = true;
    for (int c = 0; c < cg.cluster_count(); ++c) {
      naive_cc &= testing::bfs_connected(cg, cg.cluster_vertices(c));
      if (c != ClusteredGraph::kRoot && !cg.cluster_children(c).empty()) naive_flat = false;
    }
    auto r = validate(cg);
    REQUIRE(r.is_c_connected == naive_cc);
    REQUIRE(r.is_flat == naive_flat);
    cc += naive_cc;
    flat += naive_flat;
  }
  // Both outcomes occur, otherwise the comparison says little.
  CHECK(cc > 50);
  CHECK(cc < 950);
  CHECK(flat > 50);
  CHECK(flat < 950);
}

#include "cgd/generators.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "cgd/embedding.hpp"
#include "cgd/error.hpp"
#include "cgd/rr.hpp"

namespace cgd {

namespace {

const std::vector<std::string> kFive{"a", "b", "c", "d", "e"};

void bad(const std::string& msg) { throw Error(ErrorKind::BadParameter, msg); }

std::string idx(const std::string& base, int i) { return base + "_" + std::to_string(i); }

struct Acc {
  ClusteredGraphBuilder b;

  void v(const std::string& name, const std::string& cluster = "root") {
    b.vertex(name);
    b.member(name, cluster);
  }
  void e(const std::string& x, const std::string& y) { b.edge(x, y); }
  void c(const std::string& name, const std::string& parent = "root") { b.cluster(name, parent); }
};

// S(u,v): m length-2 paths between u and v, middle vertices in `cluster`.
void paths(Acc& a, const std::string& u, const std::string& v, int m, const std::string& cluster) {
  for (int i = 1; i <= m; ++i) {
    std::string mid = idx("s" + u + v, i);
    a.v(mid, cluster);
    a.e(u, mid);
    a.e(mid, v);
  }
}

ClusteredGraph abc_sum(int m) {
  if (m < 1) bad("abc-sum needs m >= 1");
  Acc a;
  for (auto& x : kFive) {
    a.c("mu_" + x);
    a.v(x, "mu_" + x);
  }
  for (size_t p = 0; p < kFive.size(); ++p)
    for (size_t q = p + 1; q < kFive.size(); ++q) {
      const auto &u = kFive[p], &v = kFive[q];
      for (int i = 1; i <= m; ++i) {
        std::string cl = idx("mu_" + u + v, i);
        a.c(cl);
        a.v(idx(u + v, i), cl);
        a.v(idx(v + u, i), cl);
        a.e(u, idx(u + v, i));
        a.e(v, idx(v + u, i));
      }
    }
  return a.b.build();
}

ClusteredGraph k5_minus_de(int n) {
  if (n < 14 || (n - 5) % 9 != 0) bad("k5-minus-de needs n = 5 + 9m with m >= 1");
  int m = (n - 5) / 9;
  Acc a;
  a.c("mu1");
  a.c("mu2");
  a.c("mu3");
  for (auto& x : kFive) a.v(x, x == "d" ? "mu2" : x == "e" ? "mu3" : "mu1");
  for (size_t p = 0; p < kFive.size(); ++p)
    for (size_t q = p + 1; q < kFive.size(); ++q)
      if (!(kFive[p] == "d" && kFive[q] == "e")) paths(a, kFive[p], kFive[q], m, "mu1");
  return a.b.build();
}

ClusteredGraph matching_k5(int n) {
  if (n < 20 || n % 20 != 0) bad("matching-k5 needs n a positive multiple of 20");
  int k = n / 20;
  Acc a;
  for (int i = 1; i <= 5; ++i) a.c(idx("mu", i));
  for (int i = 1; i <= 5; ++i)
    for (int j = i + 1; j <= 5; ++j)
      for (int t = 1; t <= k; ++t) {
        std::string x = "m" + std::to_string(i) + std::to_string(j) + "_" + std::to_string(t);
        std::string y = "m" + std::to_string(j) + std::to_string(i) + "_" + std::to_string(t);
        a.v(x, idx("mu", i));
        a.v(y, idx("mu", j));
        a.e(x, y);
      }
  return a.b.build();
}

ClusteredGraph nested_triangles(int n, bool flat) {
  if (n < 6 || n % 3 != 0) bad("nested-triangles needs n a multiple of 3, at least 6");
  int t = n / 3;
  Acc a;
  for (int i = 1; i <= t; ++i) {
    // Non-flat: mu_i is the parent of mu_{i-1}, so the chain nests outwards.
    std::string parent = (flat || i == t) ? "root" : idx("mu", i + 1);
    a.c(idx("mu", i), parent);
  }
  a.c("mu_a");
  a.c("mu_b");
  for (int i = 1; i <= t; ++i)
    for (const char* s : {"a", "b", "c"}) a.v(idx(s, i), idx("mu", i));
  a.v("va", "mu_a");
  a.v("vb", "mu_b");
  for (int i = 1; i <= t; ++i) {
    a.e(idx("a", i), idx("b", i));
    a.e(idx("b", i), idx("c", i));
    a.e(idx("c", i), idx("a", i));
    if (i < t)
      for (const char* s : {"a", "b", "c"}) a.e(idx(s, i), idx(s, i + 1));
  }
  for (const char* s : {"a", "b", "c"}) {
    a.e("va", idx(s, 1));
    a.e("vb", idx(s, t));
  }
  return a.b.build();
}

// Cycle v_1..v_n with u_i adjacent to v_i and v_{i+1}.
void sun_graph(Acc& a, int n) {
  for (int i = 1; i <= n; ++i) {
    a.e(idx("v", i), idx("v", i % n + 1));
    a.e(idx("u", i), idx("v", i));
    a.e(idx("u", i), idx("v", i % n + 1));
  }
}

ClusteredGraph sun_flat(int n) {
  if (n < 4 || n % 2 != 0) bad("sun-flat needs an even n >= 4");
  Acc a;
  a.c("mu_star");
  for (int i = 1; i <= n / 2; ++i) a.c(idx("mu", i));
  for (int i = 1; i <= n; ++i) {
    a.v(idx("v", i), "mu_star");
    a.v(idx("u", i), idx("mu", i <= n / 2 ? i : i - n / 2));
  }
  sun_graph(a, n);
  return a.b.build();
}

ClusteredGraph sun_nonflat(int n) {
  if (n < 4 || n % 4 != 0) bad("sun-nonflat needs n a positive multiple of 4");
  Acc a;
  a.c("mu_star");
  // mu_i = mu_{i-2} + u_i: mu_{i-2} is a child of mu_i.
  for (int i = 1; i <= n; ++i) a.c(idx("mu", i), i + 2 <= n ? idx("mu", i + 2) : "root");
  for (int i = 1; i <= n; ++i) {
    a.v(idx("v", i), "mu_star");
    a.v(idx("u", i), idx("mu", i));
  }
  sun_graph(a, n);
  return a.b.build();
}

ClusteredGraph infeasible_parallel() {
  Acc a;
  a.c("mu1");
  a.c("mu2");
  a.c("mu3");
  a.v("s");
  a.v("t");
  a.v("x1", "mu1");
  a.v("y1", "mu1");
  a.v("y2", "mu2");
  a.v("x3", "mu2");
  a.v("y3", "mu3");
  a.v("x4", "mu3");
  for (auto x : {"x1", "x3", "x4"}) {
    a.e("s", x);
    a.e(x, "t");
  }
  a.e("s", "y1");
  a.e("y1", "y2");
  a.e("y2", "y3");
  a.e("y3", "t");
  return a.b.build();
}

ClusteredGraph infeasible_triconnected() {
  // Triangular bipyramid; the equator is a cluster and separates the apexes.
  Acc a;
  a.c("mu");
  for (auto x : {"a", "b", "c"}) a.v(x, "mu");
  a.v("x");
  a.v("y");
  a.e("a", "b");
  a.e("b", "c");
  a.e("c", "a");
  for (auto p : {"x", "y"})
    for (auto q : {"a", "b", "c"}) a.e(p, q);
  return a.b.build();
}

ClusteredGraph osmosis(int m, int variant) {
  if (m < 1) bad("osmosis templates need m >= 1");
  Acc a;
  std::set<std::pair<std::string, std::string>> removed{{"a", "d"}, {"c", "e"}, {"a", "e"}, {"c", "d"}};
  bool cl_ad = variant >= 2, cl_ce = variant == 3;
  if (cl_ad) a.c("mu_ad");
  if (cl_ce) a.c("mu_ce");
  for (auto& x : kFive) {
    std::string c = "root";
    if (cl_ad && (x == "a" || x == "d")) c = "mu_ad";
    if (cl_ce && (x == "c" || x == "e")) c = "mu_ce";
    a.v(x, c);
  }
  for (size_t p = 0; p < kFive.size(); ++p)
    for (size_t q = p + 1; q < kFive.size(); ++q)
      if (!removed.count({kFive[p], kFive[q]})) paths(a, kFive[p], kFive[q], m, "root");
  for (auto [u, v] : {std::pair<std::string, std::string>{"a", "e"}, {"c", "d"}})
    for (int i = 1; i <= m; ++i) {
      std::string cl = idx("mu_" + u + v, i);
      a.c(cl);
      a.v(idx(u + v, i), cl);
      a.v(idx(v + u, i), cl);
      a.e(u, idx(u + v, i));
      a.e(v, idx(v + u, i));
    }
  if (variant == 1) a.e("a", "d");
  if (variant <= 2) a.e("c", "e");
  return a.b.build();
}

std::vector<std::vector<int>> face_vertex_walks(const RotationSystem& rs) {
  FaceSet fs = faces(rs);
  std::vector<std::vector<int>> out;
  for (auto& f : fs.faces) {
    std::vector<int> w;
    for (int d : f) w.push_back(rs.tail(d));
    out.push_back(w);
  }
  return out;
}

std::string vname(int i) { return "v" + std::to_string(i); }

ClusteredGraph to_clustered(const Graph& g, const std::vector<int>& parent,
                            const std::vector<int>& member) {
  // Cluster c >= 1 is named k<c>; parent[c] and member[v] use 0 for root.
  ClusteredGraphBuilder b;
  auto cname = [](int c) { return c == 0 ? std::string("root") : "k" + std::to_string(c); };
  for (size_t c = 1; c < parent.size(); ++c) b.cluster(cname(static_cast<int>(c)), cname(parent[c]));
  for (int v = 0; v < g.n; ++v) {
    b.vertex(vname(v));
    b.member(vname(v), cname(member[v]));
  }
  for (auto [x, y] : g.edges) b.edge(vname(x), vname(y));
  return b.build();
}

// Makes every cluster non-empty by moving vertices into empty clusters.
void fill_empty(const std::vector<int>& parent, std::vector<int>& member, std::mt19937_64& rng) {
  const int k = static_cast<int>(parent.size());
  for (int round = 0; round < 64 * k; ++round) {
    std::vector<int> size(k, 0);
    for (int m : member)
      for (int c = m; c != 0; c = parent[c]) ++size[c];
    int empty = -1;
    for (int c = 1; c < k && empty < 0; ++c)
      if (!size[c]) empty = c;
    if (empty < 0) return;
    // Take a vertex whose current cluster keeps another member.
    std::vector<int> cand;
    for (size_t v = 0; v < member.size(); ++v)
      if (member[v] == 0 || size[member[v]] >= 2) cand.push_back(static_cast<int>(v));
    if (cand.empty()) break;
    member[cand[std::uniform_int_distribution<size_t>(0, cand.size() - 1)(rng)]] = empty;
  }
  bad("cannot populate every cluster");
}

ClusteredGraph cplanar_random(int n, std::uint64_t seed) {
  if (n < 3) bad("cplanar-random needs n >= 3");
  std::mt19937_64 rng(seed);
  Graph g = random_biconnected_planar(n, n / 3, rng);
  RotationSystem rs = planar_embed(g);
  for (int attempt = 0; attempt < 400; ++attempt) {
    // Shrink ambitions as attempts fail.
    int maxk = std::max(1, n / 3 - attempt / 50);
    int maxsize = std::max(1, 4 - attempt / 100);
    int k = std::uniform_int_distribution<int>(1, maxk)(rng);
    std::vector<int> parent{0}, member(n, 0);
    for (int c = 1; c <= k; ++c) {
      // Grow a connected region from a root-level seed vertex.
      std::vector<int> free;
      for (int v = 0; v < n; ++v)
        if (member[v] == 0) free.push_back(v);
      if (free.empty()) break;
      int s = free[std::uniform_int_distribution<size_t>(0, free.size() - 1)(rng)];
      int nest = 0;
      // Sometimes nest inside the previous cluster, absorbing it.
      if (c > 1 && parent[c - 1] == 0 && std::uniform_int_distribution<int>(0, 3)(rng) == 0) nest = 1;
      parent.push_back(0);
      if (nest) parent[c - 1] = c;
      std::vector<int> region{s};
      member[s] = c;
      int size = std::uniform_int_distribution<int>(1, maxsize)(rng);
      while (static_cast<int>(region.size()) < size) {
        std::vector<int> cand;
        for (int x : region)
          for (auto inc : g.adj[x])
            if (member[inc.neighbor] == 0) cand.push_back(inc.neighbor);
        if (cand.empty()) break;
        int y = cand[std::uniform_int_distribution<size_t>(0, cand.size() - 1)(rng)];
        member[y] = c;
        region.push_back(y);
      }
    }
    ClusteredGraph cg = to_clustered(g, parent, member);
    // Same embedding, re-indexed onto the canonical graph.
    std::vector<std::string> raw(n);
    for (int v = 0; v < n; ++v) raw[v] = vname(v);
    RotationSystem crs = embedding_from_json(embedding_to_json(rs, raw), cg.graph(), cg.vertex_names());
    FaceSet fs = faces(crs);
    for (int f = 0; f < fs.count(); ++f)
      if (check_fixed_embedding(cg, with_outer_face(crs, fs.faces[f].front())).feasible) return cg;
  }
  // Singletons are always fine.
  std::vector<int> parent{0, 0}, member(n, 0);
  member[0] = 1;
  return to_clustered(g, parent, member);
}

}  // namespace

Graph random_biconnected_planar(int n, int chords, std::mt19937_64& rng) {
  if (n < 3) bad("random planar graphs need n >= 3");
  Graph g(3, {{0, 1}, {1, 2}, {2, 0}});
  auto pick = [&](size_t k) { return std::uniform_int_distribution<size_t>(0, k - 1)(rng); };
  while (g.n < n) {
    auto walks = face_vertex_walks(planar_embed(g));
    auto& w = walks[pick(walks.size())];
    size_t i = pick(w.size()), j = pick(w.size() - 1);
    if (j >= i) ++j;
    int x = w[i], y = w[j];
    if (x == y) continue;
    Graph h(g.n + 1, g.edges);
    h.add_edge(x, g.n);
    h.add_edge(g.n, y);
    g = h;
  }
  for (int added = 0, tries = 0; added < chords && tries < 20 * chords + 20; ++tries) {
    auto walks = face_vertex_walks(planar_embed(g));
    auto& w = walks[pick(walks.size())];
    if (w.size() < 4) continue;
    int x = w[pick(w.size())], y = w[pick(w.size())];
    if (x == y || g.find_edge(x, y) >= 0) continue;
    g.add_edge(x, y);
    ++added;
  }
  return g;
}

ClusteredGraph random_clustered(int n, int chords, int clusters, std::mt19937_64& rng) {
  Graph g = random_biconnected_planar(n, chords, rng);
  int k = std::uniform_int_distribution<int>(1, std::clamp(clusters, 1, n))(rng);
  for (int attempt = 0;; ++attempt) {
    std::vector<int> parent(k + 1, 0), member(n, 0);
    for (int c = 2; c <= k; ++c) parent[c] = std::uniform_int_distribution<int>(0, c - 1)(rng);
    for (int v = 0; v < n; ++v) member[v] = std::uniform_int_distribution<int>(0, k)(rng);
    try {
      fill_empty(parent, member, rng);
      return to_clustered(g, parent, member);
    } catch (const Error&) {
      if (attempt > 50) throw;
    }
  }
}

std::vector<std::string> family_names() {
  return {"abc-sum",         "k5-minus-de",         "matching-k5",
          "nested-triangles-flat", "nested-triangles-nonflat", "sun-flat",
          "sun-nonflat",     "infeasible-parallel", "infeasible-triconnected",
          "osmosis-c1",      "osmosis-c2",          "osmosis-c3",
          "cplanar-random"};
}

ClusteredGraph gen(const FamilySpec& s) {
  const auto& f = s.family;
  if (f == "abc-sum") return abc_sum(s.n);
  if (f == "k5-minus-de") return k5_minus_de(s.n);
  if (f == "matching-k5") return matching_k5(s.n);
  if (f == "nested-triangles-flat") return nested_triangles(s.n, true);
  if (f == "nested-triangles-nonflat") return nested_triangles(s.n, false);
  if (f == "sun-flat") return sun_flat(s.n);
  if (f == "sun-nonflat") return sun_nonflat(s.n);
  if (f == "infeasible-parallel") return infeasible_parallel();
  if (f == "infeasible-triconnected") return infeasible_triconnected();
  if (f == "osmosis-c1") return osmosis(s.n, 1);
  if (f == "osmosis-c2") return osmosis(s.n, 2);
  if (f == "osmosis-c3") return osmosis(s.n, 3);
  if (f == "cplanar-random") return cplanar_random(s.n, s.seed);
  bad("unknown family '" + f + "'");
  return {};
}

ClusteredGraph gen(const std::string& family, int n, std::uint64_t seed) {
  return gen(FamilySpec{family, n, seed});
}

}  // namespace cgd

#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "cgd/generators.hpp"
#include "cgd/model.hpp"

namespace cgd::testing {

inline ClusteredGraph cg_from(const std::string& text) { return parse_clustered_graph(text); }

// Naive connectivity of the vertex subset by BFS over the edge list.
inline bool bfs_connected(const ClusteredGraph& cg, const std::vector<int>& vs) {
  if (vs.empty()) return true;
  std::vector<char> in(cg.vertex_count(), 0), seen(cg.vertex_count(), 0);
  for (int v : vs) in[v] = 1;
  std::vector<int> stack{vs[0]};
  seen[vs[0]] = 1;
  size_t count = 0;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    ++count;
    for (auto [a, b] : cg.edges()) {
      int y = a == x ? b : b == x ? a : -1;
      if (y >= 0 && in[y] && !seen[y]) {
        seen[y] = 1;
        stack.push_back(y);
      }
    }
  }
  return count == vs.size();
}

// Flat or two-level random clustering over a fixed graph.
inline ClusteredGraph cluster_randomly(const Graph& g, int clusters, bool nested, std::mt19937_64& rng) {
  ClusteredGraphBuilder b;
  std::vector<std::string> names;
  for (int c = 1; c <= clusters; ++c) {
    std::string parent = "root";
    if (nested && c > 1 && std::uniform_int_distribution<int>(0, 2)(rng) == 0)
      parent = "k" + std::to_string(std::uniform_int_distribution<int>(1, c - 1)(rng));
    b.cluster("k" + std::to_string(c), parent);
  }
  // Every cluster gets a vertex first so none is empty.
  std::vector<int> member(g.n, 0);
  std::vector<int> order(g.n);
  for (int i = 0; i < g.n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  for (int i = 0; i < g.n; ++i)
    member[order[i]] = i < clusters ? i + 1 : std::uniform_int_distribution<int>(0, clusters)(rng);
  for (int v = 0; v < g.n; ++v) {
    std::string name = "x" + std::to_string(v);
    b.vertex(name);
    b.member(name, member[v] ? "k" + std::to_string(member[v]) : "root");
  }
  for (auto [x, y] : g.edges) b.edge("x" + std::to_string(x), "x" + std::to_string(y));
  return b.build();
}

}  // namespace cgd::testing

#pragma once

#include <utility>
#include <vector>

namespace cgd {

// Undirected graph on vertices 0..n-1 with indexed edges. Parallel edges
// and self-loops are rejected by the clustered-graph builder, but the type
// itself does not forbid parallel edges so skeleton code can reuse it.
struct Graph {
  struct Incidence {
    int neighbor;
    int edge;
  };

  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<Incidence>> adj;

  Graph() = default;
  explicit Graph(int vertex_count) : n(vertex_count), adj(vertex_count) {}
  Graph(int vertex_count, const std::vector<std::pair<int, int>>& edge_list);

  int add_edge(int u, int v);
  int edge_count() const { return static_cast<int>(edges.size()); }
  int degree(int v) const { return static_cast<int>(adj[v].size()); }
  int other(int edge, int v) const {
    return edges[edge].first == v ? edges[edge].second : edges[edge].first;
  }
  // Index of an edge {u,v}, or -1.
  int find_edge(int u, int v) const;
};

// Small structural predicates shared by several modules. All are
// straightforward traversals; none needs to be fast.

// Connected-component label per vertex; returns the component count.
int connected_components(const Graph& g, std::vector<int>& label);
bool is_connected(const Graph& g);
// Biconnected in the usual sense: connected, at least 3 vertices (or a
// single edge), and no articulation point.
bool is_biconnected(const Graph& g);
// Naive triconnectivity test: no pair of vertices whose removal
// disconnects the graph, and at least 4 vertices.
bool is_triconnected(const Graph& g);
// Connectivity of the subgraph induced by `keep` (vertices with keep==true).
bool induced_connected(const Graph& g, const std::vector<char>& keep);

}  // namespace cgd

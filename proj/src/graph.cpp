#include "cgd/graph.hpp"

#include <algorithm>
#include <functional>

#include "cgd/error.hpp"

namespace cgd {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Syntax: return "Syntax";
    case ErrorKind::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorKind::DuplicateMembership: return "DuplicateMembership";
    case ErrorKind::MissingMembership: return "MissingMembership";
    case ErrorKind::NotATree: return "NotATree";
    case ErrorKind::NonPlanar: return "NonPlanar";
    case ErrorKind::NotBiconnected: return "NotBiconnected";
    case ErrorKind::EdgeNotPresent: return "EdgeNotPresent";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::WrongKind: return "WrongKind";
    case ErrorKind::NotCConnected: return "NotCConnected";
    case ErrorKind::BadParameter: return "BadParameter";
    case ErrorKind::InfeasibleEmbedding: return "InfeasibleEmbedding";
    case ErrorKind::DegeneratePosition: return "DegeneratePosition";
    case ErrorKind::Inconsistent: return "Inconsistent";
  }
  return "Unknown";
}

Graph::Graph(int vertex_count, const std::vector<std::pair<int, int>>& edge_list)
    : n(vertex_count), adj(vertex_count) {
  for (auto [u, v] : edge_list) add_edge(u, v);
}

int Graph::add_edge(int u, int v) {
  int id = static_cast<int>(edges.size());
  edges.emplace_back(u, v);
  adj[u].push_back({v, id});
  if (u != v) adj[v].push_back({u, id});
  return id;
}

int Graph::find_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= n || v >= n) return -1;
  const auto& list = adj[u].size() <= adj[v].size() ? adj[u] : adj[v];
  int target = adj[u].size() <= adj[v].size() ? v : u;
  for (const auto& inc : list)
    if (inc.neighbor == target) return inc.edge;
  return -1;
}

namespace {

int components_without(const Graph& g, const std::vector<char>& removed, std::vector<int>& label) {
  label.assign(g.n, -1);
  int count = 0;
  std::vector<int> stack;
  for (int s = 0; s < g.n; ++s) {
    if (removed[s] || label[s] != -1) continue;
    label[s] = count;
    stack.push_back(s);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const auto& inc : g.adj[v]) {
        if (removed[inc.neighbor] || label[inc.neighbor] != -1) continue;
        label[inc.neighbor] = count;
        stack.push_back(inc.neighbor);
      }
    }
    ++count;
  }
  return count;
}

}  // namespace

int connected_components(const Graph& g, std::vector<int>& label) {
  std::vector<char> removed(g.n, 0);
  return components_without(g, removed, label);
}

bool is_connected(const Graph& g) {
  std::vector<int> label;
  return connected_components(g, label) <= 1;
}

bool is_biconnected(const Graph& g) {
  if (g.n < 2 || !is_connected(g)) return false;
  if (g.n == 2) return g.edge_count() >= 1;
  std::vector<char> removed(g.n, 0);
  std::vector<int> label;
  for (int v = 0; v < g.n; ++v) {
    removed[v] = 1;
    if (components_without(g, removed, label) != 1) return false;
    removed[v] = 0;
  }
  return true;
}

bool is_triconnected(const Graph& g) {
  if (g.n < 4 || !is_biconnected(g)) return false;
  std::vector<char> removed(g.n, 0);
  std::vector<int> label;
  for (int a = 0; a < g.n; ++a) {
    removed[a] = 1;
    for (int b = a + 1; b < g.n; ++b) {
      removed[b] = 1;
      int c = components_without(g, removed, label);
      removed[b] = 0;
      if (c != 1) return false;
    }
    removed[a] = 0;
  }
  return true;
}

bool induced_connected(const Graph& g, const std::vector<char>& keep) {
  std::vector<char> removed(g.n, 0);
  for (int v = 0; v < g.n; ++v) removed[v] = !keep[v];
  std::vector<int> label;
  return components_without(g, removed, label) <= 1;
}

}  // namespace cgd

#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cgd/graph.hpp"

namespace cgd {

// A simple graph plus a rooted inclusion tree of clusters. Vertices and
// clusters are referred to by dense indices; names are kept for I/O.
// Cluster 0 is always the implicit root (named "root"). All other indices
// follow the lexicographic order of names, so two structurally equal inputs
// produce identical values.
class ClusteredGraph {
 public:
  static constexpr int kRoot = 0;

  int vertex_count() const { return static_cast<int>(vertex_names_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int cluster_count() const { return static_cast<int>(cluster_names_.size()); }

  const std::vector<std::string>& vertex_names() const { return vertex_names_; }
  const std::vector<std::string>& cluster_names() const { return cluster_names_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const Graph& graph() const { return graph_; }

  int cluster_parent(int c) const { return cluster_parent_[c]; }
  const std::vector<int>& cluster_children(int c) const { return cluster_children_[c]; }
  // Leaf cluster directly containing vertex v.
  int membership(int v) const { return membership_[v]; }
  int depth(int c) const { return depth_[c]; }

  // True if `a` is `b` or a proper ancestor of `b`.
  bool is_ancestor_or_self(int a, int b) const;
  // True if v belongs to V(c).
  bool contains(int c, int v) const { return is_ancestor_or_self(c, membership_[v]); }
  // V(c), sorted.
  const std::vector<int>& cluster_vertices(int c) const { return cluster_vertices_[c]; }
  // Bit mask over vertices for V(c).
  std::vector<char> cluster_mask(int c) const;

  std::optional<int> find_vertex(const std::string& name) const;
  std::optional<int> find_cluster(const std::string& name) const;
  // Index of edge {u,v} or -1.
  int find_edge(int u, int v) const { return graph_.find_edge(u, v); }

  friend bool operator==(const ClusteredGraph&, const ClusteredGraph&);

 private:
  friend class ClusteredGraphBuilder;

  std::vector<std::string> vertex_names_;
  std::vector<std::string> cluster_names_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<int> cluster_parent_;
  std::vector<std::vector<int>> cluster_children_;
  std::vector<int> membership_;
  std::vector<int> depth_;
  std::vector<std::vector<int>> cluster_vertices_;
  Graph graph_;
};

// Accumulates names and relations, then validates and canonicalizes.
// build() throws cgd::Error on any structural problem.
class ClusteredGraphBuilder {
 public:
  ClusteredGraphBuilder& vertex(const std::string& name);
  ClusteredGraphBuilder& edge(const std::string& a, const std::string& b);
  // Declare cluster `name` with parent `parent` ("root" for top level).
  ClusteredGraphBuilder& cluster(const std::string& name, const std::string& parent = "root");
  ClusteredGraphBuilder& member(const std::string& vertex, const std::string& cluster);

  ClusteredGraph build() const;

 private:
  std::vector<std::string> vertices_;
  std::vector<std::pair<std::string, std::string>> edges_;
  std::vector<std::pair<std::string, std::string>> clusters_;
  std::vector<std::pair<std::string, std::string>> members_;
  // Source line per declaration, for error messages; 0 when built in code.
  std::vector<int> vertex_lines_, edge_lines_, cluster_lines_, member_lines_;
  int line_ = 0;

  friend ClusteredGraph parse_clustered_graph(std::istream& in);
};

struct ValidationReport {
  bool is_planar = false;
  bool is_c_connected = false;
  bool is_flat = false;
  bool is_biconnected = false;
  std::vector<std::string> violations;
};

// Reads the line-based `.cg` format.
ClusteredGraph parse_clustered_graph(std::istream& in);
ClusteredGraph parse_clustered_graph(const std::string& text);
ClusteredGraph load_clustered_graph(const std::string& path);

// Canonical `.cg` text: header, then vertices, edges, clusters and
// memberships, each block sorted by identifier.
std::string serialize(const ClusteredGraph& cg);

ValidationReport validate(const ClusteredGraph& cg);

struct ClusterSubgraph {
  std::vector<int> vertices;                 // V(mu), sorted global ids
  std::vector<std::pair<int, int>> edges;    // edges of G(mu), global ids
  std::vector<int> edge_ids;                 // indices into cg.edges()
};

ClusterSubgraph cluster_subgraph(const ClusteredGraph& cg, int cluster);
ClusterSubgraph cluster_subgraph(const ClusteredGraph& cg, const std::string& cluster);

// True iff every cluster induces a connected subgraph.
bool is_c_connected(const ClusteredGraph& cg);
// True iff no non-root cluster has a cluster child.
bool is_flat(const ClusteredGraph& cg);

}  // namespace cgd

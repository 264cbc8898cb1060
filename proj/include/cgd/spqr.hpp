#pragma once

#include <string>
#include <vector>

#include "cgd/graph.hpp"
#include "json.hpp"

namespace cgd {

enum class NodeKind { S, P, Q, R };
const char* to_string(NodeKind k);

struct SkeletonEdge {
  int u = -1, v = -1;
  // Child node behind this virtual edge, or one of the markers below.
  int child = -1;
};
inline constexpr int kParentEdge = -1;  // the edge standing for the rest of G
inline constexpr int kRealEdge = -2;    // the real edge inside a Q skeleton

struct SpqrNode {
  NodeKind kind = NodeKind::Q;
  int parent = -1;
  int u = -1, v = -1;  // poles
  std::vector<int> children;
  // P: parent edge first, then children. S: the cycle u=c0,c1,...,v then the
  // parent edge back to u. R: children in discovery order, parent edge last.
  std::vector<SkeletonEdge> skeleton;
  int edge = -1;             // Q-nodes: index of the edge of G
  std::vector<int> pert;     // edge ids of pert(node), sorted
};

struct SpqrTree {
  Graph graph;
  int reference_edge = -1;
  int root = 0;
  std::vector<SpqrNode> nodes;

  const SpqrNode& node(int id) const { return nodes[id]; }
  int size() const { return static_cast<int>(nodes.size()); }
};

// Rooted at the Q-node of reference_edge. Throws NotBiconnected or
// EdgeNotPresent.
SpqrTree build_spqr(const Graph& g, int reference_edge);

// Edges of pert(node); for the root this is the whole graph.
std::vector<int> pertinent(const SpqrTree& t, int node);
std::vector<int> pertinent_vertices(const SpqrTree& t, int node);

struct VisibleNode {
  int node;
  int via = -1;  // S-node it was reached through, or -1
};

// Non-S children, plus the children of every S child. Throws WrongKind
// unless node is P or R.
std::vector<VisibleNode> visible_nodes(const SpqrTree& t, int node);

// Skeleton as a multigraph on local vertex ids; local_to_global maps back.
// Edge i of the result is skeleton edge i.
Graph skeleton_graph(const SpqrNode& n, std::vector<int>& local_to_global);

nlohmann::json spqr_to_json(const SpqrTree& t, const std::vector<std::string>& names);

}  // namespace cgd

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cgd/embedding.hpp"
#include "cgd/model.hpp"
#include "cgd/rr.hpp"
#include "json.hpp"

namespace cgd {

struct Point {
  double x = 0, y = 0;
};

// Straight-line drawing with one simple polygon per cluster. regions[0]
// (the root) stays empty and is never counted.
struct GeometricDrawing {
  std::vector<Point> vertices;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<Point>> regions;
  std::vector<int> region_parent;  // -1 for the root
};

struct CrossingItem {
  std::string kind;  // "ee", "er" or "rr"
  int a = -1, b = -1;  // edge/edge, edge/cluster or cluster/cluster
  long long count = 0;
};

struct CrossingReport {
  long long alpha = 0, beta = 0, gamma = 0;
  std::vector<CrossingItem> detail;
};

GeometricDrawing drawing_skeleton(const ClusteredGraph& cg);

// Exact counts under the crossing rules: ee per crossing point, er as
// floor(k/2) of boundary hits, rr as components of the difference minus
// one for non-nested pairs. Retries with perturbed coordinates when curves
// touch or overlap, then throws DegeneratePosition.
CrossingReport count_crossings_geometric(const GeometricDrawing& d);

// Vertex order keeping every cluster consecutive (depth-first over T).
std::vector<int> cluster_order(const ClusteredGraph& cg);

std::pair<GeometricDrawing, CrossingReport> construct_a00(const ClusteredGraph& cg);

struct TreeEdge {
  int u = -1, v = -1;
  int edge = -1;  // index into cg.edges(), -1 for auxiliary edges
  bool in_graph() const { return edge >= 0; }
};

enum class TreeMode { General, CConnected };

struct ClusterSpanningTree {
  std::vector<TreeEdge> edges;
  // cluster -> indices into edges; the edges of T(mu).
  std::vector<std::vector<int>> cluster_edges;
};

ClusterSpanningTree cluster_spanning_tree(const ClusteredGraph& cg, TreeMode mode);

struct AuxRoute {
  int tree_edge = -1;          // index into tree.edges
  std::vector<int> crossed;    // graph edges crossed, in order
};

struct BetaPlan {
  bool c_connected = false;
  RotationSystem embedding;
  ClusterSpanningTree tree;
  std::vector<AuxRoute> routes;
  // (graph edge, cluster) -> er-crossings
  std::map<std::pair<int, int>, long long> ledger;
  long long beta = 0;
};

BetaPlan construct_0b0(const ClusteredGraph& cg);
// Same on a caller-chosen planar embedding of G.
BetaPlan construct_0b0(const ClusteredGraph& cg, const RotationSystem& rs);

// Ledger from tree and routes alone (used by `count`).
std::map<std::pair<int, int>, long long> beta_ledger(const ClusteredGraph& cg,
                                                     const ClusterSpanningTree& tree,
                                                     const std::vector<AuxRoute>& routes);

CrossingReport report_of(const BetaPlan& p);

nlohmann::json to_json(const GeometricDrawing& d, const CrossingReport& r, const ClusteredGraph& cg);
nlohmann::json to_json(const BetaPlan& p, const ClusteredGraph& cg);
nlohmann::json to_json(const CrossingReport& r, const ClusteredGraph& cg);

GeometricDrawing drawing_from_json(const nlohmann::json& j, const ClusteredGraph& cg);
BetaPlan beta_plan_from_json(const nlohmann::json& j, const ClusteredGraph& cg);

// Straight-line positions for a connected embedding: outer face on a circle,
// the rest by barycentric (Tutte) placement.
std::vector<Point> tutte_layout(const RotationSystem& rs);

std::string svg_of(const GeometricDrawing& d, const ClusteredGraph& cg);
std::string svg_of(const BetaPlan& p, const ClusteredGraph& cg);
std::string svg_of(const GammaPlan& p, const ClusteredGraph& cg);

}  // namespace cgd

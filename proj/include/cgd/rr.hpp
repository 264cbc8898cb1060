#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cgd/embedding.hpp"
#include "cgd/graph.hpp"
#include "cgd/spqr.hpp"
#include "json.hpp"

namespace cgd {

class ClusteredGraph;

// H(mu): cluster vertices, adjacent when they share a face.
struct HMu {
  std::vector<int> vertices;  // global ids, sorted
  Graph graph;                // on local ids 0..vertices.size()-1
};
HMu h_mu(const RotationSystem& rs, const ClusteredGraph& cg, int cluster);

struct Violation {
  int cluster = -1;
  // "H(mu) disconnected", "enclosed vertex", or a skeleton-level reason.
  std::string condition;
  std::vector<int> cycle;
  int vertex = -1;
  int node = -1;  // SPQR node, when the failure is local to one
  std::string detail;
};

struct FeasibilityResult {
  bool feasible = false;
  std::optional<RotationSystem> witness;  // outer face included
  std::optional<Violation> violation;
  int reference_edge = -1;
};

FeasibilityResult check_fixed_embedding(const ClusteredGraph& cg, const RotationSystem& rs);
// Same, with the outer face given as one of its darts.
FeasibilityResult check_fixed_embedding(const ClusteredGraph& cg, const RotationSystem& rs,
                                        int outer_dart);

struct ClusterEdgeFlags {
  bool touched = false;
  bool full = false;
  bool spined = false;
  bool traversable = false;
};

// flags[node][cluster]. touched/full/spined follow from membership alone.
// traversable here is the embedding-free part (a pole in the cluster, or
// spined); the feasibility test refines it from the embedding it picks.
std::vector<std::vector<ClusterEdgeFlags>> classify_flags(const SpqrTree& t, const ClusteredGraph& cg);

// Flags of the parent virtual edge of `node`, i.e. of the graph outside
// pert(node) with the same poles.
std::vector<ClusterEdgeFlags> outside_flags(const SpqrTree& t, const ClusteredGraph& cg, int node);

enum class EmbeddingType { Untouched, Traversable, Sided, Bisided, Kernelized, Unfeasible };
enum class SpineKind { None, SideSpined, CentralSpined };
const char* to_string(EmbeddingType t);
const char* to_string(SpineKind k);

// pert(tau) plus its parent edge, embedded. Vertices are local; the parent
// edge is a local edge joining the local poles. f' is the face of the
// parent dart pole_u -> pole_v, f'' the face of the reverse dart.
struct EmbeddedPertinent {
  RotationSystem rs;
  std::vector<int> global;  // local vertex -> vertex of G
  int parent_edge = -1;
  int pole_u = -1, pole_v = -1;
};

struct EmbeddingClass {
  EmbeddingType type = EmbeddingType::Untouched;
  // For sided embeddings: true when the cluster reaches f', false for f''.
  bool on_first = false;
  SpineKind spine = SpineKind::None;
  // Vertices outside the cluster reachable from f' (resp. f'') without
  // crossing a cluster edge, with the parent edge acting as a wall.
  bool dirty_first = false, dirty_second = false;
  // A cluster cycle encloses a foreign vertex on the side away from the
  // parent edge.
  bool internal_violation = false;
};

EmbeddingClass classify_embedding(const EmbeddedPertinent& p, const ClusteredGraph& cg, int cluster);

struct SkeletonCheck {
  bool pass = true;
  int cluster = -1;
  int property = 0;  // 1, 2 or 3 for (i), (ii), (iii)
};

// Properties (i)-(iii) for one embedding of sk(node). `embedding` must have
// the skeleton edges of `node` as its edges, in skeleton order; flags are
// per skeleton edge and cluster.
SkeletonCheck check_skeleton_extensible(const SpqrNode& node, const RotationSystem& embedding,
                                        const std::vector<std::vector<ClusterEdgeFlags>>& edge_flags,
                                        int cluster_count);

struct RrOptions {
  int threads = 1;
  // Stop after the first reference edge that works (deterministic order).
  bool early_exit = true;
};

FeasibilityResult test_rr_biconnected(const ClusteredGraph& cg, const RrOptions& opt = {});

// One reference edge only, kept on the outer face; exposed for tests and
// diagnostics.
FeasibilityResult test_rr_rooted(const ClusteredGraph& cg, int reference_edge);

// Exhaustive over enumerate_embeddings; CapExceeded above `cap` vertices.
FeasibilityResult oracle_test_rr(const ClusteredGraph& cg, int cap = 8, int threads = 1);

struct GammaRoute {
  int cluster = -1;
  // Hubs: face id -> cluster vertices joined to that hub.
  std::map<int, std::vector<int>> hubs;
};

struct GammaPlan {
  RotationSystem embedding;
  std::vector<GammaRoute> routes;  // one per non-root cluster
  // Unordered cluster pair (a < b) -> rr-crossings.
  std::map<std::pair<int, int>, long long> ledger;
  long long gamma = 0;
};

GammaPlan construct_00c(const ClusteredGraph& cg, const RotationSystem& rs);

// Recomputes the ledger from the routes (used by `count`).
std::map<std::pair<int, int>, long long> gamma_ledger(const ClusteredGraph& cg,
                                                      const RotationSystem& rs,
                                                      const std::vector<GammaRoute>& routes);

nlohmann::json to_json(const FeasibilityResult& r, const ClusteredGraph& cg);
nlohmann::json to_json(const GammaPlan& p, const ClusteredGraph& cg);

// Number of worker threads from CGD_THREADS, else hardware concurrency.
int default_threads();

}  // namespace cgd

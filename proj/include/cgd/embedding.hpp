#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cgd/graph.hpp"
#include "json.hpp"

namespace cgd {

class ClusteredGraph;

// Darts: edge e has dart 2e running first->second and 2e+1 running back.
inline int dart_of(int edge, int dir) { return 2 * edge + dir; }
inline int edge_of(int dart) { return dart >> 1; }
inline int twin(int dart) { return dart ^ 1; }

// Combinatorial embedding. rotation[v] lists the darts leaving v in
// counter-clockwise order. outer holds one dart per connected component
// (components without edges have none); the dart lies on that component's
// outer walk, and all those walks together form the outer face.
struct RotationSystem {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> rotation;
  std::vector<int> outer;

  int tail(int d) const { return d & 1 ? edges[d >> 1].second : edges[d >> 1].first; }
  int head(int d) const { return tail(d ^ 1); }
  int dart_count() const { return 2 * static_cast<int>(edges.size()); }
  // Successor of d along its face: turn at head(d) to the next dart after
  // twin(d) in the rotation there.
  int next_in_face(int d) const;
  // Dart from u to v, or -1.
  int find_dart(int u, int v) const;

  RotationSystem mirrored() const;
};

struct FaceSet {
  // Each face is a list of darts. Bounded faces are single closed walks;
  // the outer face of a disconnected graph concatenates one walk per
  // component.
  std::vector<std::vector<int>> faces;
  std::vector<int> face_of_dart;
  // incidence[v]: sorted face ids touching v. Isolated vertices touch the
  // outer face.
  std::vector<std::vector<int>> incidence;
  int outer = -1;

  int count() const { return static_cast<int>(faces.size()); }
  // Vertices on face f, sorted, without repetition.
  std::vector<int> vertices_of(const RotationSystem& rs, int f) const;
};

RotationSystem planar_embed(const Graph& g);
bool is_planar(const Graph& g);

// Throws Inconsistent if a dart is missing from the rotations.
FaceSet faces(const RotationSystem& rs);

// Checks structural sanity plus Euler's formula.
bool is_planar_rotation(const RotationSystem& rs);

// Same rotation, different outer face (given by any dart of that face).
RotationSystem with_outer_face(const RotationSystem& rs, int dart);

// Brute force over all products of per-vertex cyclic orders; non-planar
// candidates decode to nullopt. Slow, kept as a reference for small graphs.
class EmbeddingEnumerator {
 public:
  EmbeddingEnumerator(const Graph& g, int cap = 8);
  // Number of candidate rotation assignments, i.e. prod (deg-1)!.
  std::uint64_t candidate_count() const { return total_; }
  // Decodes candidate `index`; nullopt when it is not planar.
  std::optional<RotationSystem> candidate(std::uint64_t index) const;

 private:
  Graph g_;
  std::vector<std::vector<int>> base_;
  std::vector<std::uint64_t> radix_;
  std::uint64_t total_ = 1;
};

// Every planar rotation system of a connected graph, each exactly once; the
// visitor returns false to stop. CapExceeded above `cap` vertices.
void for_each_planar_rotation(const Graph& g, int cap,
                              const std::function<bool(const RotationSystem&)>& visit);
// Rotation systems only (outer face left at its default).
std::vector<RotationSystem> enumerate_rotation_systems(const Graph& g, int cap = 8);
// Streams every (rotation system, outer face) pair.
void enumerate_embeddings(const Graph& g, int cap,
                          const std::function<bool(const RotationSystem&)>& visit);

Graph dual_graph(const RotationSystem& rs, const FaceSet& fs);
Graph dual_graph(const RotationSystem& rs);

struct EnclosureWitness {
  std::vector<int> cycle;  // vertex sequence, all in the cluster
  int vertex = -1;         // enclosed vertex outside the cluster
};

// Condition (ii) for one cluster: a cycle of cluster vertices with a
// non-cluster vertex strictly inside, if any.
std::optional<EnclosureWitness> enclosed_violation(const RotationSystem& rs,
                                                   const ClusteredGraph& cg, int cluster);

// True if the simple cycle (vertex sequence) separates vertex v from the
// outer face of rs.
bool cycle_encloses(const RotationSystem& rs, const FaceSet& fs, const std::vector<int>& cycle,
                    int v);

// Throws Inconsistent unless rs embeds exactly cg's graph.
void require_same_graph(const RotationSystem& rs, const Graph& g);

nlohmann::json embedding_to_json(const RotationSystem& rs, const std::vector<std::string>& names);
RotationSystem embedding_from_json(const nlohmann::json& j, const Graph& g,
                                   const std::vector<std::string>& names);

}  // namespace cgd

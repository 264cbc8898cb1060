#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cgd/graph.hpp"
#include "cgd/model.hpp"

namespace cgd {

struct FamilySpec {
  std::string family;
  int n = 0;  // m for abc-sum and the osmosis templates
  std::uint64_t seed = 1;
};

std::vector<std::string> family_names();

// Throws BadParameter for unknown families or sizes the family cannot take.
ClusteredGraph gen(const FamilySpec& spec);
ClusteredGraph gen(const std::string& family, int n = 0, std::uint64_t seed = 1);

// Random biconnected planar graph: a triangle grown by ears through random
// faces, then `chords` extra edges inside random faces (fewer if the graph
// saturates).
Graph random_biconnected_planar(int n, int chords, std::mt19937_64& rng);

// Random biconnected planar graph with a random cluster tree of up to
// `clusters` non-root clusters; no feasibility guarantee.
ClusteredGraph random_clustered(int n, int chords, int clusters, std::mt19937_64& rng);

}  // namespace cgd

#pragma once

#include <optional>
#include <vector>

namespace cgd {

struct ConsecutivityProblem {
  std::vector<int> universe;
  std::vector<std::vector<int>> constraints;
  std::optional<int> pinned;  // forced to the front of the ordering
};

// A linear order in which every constraint set is contiguous, or nullopt.
std::optional<std::vector<int>> pq_reduce(const ConsecutivityProblem& p);

// The tree itself, for callers that reduce incrementally.
class PQTree {
 public:
  explicit PQTree(const std::vector<int>& universe);
  // False (and the tree unusable) if the set cannot be made consecutive.
  bool reduce(const std::vector<int>& set);
  std::vector<int> frontier() const;

 private:
  enum class Type { Leaf, P, Q };
  enum class Label { Empty, Full, Partial, Fail };
  struct Node {
    Type type;
    int element = -1;
    std::vector<int> children;
  };
  std::vector<Node> nodes_;
  int root_ = -1;
  std::vector<int> leaf_of_;  // element -> node
  std::vector<int> elements_;
  std::vector<int> count_;    // pertinent leaves below each node
  std::vector<int> size_;     // leaves below each node
  bool broken_ = false;

  int make(Type t, std::vector<int> children);
  int group(const std::vector<int>& kids);  // P-node over kids (or the kid itself)
  int tally(int x, const std::vector<char>& in);
  Label process(int x, bool is_root);
  void collect(int x, std::vector<int>& out) const;
};

struct Literal {
  int var;
  bool positive;
  Literal operator!() const { return {var, !positive}; }
};

struct TwoSatProblem {
  int variables = 0;
  std::vector<std::pair<Literal, Literal>> clauses;

  void add(Literal a, Literal b) { clauses.emplace_back(a, b); }
  void unit(Literal a) { clauses.emplace_back(a, a); }
};

// Satisfying assignment, or nullopt when unsatisfiable.
std::optional<std::vector<bool>> two_sat_solve(const TwoSatProblem& p);

}  // namespace cgd

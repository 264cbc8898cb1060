#include <algorithm>
#include <numeric>
#include <random>

#include "cgd/constraints.hpp"
#include "doctest.h"

using namespace cgd;

namespace {

bool consecutive(const std::vector<int>& order, const std::vector<int>& set) {
  if (set.empty()) return true;
  std::vector<int> pos;
  for (int x : set) pos.push_back(static_cast<int>(std::find(order.begin(), order.end(), x) - order.begin()));
  auto [lo, hi] = std::minmax_element(pos.begin(), pos.end());
  return *hi - *lo + 1 == static_cast<int>(set.size());
}

bool satisfies(const ConsecutivityProblem& p, const std::vector<int>& order) {
  if (p.pinned && order.front() != *p.pinned) return false;
  for (auto& c : p.constraints)
    if (!consecutive(order, c)) return false;
  return true;
}

bool brute_pq(const ConsecutivityProblem& p) {
  auto order = p.universe;
  std::sort(order.begin(), order.end());
  do {
    if (satisfies(p, order)) return true;
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

bool holds(const TwoSatProblem& p, const std::vector<bool>& a) {
  auto val = [&](Literal l) { return a[l.var] == l.positive; };
  for (auto& [x, y] : p.clauses)
    if (!val(x) && !val(y)) return false;
  return true;
}

}  // namespace

TEST_CASE("consecutive ones against all permutations") {
  std::mt19937_64 rng(8);
  int yes = 0;
  for (int i = 0; i < 200; ++i) {
    ConsecutivityProblem p;
    int n = 2 + i % 7;
    p.universe.resize(n);
    std::iota(p.universe.begin(), p.universe.end(), 10);
    int m = std::uniform_int_distribution<int>(0, 5)(rng);
    for (int c = 0; c < m; ++c) {
      std::vector<int> s;
      for (int x : p.universe)
        if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) s.push_back(x);
      if (!s.empty()) p.constraints.push_back(s);
    }
    if (i % 3 == 0) p.pinned = p.universe[std::uniform_int_distribution<int>(0, n - 1)(rng)];
    CAPTURE(i);
    auto got = pq_reduce(p);
    bool expect = brute_pq(p);
    CHECK(got.has_value() == expect);
    if (got) {
      auto sorted = *got;
      std::sort(sorted.begin(), sorted.end());
      CHECK(sorted == p.universe);
      CHECK(satisfies(p, *got));
    }
    yes += expect;
  }
  CHECK(yes > 40);
  CHECK(yes < 190);
}

TEST_CASE("PQ tree classic cases") {
  PQTree t({1, 2, 3, 4});
  CHECK(t.reduce({1, 2}));
  CHECK(t.reduce({2, 3}));
  CHECK(t.reduce({3, 4}));
  auto f = t.frontier();
  CHECK((f == std::vector<int>{1, 2, 3, 4} || f == std::vector<int>{4, 3, 2, 1}));
  CHECK_FALSE(t.reduce({1, 3}));

  // Three pairwise-overlapping pairs of a triangle cannot all be intervals.
  ConsecutivityProblem p{{1, 2, 3}, {{1, 2}, {2, 3}, {1, 3}}, std::nullopt};
  CHECK_FALSE(pq_reduce(p).has_value());
}

TEST_CASE("2-SAT against truth tables") {
  std::mt19937_64 rng(4);
  int sat = 0;
  for (int i = 0; i < 500; ++i) {
    TwoSatProblem p;
    p.variables = 1 + i % 10;
    int m = std::uniform_int_distribution<int>(0, 3 * p.variables)(rng);
    auto lit = [&] {
      return Literal{std::uniform_int_distribution<int>(0, p.variables - 1)(rng),
                     std::uniform_int_distribution<int>(0, 1)(rng) == 1};
    };
    for (int c = 0; c < m; ++c) {
      if (c % 7 == 6)
        p.unit(lit());
      else
        p.add(lit(), lit());
    }
    bool expect = false;
    for (int mask = 0; mask < (1 << p.variables) && !expect; ++mask) {
      std::vector<bool> a(p.variables);
      for (int v = 0; v < p.variables; ++v) a[v] = (mask >> v) & 1;
      expect = holds(p, a);
    }
    auto got = two_sat_solve(p);
    CAPTURE(i);
    CHECK(got.has_value() == expect);
    if (got) CHECK(holds(p, *got));
    sat += expect;
  }
  CHECK(sat > 50);
  CHECK(sat < 450);
}

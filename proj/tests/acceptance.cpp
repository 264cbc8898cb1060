// Acceptance run: one PASS/FAIL line per criterion. Tolerances and budgets
// are fixed here; nothing is read from the environment except CGD_THREADS.

#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>

#include "cgd/draw.hpp"
#include "cgd/generators.hpp"
#include "cgd/rr.hpp"
#include "support.hpp"

using namespace cgd;

namespace {

// Budgets in seconds.
constexpr double kInfeasibleBudget = 1.0;
constexpr double kOracleBudget = 300.0;
constexpr double kA00Budget = 30.0;
constexpr double kBetaBudget = 10.0;
constexpr double kGammaBudget = 30.0;

constexpr int kLibraryGraphs = 60;
constexpr int kClusteringsPerGraph = 8;
constexpr double kRatioLo = 3.0, kRatioHi = 5.0;
constexpr double kGammaQuadratic = 0.5;  // gamma <= c n^2

struct Clock {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

int failures = 0;

void report(int id, bool ok, const std::string& what) {
  std::printf("criterion %d: %s  %s\n", id, ok ? "PASS" : "FAIL", what.c_str());
  std::fflush(stdout);
  failures += !ok;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Remembers how many cases the last run selected, so a filter that
// matches nothing cannot pass.
unsigned selected = 0;

struct Counter : doctest::IReporter {
  explicit Counter(const doctest::ContextOptions&) {}
  void report_query(const doctest::QueryData&) override {}
  void test_run_start() override {}
  void test_run_end(const doctest::TestRunStats& s) override { selected = s.numTestCasesPassingFilters; }
  void test_case_start(const doctest::TestCaseData&) override {}
  void test_case_reenter(const doctest::TestCaseData&) override {}
  void test_case_end(const doctest::CurrentTestCaseStats&) override {}
  void test_case_exception(const doctest::TestCaseException&) override {}
  void subcase_start(const doctest::SubcaseSignature&) override {}
  void subcase_end() override {}
  void log_assert(const doctest::AssertData&) override {}
  void log_message(const doctest::MessageData&) override {}
  void test_case_skipped(const doctest::TestCaseData&) override {}
};
DOCTEST_REGISTER_LISTENER("counter", 1, Counter);

// Runs the named doctest cases quietly; true when all `expect` of them ran
// and passed.
bool run_cases(const char* filter, unsigned expect) {
  doctest::Context ctx;
  ctx.setOption("test-case", filter);
  ctx.setOption("minimal", true);
  ctx.setOption("no-version", true);
  selected = 0;
  return ctx.run() == 0 && selected == expect;
}

void infeasible() {
  bool ok = true;
  std::string msg;
  for (const char* f : {"infeasible-parallel", "infeasible-triconnected"}) {
    Clock c;
    bool verdict = test_rr_biconnected(gen(f)).feasible;
    double s = c.seconds();
    ok &= !verdict && s < kInfeasibleBudget;
    msg += fmt("%s %s in %.3fs; ", f, verdict ? "feasible" : "infeasible", s);
  }
  report(1, ok, msg);
}

// Canonical form of a small graph: the smallest adjacency bit string over
// all vertex permutations.
std::uint64_t canon(const Graph& g) {
  std::vector<int> p(g.n);
  for (int i = 0; i < g.n; ++i) p[i] = i;
  std::uint64_t best = ~0ULL;
  do {
    std::uint64_t code = 0;
    for (auto [a, b] : g.edges) {
      int x = std::min(p[a], p[b]), y = std::max(p[a], p[b]);
      code |= 1ULL << (x * 8 + y);
    }
    best = std::min(best, code);
  } while (std::next_permutation(p.begin(), p.end()));
  return best | (static_cast<std::uint64_t>(g.n) << 60);
}

void oracle_equivalence() {
  Clock c;
  std::mt19937_64 rng(20240601);
  std::map<std::uint64_t, Graph> library;
  // Balanced over n = 4..7, with a spread of densities.
  for (int tries = 0; tries < 20000 && static_cast<int>(library.size()) < kLibraryGraphs + 20; ++tries) {
    int n = 4 + tries % 4;
    Graph g = random_biconnected_planar(n, std::uniform_int_distribution<int>(0, 2 * n)(rng), rng);
    library.emplace(canon(g), g);
  }
  const int threads = default_threads();
  int cases = 0, disagree = 0, feasible = 0;
  std::string first;
  for (auto& [code, g] : library) {
    for (int k = 0; k < kClusteringsPerGraph; ++k) {
      int clusters = 1 + k % std::min(4, g.n - 1);
      auto cg = testing::cluster_randomly(g, clusters, k % 2 == 1, rng);
      bool fast = test_rr_biconnected(cg).feasible;
      bool slow = oracle_test_rr(cg, 8, threads).feasible;
      feasible += slow;
      ++cases;
      if (fast != slow) {
        ++disagree;
        if (first.empty()) first = serialize(cg);
      }
    }
  }
  double s = c.seconds();
  bool ok = static_cast<int>(library.size()) >= kLibraryGraphs && cases >= 500 && disagree == 0 &&
            s < kOracleBudget;
  report(2, ok,
         fmt("%zu graphs, %d cases (%d feasible), %d disagreements, %.1fs", library.size(), cases,
             feasible, disagree, s));
  if (!first.empty()) std::printf("first disagreement:\n%s", first.c_str());
}

void a00_bounds() {
  Clock c;
  bool ok = true;
  std::mt19937_64 rng(77);
  int bad = 0;
  for (int i = 0; i < 150; ++i) {
    auto cg = random_clustered(5 + i % 16, i % 6, 1 + i % 7, rng);
    auto [d, rep] = construct_a00(cg);
    long long m = cg.edge_count();
    if (rep.beta != 0 || rep.gamma != 0 || 2 * rep.alpha > m * m) ++bad;
  }
  for (const auto& f : family_names()) {
    if (f == "k5-minus-de" || f == "matching-k5") continue;
    int n = f == "abc-sum" || f.rfind("osmosis", 0) == 0 ? 2 : f.rfind("infeasible", 0) == 0 ? 0 : 24;
    auto cg = gen(f, n, 3);
    auto [d, rep] = construct_a00(cg);
    long long m = cg.edge_count();
    if (rep.beta != 0 || rep.gamma != 0 || 2 * rep.alpha > m * m) ++bad;
  }
  ok &= bad == 0;
  std::vector<long long> alpha;
  for (int n : {40, 80, 160}) alpha.push_back(construct_a00(gen("matching-k5", n)).second.alpha);
  double r1 = static_cast<double>(alpha[1]) / alpha[0], r2 = static_cast<double>(alpha[2]) / alpha[1];
  ok &= r1 >= kRatioLo && r1 <= kRatioHi && r2 >= kRatioLo && r2 <= kRatioHi;
  double s = c.seconds();
  ok &= s < kA00Budget;
  report(3, ok,
         fmt("%d bad drawings; matching-k5 alpha %lld/%lld/%lld, ratios %.2f %.2f; %.1fs", bad, alpha[0],
             alpha[1], alpha[2], r1, r2, s));
}

void beta_flat() {
  Clock c;
  bool ok = true;
  std::string msg;
  for (int n : {30, 60, 120}) {
    auto cg = gen("nested-triangles-flat", n);
    auto p = construct_0b0(cg);
    // Closed form from the tree alone.
    std::set<int> tree;
    for (const auto& te : p.tree.edges)
      if (te.in_graph()) tree.insert(te.edge);
    long long closed = 0;
    for (int e = 0; e < cg.edge_count(); ++e) {
      if (tree.count(e)) continue;
      auto [a, b] = cg.edges()[e];
      for (int mu = 1; mu < cg.cluster_count(); ++mu) closed += cg.contains(mu, a) && cg.contains(mu, b);
    }
    bool here = 6 * p.beta >= n && p.beta <= 3 * n && p.beta == closed && p.routes.empty();
    ok &= here;
    msg += fmt("n=%d beta=%lld closed=%lld; ", n, p.beta, closed);
  }
  double s = c.seconds();
  ok &= s < kBetaBudget;
  report(4, ok, msg + fmt("%.2fs", s));
}

void gamma_flat() {
  Clock c;
  bool ok = true;
  std::string msg;
  for (int n : {16, 32, 64}) {
    auto cg = gen("sun-flat", n);
    auto r = test_rr_biconnected(cg);
    if (!r.feasible) {
      ok = false;
      msg += fmt("n=%d no witness; ", n);
      continue;
    }
    auto p = construct_00c(cg, *r.witness);
    long long h = n / 2, lower = h * (h - 1) / 2;
    ok &= p.gamma >= lower && p.gamma <= kGammaQuadratic * n * n;
    msg += fmt("n=%d gamma=%lld (>= %lld, <= %.0f); ", n, p.gamma, lower, kGammaQuadratic * n * n);
  }
  double s = c.seconds();
  ok &= s < kGammaBudget;
  report(5, ok, msg + fmt("%.2fs", s));
}

void counting_rules() {
  bool ok = run_cases(
      "edge through a comb: five boundary hits,region cut into three pieces,single piercing and disjoint regions",
      3);
  report(6, ok, "5 hits -> 2 er, 3 pieces -> 2 rr, single piercing -> 0");
}

void structural() {
  bool ok = run_cases(
      "random biconnected planar graphs decompose consistently,consecutive ones against all permutations,"
      "2-SAT against truth tables,rotation system counts",
      4);
  report(7, ok, "SPQR x500, PQ x200, 2-SAT x500, C4/K4 rotation counts");
}

}  // namespace

int main() {
  infeasible();
  oracle_equivalence();
  a00_bounds();
  beta_flat();
  gamma_flat();
  counting_rules();
  structural();
  std::printf("%s: %d of 7 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}

// End-to-end acceptance run: one PASS/FAIL line per criterion, exit status 1
// if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"
#include "vcspace/core_analysis.hpp"
#include "vcspace/experiments.hpp"
#include "vcspace/ke_growth.hpp"
#include "vcspace/matching.hpp"
#include "vcspace/meanfield.hpp"
#include "vcspace/oracle.hpp"
#include "vcspace/rsg.hpp"

using namespace vcspace;
using namespace vcspace::testing;

namespace {

constexpr std::uint64_t kCorpusSeed = 2024;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (detail.tellp() != 0) detail << "; ";
    detail << (ok ? "" : "FAILED ") << what;
  }
};

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

RunConfig ensemble(std::size_t n1, std::size_t n2, std::vector<double> grid, std::size_t instances,
                   std::uint64_t seed, bool count) {
  RunConfig c;
  c.n1 = n1;
  c.n2 = n2;
  c.c_grid = std::move(grid);
  c.instances = instances;
  c.base_seed = seed;
  c.count = count;
  c.threads = 0;
  return c;
}

// Sizes for an n1:n2 ratio at n1 + n2 = 2000.
std::pair<std::size_t, std::size_t> split(double a, double b) {
  const auto n1 = static_cast<std::size_t>(std::llround(2000.0 * a / (a + b)));
  return {n1, 2000 - n1};
}

void criterion_1(Outcome& o) {
  std::size_t agree = 0;
  std::size_t states_agree = 0;
  const auto corpus = small_bipartite_corpus(500, kCorpusSeed);
  for (const auto& inst : corpus) {
    const ReducedSolutionGraph r = build_rsg_bipartite(inst.graph, inst.partition);
    const MinCoverSet oracle = brute_force_min_covers(inst.graph);
    agree += consistent_assignments(r) == oracle.covers ? 1 : 0;
    const auto expected = states_from_covers(oracle, inst.graph.node_count());
    states_agree += std::equal(expected.begin(), expected.end(), r.states().begin()) ? 1 : 0;
  }
  o.require(agree == corpus.size(), std::to_string(agree) + "/500 assignment sets equal");
  o.require(states_agree == corpus.size(), std::to_string(states_agree) + "/500 state vectors equal");
}

void criterion_2(Outcome& o) {
  std::size_t agree = 0;
  for (const auto& inst : small_bipartite_corpus(500, kCorpusSeed)) {
    agree += max_bipartite_matching(inst.graph, inst.partition).size() ==
                     brute_force_min_covers(inst.graph).size
                 ? 1
                 : 0;
  }
  o.require(agree == 500, std::to_string(agree) + "/500 matching sizes equal min cover sizes");
}

void criterion_3(Outcome& o) {
  const auto [n1, n2] = split(4, 2);
  const std::vector<double> grid{1, 2, 3, 4, 5, 6};
  const EnsembleStats stats = run_sweep(ensemble(n1, n2, grid, 200, 30'000, false));
  double worst = 0.0;
  for (double c : grid) {
    const double theory = theory_curve(4, 2, {c})[0].solution.x;
    const double diff = std::abs(stats.aggregate_at(c).x.mean - theory);
    worst = std::max(worst, diff);
    o.require(diff < 0.01, "4:2 c=" + fmt(c, 0) + " |x-theory|=" + fmt(diff));
  }
  const auto [a1, a2] = split(4, 1);
  const double x41 = run_sweep(ensemble(a1, a2, {6.0}, 200, 31'000, false)).aggregates[0].x.mean;
  o.require(std::abs(x41 - 0.2) < 0.005, "4:1 c=6 x=" + fmt(x41));
  const auto [b1, b2] = split(4, 3);
  const double x43 = run_sweep(ensemble(b1, b2, {10.0}, 200, 32'000, false)).aggregates[0].x.mean;
  o.require(std::abs(x43 - 3.0 / 7.0) < 0.005, "4:3 c=10 x=" + fmt(x43));
}

void criterion_4(Outcome& o) {
  const EnsembleStats stats = run_sweep(ensemble(1000, 1000, {2.0, 6.0}, 200, 40'000, false));
  const AggregateRow& low = stats.aggregate_at(2.0);
  const double dplus = std::abs(low.q_plus.mean - low.theory.q_plus);
  const double dzero = std::abs(low.q_zero.mean - low.theory.q_zero);
  o.require(dplus < 0.01, "c=2 |q_plus-theory|=" + fmt(dplus));
  o.require(dzero < 0.015, "c=2 |q_zero-theory|=" + fmt(dzero));
  const auto rows = stats.rows_at(6.0);
  const auto middle = std::count_if(rows.begin(), rows.end(),
                                    [](const InstanceRow& r) { return r.q_plus >= 0.15 && r.q_plus <= 0.35; });
  const double frac = static_cast<double>(middle) / static_cast<double>(rows.size());
  o.require(frac < 0.05, "c=6 fraction of q_plus in [0.15,0.35]=" + fmt(frac, 3));
}

void criterion_5(Outcome& o) {
  const EnsembleStats stats = run_sweep(ensemble(1000, 1000, {1, 7, 10, 14}, 1000, 50'000, false));
  auto rho = [&](double c) { return classify_big_ratio(stats.rows_at(c), kBigRatioThreshold); };
  const double r1 = rho(1);
  const double r7 = rho(7);
  const double r10 = rho(10);
  const double r14 = rho(14);
  o.require(r1 >= 0.98 && r1 <= 1.0, "rho(1)=" + fmt(r1, 3));
  o.require(r7 >= 0.398 && r7 <= 0.518, "rho(7)=" + fmt(r7, 3));
  o.require(r10 >= 0.01 && r10 <= 0.05, "rho(10)=" + fmt(r10, 3));
  o.require(r14 <= 0.005, "rho(14)=" + fmt(r14, 3));
}

void criterion_6(Outcome& o) {
  std::vector<double> grid;
  for (int k = 20; k <= 35; ++k) grid.push_back(k / 10.0);
  const EnsembleStats stats = run_sweep(ensemble(1000, 1000, grid, 100, 60'000, false));
  const double at25 = stats.aggregate_at(2.5).unfrozen_core.mean;
  const double at32 = stats.aggregate_at(3.2).unfrozen_core.mean;
  o.require(at25 < 0.01, "unfrozen core(2.5)=" + fmt(at25));
  o.require(at32 > 0.05, "unfrozen core(3.2)=" + fmt(at32));
  // Onset: smallest grid value whose mean fraction reaches 0.01.
  auto onset = [&](auto field) {
    for (double c : grid) {
      if ((stats.aggregate_at(c).*field).mean >= 0.01) return c;
    }
    return std::nan("");
  };
  const double leaf = onset(&AggregateRow::leaf_core);
  const double unfrozen = onset(&AggregateRow::unfrozen_core);
  o.require(leaf > 2.6 && leaf < 2.9, "leaf-core onset=" + fmt(leaf, 1));
  o.require(unfrozen > 2.6 && unfrozen < 2.9, "unfrozen-core onset=" + fmt(unfrozen, 1));
}

void criterion_7(Outcome& o) {
  std::size_t exact = 0;
  std::size_t preserved = 0;
  std::size_t empty_core = 0;
  std::size_t k = 0;
  for (const auto& inst : small_bipartite_corpus(500, kCorpusSeed)) {
    const ReducedSolutionGraph r = build_rsg_bipartite(inst.graph, inst.partition);
    const auto oracle = brute_force_min_covers(inst.graph).covers.size();
    exact += *count_solutions(r).solution_count == oracle ? 1 : 0;
    if (k++ < 100) {
      const SimplifiedRSG s = cycle_simplification(r);
      preserved += count_consistent(s.rsg) == count_consistent(r) && count_consistent(r) == oracle ? 1 : 0;
      empty_core += unfrozen_core(s.rsg).empty() ? 1 : 0;
    }
  }
  o.require(exact == 500, std::to_string(exact) + "/500 exact counts");
  o.require(preserved == 100, std::to_string(preserved) + "/100 counts preserved by simplification");
  o.require(empty_core == 100, std::to_string(empty_core) + "/100 empty post-simplification cores");
}

void criterion_8(Outcome& o) {
  const EnsembleStats stats = run_sweep(ensemble(1000, 1000, {1.0, 3.0, 3.5, 4.0, 4.5}, 100, 80'000, true));
  const double hs = stats.aggregate_at(1.0).h_s.mean;
  o.require(hs >= 0.2 && hs <= 0.4, "mean h_s(1)=" + fmt(hs));
  for (double c : {3.0, 3.5, 4.0, 4.5}) {
    const double med = stats.aggregate_at(c).median_h_c;
    o.require(med <= 0.01, "median h_c(" + fmt(c, 1) + ")=" + fmt(med, 5));
  }
}

void criterion_9(Outcome& o) {
  std::size_t ok = 0;
  for (const Graph& g : small_general_corpus(200, 6, 18, 0.25, 90'000)) {
    const KEGrowthState s = grow_all(g);
    const KECertificate cert = ke_certificate(s);
    const std::size_t cover = brute_force_min_covers(accepted_graph(s)).size;
    ok += cert.ok && verify_matching(accepted_graph(s), cert.matching) && cover == cert.matching_size ? 1 : 0;
  }
  o.require(ok == 200, std::to_string(ok) + "/200 grown subgraphs with min cover = max matching");
  const std::size_t k3 = grow_all(cycle_graph(3)).discarded.size();
  const std::size_t c5 = grow_all(cycle_graph(5)).discarded.size();
  o.require(k3 == 1 && c5 == 1, "discards K3=" + std::to_string(k3) + " C5=" + std::to_string(c5));
  std::size_t unchanged = 0;
  for (const auto& inst : small_bipartite_corpus(100, 91'000)) {
    const KEGrowthState s = grow_all(inst.graph);
    unchanged += s.discarded.empty() && s.accepted.size() == inst.graph.edge_count() ? 1 : 0;
  }
  o.require(unchanged == 100, std::to_string(unchanged) + "/100 bipartite inputs unchanged");
}

void criterion_10(Outcome& o) {
  double worst_pi = 0.0;
  double worst_x = 0.0;
  for (int i = 0; i <= 40; ++i) {
    for (int j = 0; j <= 40; ++j) {
      const MeanFieldSolution s = solve_fixed_point(0.5 * i, 0.5 * j);
      worst_pi = std::max({worst_pi, std::abs(s.pi1 - s.q1_plus), std::abs(s.pi2 - s.q2_plus)});
      worst_x = std::max(worst_x, std::abs(s.x - (1.0 - s.q_plus - s.q_zero / 2.0)));
    }
  }
  o.require(worst_pi <= 1e-10, "max |pi-q+|=" + std::to_string(worst_pi));
  o.require(worst_x <= 1e-10, "max |x - (1-q+-q0/2)|=" + std::to_string(worst_x));
  const double pi = solve_fixed_point(1.0, 1.0).pi1;
  o.require(std::abs(pi - 0.567143) <= 1e-6, "pi(1,1)=" + fmt(pi, 7));
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "RSG exactness", 60, criterion_1},
      {2, "Koenig equality", 10, criterion_2},
      {3, "coverage vs theory", 600, criterion_3},
      {4, "equal-ratio regime split", 600, criterion_4},
      {5, "big-ratio class sizes", 1800, criterion_5},
      {6, "core emergence", 1800, criterion_6},
      {7, "counting correctness", 600, criterion_7},
      {8, "entropy curves", 900, criterion_8},
      {9, "KE growth", 120, criterion_9},
      {10, "mean-field self-consistency", 600, criterion_10},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs < c.budget_seconds, "time " + fmt(secs, 1) + "s");
    failures += o.pass ? 0 : 1;
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

#include <doctest.h>

#include <cmath>
#include <algorithm>
#include <random>
#include <set>

#include "support.hpp"
#include "vcspace/core_analysis.hpp"
#include "vcspace/oracle.hpp"

using namespace vcspace;
using namespace vcspace::testing;

namespace {

constexpr auto U = NodeState::Unfrozen;
constexpr auto D = EdgeKind::Double;
constexpr auto S = EdgeKind::Single;

ReducedSolutionGraph bipartite_rsg(const Graph& g) {
  auto colored = check_bipartition(g);
  REQUIRE(std::holds_alternative<BipartitePartition>(colored));
  return build_rsg_bipartite(g, std::get<BipartitePartition>(colored));
}

// 0-1-2-3-4-5-0 with Doubles (0,1),(2,3),(4,5).
ReducedSolutionGraph alternating_hexagon() {
  return ReducedSolutionGraph::from_parts(
      6, std::vector<NodeState>(6, U),
      {Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(3, 4), Edge(4, 5), Edge(0, 5)}, {D, S, D, S, D, S});
}

}  // namespace

TEST_CASE("log2 of big counts") {
  CHECK(log2_count(BigCount(1)) == 0.0);
  CHECK(log2_count(BigCount(1024)) == doctest::Approx(10.0));
  CHECK(std::isinf(log2_count(BigCount(0))));
  BigCount big = 1;
  big <<= 700;
  CHECK(log2_count(big) == doctest::Approx(700.0));
  CHECK(log2_count(big * 3) == doctest::Approx(700.0 + std::log2(3.0)));
}

TEST_CASE("brute-force oracle fixtures") {
  const MinCoverSet edge = brute_force_min_covers(make_graph(2, {{0, 1}}));
  CHECK(edge.size == 1);
  CHECK(edge.covers.size() == 2);
  const MinCoverSet c5 = brute_force_min_covers(cycle_graph(5));
  CHECK(c5.size == 3);
  CHECK(c5.covers.size() == 5);
  const MinCoverSet k33 = brute_force_min_covers(complete_bipartite(3, 3));
  CHECK(k33.size == 3);
  CHECK(k33.covers.size() == 2);
  const MinCoverSet empty = brute_force_min_covers(make_graph(3, {}));
  CHECK(empty.size == 0);
  CHECK(empty.covers.size() == 1);
  CHECK_THROWS_AS(brute_force_min_covers(make_graph(8, {{0, 1}, {2, 3}, {4, 5}, {6, 7}}), 10),
                  EnumerationLimit);
}

TEST_CASE("unfrozen core") {
  SUBCASE("P3 has no unfrozen nodes") {
    CHECK(unfrozen_core(bipartite_rsg(path_graph(3))).empty());
  }
  SUBCASE("C4 peels by pairs") {
    CHECK(unfrozen_core(bipartite_rsg(cycle_graph(4))).empty());
  }
  SUBCASE("alternating hexagon is its own core") {
    const UnfrozenCore core = unfrozen_core(alternating_hexagon());
    CHECK(core.nodes == std::vector<NodeId>{0, 1, 2, 3, 4, 5});
    CHECK(core.edges.size() == 6);
  }
  SUBCASE("hexagon with a hanging pair keeps the hexagon") {
    auto r = ReducedSolutionGraph::from_parts(
        8, std::vector<NodeState>(8, U),
        {Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(3, 4), Edge(4, 5), Edge(0, 5), Edge(6, 7), Edge(5, 6)},
        {D, S, D, S, D, S, D, S});
    CHECK(unfrozen_core(r).nodes == std::vector<NodeId>{0, 1, 2, 3, 4, 5});
  }
  SUBCASE("core nodes have degree two within the core") {
    for (const auto& inst : small_bipartite_corpus(300, 41)) {
      const ReducedSolutionGraph r = build_rsg_bipartite(inst.graph, inst.partition);
      const UnfrozenCore core = unfrozen_core(r);
      std::vector<std::size_t> deg(r.node_count(), 0);
      for (const Edge& e : core.edges) {
        ++deg[e.u];
        ++deg[e.v];
      }
      for (NodeId x : core.nodes) {
        CHECK(r.state(x) == U);
        CHECK(deg[x] >= 2);
      }
    }
  }
  SUBCASE("requires a propagated RSG") {
    auto r = ReducedSolutionGraph::from_parts(3, {NodeState::UncoveredBackbone, U, U},
                                              {Edge(0, 1), Edge(1, 2)}, {S, D});
    CHECK_THROWS_AS(unfrozen_core(r), std::invalid_argument);
  }
}

TEST_CASE("cycle simplification") {
  SUBCASE("alternating hexagon becomes one Double pair") {
    const SimplifiedRSG s = cycle_simplification(alternating_hexagon());
    CHECK(s.rsg.node_count() == 2);
    REQUIRE(s.rsg.edge_count() == 1);
    CHECK(s.rsg.kind(0) == D);
    CHECK(s.merged_cycles == 1);
    CHECK(count_consistent(s.rsg) == 2);
    CHECK(count_consistent(alternating_hexagon()) == 2);
    CHECK(s.merge_map[0] == s.merge_map[2]);
    CHECK(s.merge_map[2] == s.merge_map[4]);
    CHECK(s.merge_map[1] == s.merge_map[3]);
    CHECK(s.merge_map[0] != s.merge_map[1]);
  }
  SUBCASE("no alternating cycle gives the identity") {
    const ReducedSolutionGraph r = bipartite_rsg(path_graph(6));
    const SimplifiedRSG s = cycle_simplification(r);
    CHECK(s.merged_cycles == 0);
    CHECK(s.rsg.node_count() == 6);
    for (NodeId x = 0; x < 6; ++x) CHECK(s.merge_map[x] == x);
  }
  SUBCASE("counts, expansion and the empty core on random instances") {
    std::size_t merged = 0;
    for (const auto& inst : small_bipartite_corpus(300, 59)) {
      const ReducedSolutionGraph r = build_rsg_bipartite(inst.graph, inst.partition);
      const SimplifiedRSG s = cycle_simplification(r);
      merged += s.merged_cycles;
      CHECK(count_consistent(s.rsg) == count_consistent(r));
      CHECK(unfrozen_core(s.rsg).empty());
      const auto original = consistent_assignments(r);
      for (const Assignment& a : consistent_assignments(s.rsg)) {
        CHECK(std::binary_search(original.begin(), original.end(), s.expand(a)));
      }
    }
    CHECK(merged > 0);
  }
}

TEST_CASE("counting") {
  SUBCASE("single edge and C4") {
    const CountResult edge = count_solutions(bipartite_rsg(make_graph(2, {{0, 1}})));
    CHECK(*edge.solution_count == 2);
    CHECK(edge.entropy() == doctest::Approx(0.5));
    const CountResult c4 = count_solutions(bipartite_rsg(cycle_graph(4)));
    CHECK(*c4.solution_count == 2);
    CHECK(c4.entropy() == doctest::Approx(0.25));
    CHECK(*c4.core_count == 1);
    CHECK(c4.core_entropy() == 0.0);
  }
  SUBCASE("empty core counts one") {
    const ReducedSolutionGraph r = bipartite_rsg(path_graph(3));
    const CountResult cr = count_core_solutions(r, unfrozen_core(r), 3);
    CHECK(*cr.core_count == 1);
    CHECK(cr.core_entropy() == 0.0);
  }
  SUBCASE("alternating hexagon core") {
    const ReducedSolutionGraph r = alternating_hexagon();
    const CountResult cr = count_core_solutions(r, unfrozen_core(r), 6);
    CHECK(*cr.core_count == 2);
    CHECK(cr.core_entropy() == doctest::Approx(1.0 / 6.0));
  }
  SUBCASE("frozen nodes and infeasible structures") {
    auto forced = ReducedSolutionGraph::from_parts(
        3, {NodeState::CoveredBackbone, U, U}, {Edge(0, 1), Edge(1, 2)}, {S, D});
    CHECK(count_consistent(forced) == 2);
    auto infeasible = ReducedSolutionGraph::from_parts(
        2, {NodeState::CoveredBackbone, NodeState::CoveredBackbone}, {Edge(0, 1)}, {D});
    CHECK(count_consistent(infeasible) == 0);
    CHECK(count_consistent(ReducedSolutionGraph::from_parts(0, {}, {}, {})) == 1);
  }
  SUBCASE("exact counts against brute force") {
    for (const auto& inst : small_bipartite_corpus(500, 101)) {
      const ReducedSolutionGraph r = build_rsg_bipartite(inst.graph, inst.partition);
      const CountResult cr = count_solutions(r);
      const auto oracle = brute_force_min_covers(inst.graph).covers.size();
      CHECK(*cr.solution_count == oracle);
      CHECK(count_consistent(r) == oracle);
      CHECK(count_consistent(r, CountLimits{0, 1u << 22}) == oracle);
      CHECK(count_consistent(r, CountLimits{1, 1u << 22}) == oracle);
      CHECK(*cr.core_count <= *cr.solution_count);
      CHECK(cr.entropy() >= 0.0);
      CHECK(cr.core_entropy() >= 0.0);
    }
  }
  SUBCASE("entropy is additive over components") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto [g, part] = generate_random_bipartite({30, 30, 1.5, seed});
      const ReducedSolutionGraph r = build_rsg_bipartite(g, part);
      std::uint32_t k = 0;
      const auto label = connected_components(g, &k);
      double sum = 0.0;
      for (std::uint32_t comp = 0; comp < k; ++comp) {
        std::vector<bool> keep(g.node_count());
        for (NodeId x = 0; x < g.node_count(); ++x) keep[x] = label[x] == comp;
        const Graph h = g.induced(keep);
        sum += log2_count(*count_solutions(build_rsg_bipartite(h, part)).solution_count);
      }
      CHECK(count_solutions(r).entropy() == doctest::Approx(sum / 60.0));
    }
  }
  SUBCASE("dense structure beyond the limits is rejected as intractable") {
    // 120 unfrozen pairs tied by random Single edges, counted under tight limits.
    std::mt19937_64 rng(3);
    const std::size_t pairs = 120;
    std::vector<Edge> edges;
    std::vector<EdgeKind> kinds;
    for (NodeId p = 0; p < pairs; ++p) {
      edges.emplace_back(2 * p, 2 * p + 1);
      kinds.push_back(D);
    }
    // Planted cover: one end of each pair; every Single touches it.
    std::vector<bool> planted(2 * pairs);
    for (NodeId p = 0; p < pairs; ++p) planted[2 * p + rng() % 2] = true;
    std::set<Edge> seen(edges.begin(), edges.end());
    while (edges.size() < pairs * 4) {
      const auto a = static_cast<NodeId>(rng() % (2 * pairs));
      const auto b = static_cast<NodeId>(rng() % (2 * pairs));
      if (a / 2 == b / 2 || !(planted[a] || planted[b]) || !seen.insert(Edge(a, b)).second) continue;
      edges.emplace_back(a, b);
      kinds.push_back(S);
    }
    const auto r = ReducedSolutionGraph::from_parts(2 * pairs, std::vector<NodeState>(2 * pairs, U),
                                                    edges, kinds);
    CHECK_THROWS_AS(count_consistent(r, CountLimits{2, 1}), CountIntractable);
    const BigCount full = count_consistent(r);
    CHECK(full >= 1);
    CHECK(count_consistent(r, CountLimits{0, 1u << 22}) == full);
    CHECK(count_consistent(r, CountLimits{25, 1u << 22}) == full);
  }
}

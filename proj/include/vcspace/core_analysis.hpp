#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vcspace/rsg.hpp"

namespace vcspace {

using BigCount = boost::multiprecision::cpp_int;

/// log2 of a positive count; -inf for zero.
double log2_count(const BigCount& count);

/// Leaf-removal core of the unfrozen part of an RSG.
///
/// Every unfrozen node of a propagated RSG sits in exactly one unfrozen
/// Double pair, so peeling works on pairs. A pair is peeled when one of its
/// ends has no remaining neighbor other than its partner (a node-level leaf),
/// or when all of its remaining constraints go to a single other pair.
struct UnfrozenCore {
  std::vector<NodeId> nodes;  ///< sorted, all Unfrozen
  std::vector<Edge> edges;    ///< induced edges
  std::vector<EdgeKind> kinds;

  bool empty() const { return nodes.empty(); }
};

/// Throws std::invalid_argument when `rsg` is not propagation-closed.
UnfrozenCore unfrozen_core(const ReducedSolutionGraph& rsg);

/// Result of merging cycles that alternate Double and Single edges.
struct SimplifiedRSG {
  ReducedSolutionGraph rsg;
  std::vector<NodeId> merge_map;  ///< original node -> node of `rsg`, same value
  std::size_t merged_cycles = 0;  ///< number of super-node pairs created

  /// Assignment of the original RSG induced by one of the simplified RSG.
  Assignment expand(const Assignment& simplified) const;
};

/// Repeatedly merges alternating Double/Single cycles into two super-nodes
/// joined by a Double edge until none remain. Nodes forced equal end up in
/// the same super-node. Frozen nodes are carried over unchanged.
/// Throws std::invalid_argument when `rsg` is not propagation-closed and
/// GraphError when a merge would create a self-edge or a Double conflict.
SimplifiedRSG cycle_simplification(const ReducedSolutionGraph& rsg);

class CountIntractable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CountLimits {
  std::size_t max_table_width = 18;     ///< largest factor scope (2^k entries)
  std::size_t max_branches = 1u << 22;  ///< branch budget before giving up
};

/// Exact number of consistent assignments of any RSG (no propagation
/// precondition). Works on one variable per unfrozen Double pair and splits
/// into connected components. A component whose greedy min-fill order stays
/// within `max_table_width` is counted by variable elimination; otherwise
/// the counter branches on its highest-degree variable, propagates, splits
/// again and recurses, caching component counts.
/// Throws CountIntractable once more than `max_branches` branches are taken.
BigCount count_consistent(const ReducedSolutionGraph& rsg, const CountLimits& limits = {});

struct CountResult {
  std::size_t node_count = 0;              ///< normalization n
  std::optional<BigCount> solution_count;  ///< S_n
  std::optional<BigCount> core_count;      ///< S_c

  double entropy() const;       ///< log2(S_n)/n
  double core_entropy() const;  ///< log2(S_c)/n
};

/// S_n via cycle simplification followed by count_consistent, plus S_c of
/// the unfrozen core. Requires a propagation-closed RSG.
CountResult count_solutions(const ReducedSolutionGraph& rsg);

/// S_c: consistent assignments of the core's pairs under core-internal
/// constraints only, normalized by `n_total`.
CountResult count_core_solutions(const ReducedSolutionGraph& rsg, const UnfrozenCore& core,
                                 std::size_t n_total);

/// Sub-RSG on the core nodes (relabelled 0..k-1 in increasing original id).
ReducedSolutionGraph core_subgraph(const ReducedSolutionGraph& rsg, const UnfrozenCore& core);

}  // namespace vcspace

#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "vcspace/graph.hpp"
#include "vcspace/matching.hpp"
#include "vcspace/rsg.hpp"

namespace vcspace {

/// Growing König–Egerváry subgraph of a host graph.
///
/// accepted, discarded and pending partition the host edges. The RSG is kept
/// on all host nodes and describes the minimum covers of the accepted edges.
struct KEGrowthState {
  std::size_t node_count = 0;
  BipartitePartition seed_partition;
  std::vector<Edge> accepted;   ///< in acceptance order, seed edges first
  std::vector<Edge> discarded;  ///< in rejection order
  std::vector<Edge> pending;    ///< examined front to back
  ReducedSolutionGraph rsg;
  std::size_t seed_matching_size = 0;
  std::size_t contractions = 0;  ///< Single-edge additions that froze nodes
};

enum class GrowOutcome : std::uint8_t {
  AcceptedCovered,    ///< an end is a covered backbone
  Discarded,          ///< both ends are uncovered backbones
  AcceptedFreeze,     ///< uncovered end plus unfrozen end
  AcceptedUnfrozen,   ///< both ends unfrozen
};

/// Matching of g (greedy plus augmenting paths), matched ends split across
/// the sides, unmatched nodes on X1; every g-edge between the sides is
/// accepted and the rest is pending in lexicographic order.
KEGrowthState bipartite_seed(const Graph& g);

/// Examines one pending edge and removes it from `pending`.
/// Throws std::invalid_argument if `e` is not pending and std::logic_error
/// if propagation meets a contradiction.
GrowOutcome grow_step(KEGrowthState& state, Edge e);

enum class EdgeOrder : std::uint8_t { Lexicographic, Shuffled };

/// Seeds and then applies grow_step to every pending edge. A shuffled order
/// is drawn from `seed`.
KEGrowthState grow_all(const Graph& g, EdgeOrder order = EdgeOrder::Lexicographic,
                       std::uint64_t seed = 0);

/// Explicit matching and cover of the accepted subgraph. Equal sizes prove
/// the subgraph is König–Egerváry.
struct KECertificate {
  Matching matching;
  Assignment cover;
  std::size_t matching_size = 0;
  std::size_t cover_size = 0;
  bool ok = false;  ///< both valid for the accepted edges and equal in size
};
KECertificate ke_certificate(const KEGrowthState& state);

/// Subgraph on all host nodes made of the accepted edges.
Graph accepted_graph(const KEGrowthState& state);

/// `accepted u v` and `discarded u v` lines followed by
/// `ke_ok matching=<k> cover=<k>` (or `ke_fail ...`).
void write_ke_report(std::ostream& out, const KEGrowthState& state, const KECertificate& cert);

}  // namespace vcspace

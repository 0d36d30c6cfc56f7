#pragma once

#include <vector>

#include "vcspace/graph.hpp"
#include "vcspace/rsg.hpp"

namespace vcspace {

struct MinCoverSet {
  std::size_t size = 0;
  std::vector<Assignment> covers;  ///< sorted
};

/// Exhaustive branch-and-bound enumeration of every minimum vertex cover.
/// Uses nothing but the graph itself. Throws EnumerationLimit when more than
/// `limit` minimum covers exist.
MinCoverSet brute_force_min_covers(const Graph& g, std::size_t limit = 1u << 20);

/// Backbone classification derived from an explicit list of covers: a node
/// is a backbone iff it has the same value in every cover.
std::vector<NodeState> states_from_covers(const MinCoverSet& covers, std::size_t node_count);

}  // namespace vcspace

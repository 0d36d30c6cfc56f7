#pragma once

#include <optional>
#include <vector>

#include "vcspace/graph.hpp"

namespace vcspace {

/// Set of node-disjoint edges, stored as a partner table.
class Matching {
 public:
  Matching() = default;
  explicit Matching(std::size_t node_count) : partner_(node_count, kUnmatched) {}

  static constexpr NodeId kUnmatched = static_cast<NodeId>(-1);

  std::size_t node_count() const { return partner_.size(); }
  std::optional<NodeId> partner(NodeId x) const {
    if (partner_[x] == kUnmatched) return std::nullopt;
    return partner_[x];
  }
  bool is_matched(NodeId x) const { return partner_[x] != kUnmatched; }

  /// Pairs `(u, v)` with u < v, sorted.
  std::vector<Edge> pairs() const;
  std::size_t size() const { return size_; }

  /// Adds the pair; throws GraphError if either end is already matched.
  void add(NodeId a, NodeId b);
  void remove(NodeId a);

  /// Raw table; entries are kUnmatched or partner ids. Not checked.
  const std::vector<NodeId>& partner_table() const { return partner_; }

 private:
  friend Matching matching_from_table(std::vector<NodeId> table);
  std::vector<NodeId> partner_;
  std::size_t size_ = 0;
};

/// Builds a Matching from a partner table without validating it; use
/// verify_matching() to check.
Matching matching_from_table(std::vector<NodeId> table);

/// Maximum-cardinality matching of a bipartite graph by layered augmenting
/// path phases (Hopcroft-Karp). X1 nodes are scanned in increasing id and
/// neighbors in increasing id, so the result is deterministic.
/// Throws GraphError when `part` is not a valid bipartition of `g`.
Matching max_bipartite_matching(const Graph& g, const BipartitePartition& part);

/// True iff `m` is an involution on matched nodes, node-disjoint, and every
/// pair is an edge of `g`.
bool verify_matching(const Graph& g, const Matching& m);

/// True iff no augmenting path exists with respect to `m` in bipartite `g`.
bool has_augmenting_path(const Graph& g, const BipartitePartition& part, const Matching& m);

/// Matching of a general graph by greedy initialization followed by
/// augmenting-path search without blossom contraction. Not guaranteed
/// maximum on non-bipartite graphs.
Matching greedy_augmenting_matching(const Graph& g);

}  // namespace vcspace

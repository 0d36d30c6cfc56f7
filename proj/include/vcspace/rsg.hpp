#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vcspace/graph.hpp"
#include "vcspace/matching.hpp"

namespace vcspace {

/// Node state in the reduced solution graph. Positive backbones are
/// uncovered in every minimum cover, negative ones covered in every one.
enum class NodeState : std::uint8_t { Unfrozen, UncoveredBackbone, CoveredBackbone };

/// Double edges are mutual determinations: exactly one end is covered.
enum class EdgeKind : std::uint8_t { Single, Double };

char state_code(NodeState s);  // U, P, N
char kind_code(EdgeKind k);    // S, D

/// Raised when propagation forces a node both covered and uncovered.
class PropagationConflict : public std::runtime_error {
 public:
  PropagationConflict(NodeId node, const std::string& what)
      : std::runtime_error(what), node_(node) {}
  NodeId node() const { return node_; }

 private:
  NodeId node_;
};

/// Explicit cover: covered[x] != 0 iff x is in the cover.
struct Assignment {
  std::vector<std::uint8_t> covered;

  std::size_t size() const;
  friend auto operator<=>(const Assignment&, const Assignment&) = default;
};

/// Compact encoding of the minimum vertex covers of a graph.
///
/// Holds its own edge list (the host graph plus any edges added during
/// growth), a state per node and a kind per edge. Double edges form a
/// matching; `double_partner()` exposes it.
class ReducedSolutionGraph {
 public:
  ReducedSolutionGraph() = default;
  /// All nodes Unfrozen; edges in `matching` become Double, the rest Single.
  ReducedSolutionGraph(const Graph& host, const Matching& matching);

  std::size_t node_count() const { return state_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  NodeState state(NodeId x) const { return state_[x]; }
  std::span<const NodeState> states() const { return state_; }
  std::span<const Edge> edges() const { return edges_; }
  EdgeKind kind(std::size_t edge) const { return kind_[edge]; }
  std::span<const EdgeKind> kinds() const { return kind_; }

  struct Incidence {
    NodeId neighbor;
    std::uint32_t edge;
  };
  std::span<const Incidence> incident(NodeId x) const { return adj_[x]; }
  std::optional<NodeId> double_partner(NodeId x) const {
    if (partner_[x] == Matching::kUnmatched) return std::nullopt;
    return partner_[x];
  }

  /// Freezes an Unfrozen node; freezing to the same value is a no-op and to
  /// the opposite value throws PropagationConflict. Returns whether it changed.
  bool freeze(NodeId x, NodeState s);

  /// Adds a Single edge between existing nodes. Throws GraphError on
  /// duplicates or self-loops.
  void add_single_edge(NodeId a, NodeId b);

  /// Number of Double edges plus CoveredBackbone nodes outside any Double edge.
  std::size_t min_cover_size() const;

  /// Host graph rebuilt from the current edge list.
  Graph host_graph() const;

  bool has_edge(NodeId a, NodeId b) const;

  /// Builds an RSG from explicit parts (used by file readers and merges).
  static ReducedSolutionGraph from_parts(std::size_t node_count, std::vector<NodeState> states,
                                         std::vector<Edge> edges, std::vector<EdgeKind> kinds);

 private:
  void index_edges();

  std::vector<NodeState> state_;
  std::vector<Edge> edges_;
  std::vector<EdgeKind> kind_;
  std::vector<std::vector<Incidence>> adj_;
  std::vector<NodeId> partner_;
};

/// Propagates to a fixpoint of: neighbors of uncovered backbones become
/// covered; the Double partner of a covered backbone becomes uncovered.
/// Throws PropagationConflict. Returns the number of nodes frozen.
std::size_t freezing_influence(ReducedSolutionGraph& rsg);
ReducedSolutionGraph freezing_influence(const ReducedSolutionGraph& rsg);

/// Failed-hypothesis propagation: an Unfrozen node whose hypothesized value
/// leads to a contradiction is frozen to the other value, then
/// freezing_influence is rerun; repeats until nothing fires.
/// Returns the number of nodes frozen.
std::size_t odd_cycle_breaking(ReducedSolutionGraph& rsg);
ReducedSolutionGraph odd_cycle_breaking(const ReducedSolutionGraph& rsg);

/// Double edges = maximum matching, unmatched nodes uncovered, then
/// freezing_influence. Exact for bipartite graphs.
ReducedSolutionGraph build_rsg_bipartite(const Graph& g, const BipartitePartition& part);
ReducedSolutionGraph build_rsg_from_matching(const Graph& g, const Matching& m);

class NotBipartiteCore : public std::runtime_error {
 public:
  NotBipartiteCore() : std::runtime_error("not a bipartite core graph") {}
};

/// Leaf matchings plus a maximum matching of the (bipartite) leaf-removal
/// core, followed by alternating freezing_influence and odd_cycle_breaking.
/// Throws NotBipartiteCore if the leaf-removal core has an odd cycle.
ReducedSolutionGraph build_rsg_bipartite_core(const Graph& g);

class EnumerationLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// All assignments with backbones at their frozen values, one covered end
/// per Double edge and at least one per Single edge. Sorted. Throws
/// EnumerationLimit when more than `limit` exist.
std::vector<Assignment> consistent_assignments(const ReducedSolutionGraph& rsg,
                                               std::size_t limit = 1u << 20);

struct StateRatios {
  double q_plus = 0.0;   ///< uncovered backbones
  double q_minus = 0.0;  ///< covered backbones
  double q_zero = 0.0;   ///< unfrozen
};
StateRatios state_ratios(const ReducedSolutionGraph& rsg);

/// Text format: header `rsg n m`, n lines `id state` (U/P/N), m lines
/// `u v kind` (S/D).
void write_rsg(std::ostream& out, const ReducedSolutionGraph& rsg);
ReducedSolutionGraph read_rsg(std::istream& in);

}  // namespace vcspace

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace vcspace {

using NodeId = std::uint32_t;

/// Undirected edge stored with `u < v`.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  Edge() = default;
  Edge(NodeId a, NodeId b) : u(a < b ? a : b), v(a < b ? b : a) {}

  NodeId other(NodeId x) const { return x == u ? v : u; }
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Immutable undirected simple graph on dense node ids 0..n-1.
///
/// Edges are kept sorted lexicographically; adjacency lists are sorted by
/// neighbor id. Instances are safe to share between threads.
class Graph {
 public:
  Graph() = default;

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const NodeId> neighbors(NodeId x) const { return adjacency_[x]; }
  std::size_t degree(NodeId x) const { return adjacency_[x].size(); }
  bool has_edge(NodeId a, NodeId b) const;

  /// Index of edge {a,b} in edges(), if present.
  std::optional<std::size_t> edge_index(NodeId a, NodeId b) const;

  /// Subgraph on the same node ids keeping only edges with both ends kept.
  Graph induced(const std::vector<bool>& keep) const;

 private:
  friend class GraphBuilder;
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeId>> adjacency_;
};

/// Collects edges and produces a Graph. Rejects self-loops, silently merges
/// duplicate edges.
class GraphBuilder {
 public:
  explicit GraphBuilder(std::size_t node_count) : node_count_(node_count) {}

  GraphBuilder& add_edge(NodeId a, NodeId b);
  std::size_t node_count() const { return node_count_; }
  Graph build() &&;
  Graph build() const&;

 private:
  std::size_t node_count_;
  std::vector<Edge> edges_;
};

enum class Side : std::uint8_t { X1 = 0, X2 = 1 };

struct BipartitePartition {
  std::vector<Side> side_of;
  std::size_t n1 = 0;
  std::size_t n2 = 0;

  std::size_t node_count() const { return side_of.size(); }
  bool valid_for(const Graph& g) const;
  /// Partition with X1 = 0..n1-1 and X2 = n1..n1+n2-1.
  static BipartitePartition contiguous(std::size_t n1, std::size_t n2);
};

struct EnsembleParams {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  double c = 0.0;  ///< mean degree of the whole graph
  std::uint64_t seed = 0;

  double expected_edges() const { return c * static_cast<double>(n1 + n2) / 2.0; }
  double c1() const { return expected_edges() / static_cast<double>(n1); }
  double c2() const { return expected_edges() / static_cast<double>(n2); }
  double edge_probability() const;
};

/// Per-pair Bernoulli bipartite graph; X1 occupies ids 0..n1-1.
/// Throws GraphError when the implied edge probability exceeds 1.
std::pair<Graph, BipartitePartition> generate_random_bipartite(const EnsembleParams& params);

/// G(n, p) on n nodes; used for general-graph experiments.
Graph generate_random_graph(std::size_t n, double p, std::uint64_t seed);

struct PeelResult {
  std::vector<NodeId> core_nodes;  ///< sorted
  std::vector<std::pair<NodeId, NodeId>> leaf_matchings;  ///< (pendant, support)
  std::vector<NodeId> isolated;  ///< nodes removed with no remaining neighbor
};

/// Leaf removal: repeatedly deletes a degree-1 node together with its
/// neighbor. The residual core has minimum degree >= 2.
PeelResult leaf_removal(const Graph& g);

/// |largest connected component| / node_count, 0 for the empty graph.
double giant_component_fraction(const Graph& g);

/// Component label per node; labels are assigned in order of smallest member.
std::vector<std::uint32_t> connected_components(const Graph& g, std::uint32_t* count = nullptr);

struct OddCycle {
  std::vector<NodeId> cycle;  ///< consecutive nodes, closing edge back to front
};

/// Two-colors each component (root of each component on X1) or returns an
/// odd cycle.
std::variant<BipartitePartition, OddCycle> check_bipartition(const Graph& g);

/// Graph text format: header `n m` or `bipartite n1 n2 m`, then `u v` lines.
struct GraphFile {
  Graph graph;
  std::optional<BipartitePartition> partition;
};

GraphFile read_graph(std::istream& in);
GraphFile read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& g, const BipartitePartition* partition = nullptr);

}  // namespace vcspace

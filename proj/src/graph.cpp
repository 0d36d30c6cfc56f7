#include "vcspace/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

namespace vcspace {

bool Graph::has_edge(NodeId a, NodeId b) const {
  if (a >= node_count() || b >= node_count()) return false;
  const auto& adj = adjacency_[a];
  return std::binary_search(adj.begin(), adj.end(), b);
}

std::optional<std::size_t> Graph::edge_index(NodeId a, NodeId b) const {
  const Edge key(a, b);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

Graph Graph::induced(const std::vector<bool>& keep) const {
  GraphBuilder b(node_count());
  for (const Edge& e : edges_) {
    if (keep[e.u] && keep[e.v]) b.add_edge(e.u, e.v);
  }
  return std::move(b).build();
}

GraphBuilder& GraphBuilder::add_edge(NodeId a, NodeId b) {
  if (a == b) throw GraphError("self-loop on node " + std::to_string(a));
  if (a >= node_count_ || b >= node_count_) {
    throw GraphError("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                     ") out of range for " + std::to_string(node_count_) + " nodes");
  }
  edges_.emplace_back(a, b);
  return *this;
}

Graph GraphBuilder::build() const& {
  GraphBuilder copy = *this;
  return std::move(copy).build();
}

Graph GraphBuilder::build() && {
  Graph g;
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  g.adjacency_.assign(node_count_, {});
  std::vector<std::size_t> deg(node_count_, 0);
  for (const Edge& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  for (std::size_t i = 0; i < node_count_; ++i) g.adjacency_[i].reserve(deg[i]);
  for (const Edge& e : edges_) {
    g.adjacency_[e.u].push_back(e.v);
    g.adjacency_[e.v].push_back(e.u);
  }
  for (auto& adj : g.adjacency_) std::sort(adj.begin(), adj.end());
  g.edges_ = std::move(edges_);
  return g;
}

bool BipartitePartition::valid_for(const Graph& g) const {
  if (side_of.size() != g.node_count()) return false;
  std::size_t c1 = 0;
  for (Side s : side_of) c1 += s == Side::X1 ? 1 : 0;
  if (c1 != n1 || side_of.size() - c1 != n2) return false;
  return std::all_of(g.edges().begin(), g.edges().end(),
                     [&](const Edge& e) { return side_of[e.u] != side_of[e.v]; });
}

BipartitePartition BipartitePartition::contiguous(std::size_t n1, std::size_t n2) {
  BipartitePartition p;
  p.side_of.assign(n1 + n2, Side::X2);
  std::fill_n(p.side_of.begin(), n1, Side::X1);
  p.n1 = n1;
  p.n2 = n2;
  return p;
}

double EnsembleParams::edge_probability() const {
  if (n1 == 0 || n2 == 0) return 0.0;
  return expected_edges() / (static_cast<double>(n1) * static_cast<double>(n2));
}

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Visits the indices in [0, total) selected by independent Bernoulli(p)
// trials, using geometric skips.
template <typename F>
void bernoulli_indices(std::uint64_t total, double p, std::mt19937_64& rng, F&& visit) {
  if (p <= 0.0 || total == 0) return;
  if (p >= 1.0) {
    for (std::uint64_t k = 0; k < total; ++k) visit(k);
    return;
  }
  const double log_q = std::log1p(-p);
  std::uint64_t k = 0;
  while (true) {
    const double r = uniform01(rng);
    const double skip = std::floor(std::log1p(-r) / log_q);
    if (skip >= static_cast<double>(total - k)) return;
    k += static_cast<std::uint64_t>(skip);
    visit(k);
    ++k;
    if (k >= total) return;
  }
}

}  // namespace

std::pair<Graph, BipartitePartition> generate_random_bipartite(const EnsembleParams& params) {
  if (params.c < 0.0) throw GraphError("mean degree must be non-negative");
  const double p = params.edge_probability();
  if (p > 1.0) {
    throw GraphError("edge probability " + std::to_string(p) + " > 1: c too large for n1=" +
                     std::to_string(params.n1) + ", n2=" + std::to_string(params.n2));
  }
  std::mt19937_64 rng(params.seed);
  GraphBuilder b(params.n1 + params.n2);
  const auto n1 = static_cast<std::uint64_t>(params.n1);
  const auto n2 = static_cast<std::uint64_t>(params.n2);
  bernoulli_indices(n1 * n2, p, rng, [&](std::uint64_t k) {
    b.add_edge(static_cast<NodeId>(k / n2), static_cast<NodeId>(n1 + k % n2));
  });
  return {std::move(b).build(), BipartitePartition::contiguous(params.n1, params.n2)};
}

Graph generate_random_graph(std::size_t n, double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw GraphError("edge probability out of [0,1]");
  std::mt19937_64 rng(seed);
  GraphBuilder b(n);
  const auto total = static_cast<std::uint64_t>(n) * (n - (n > 0 ? 1 : 0)) / 2;
  // Pair index k enumerates (u, v), u < v, row by row.
  std::uint64_t row_start = 0;
  NodeId u = 0;
  bernoulli_indices(total, p, rng, [&](std::uint64_t k) {
    while (k >= row_start + (n - 1 - u)) {
      row_start += n - 1 - u;
      ++u;
    }
    b.add_edge(u, static_cast<NodeId>(u + 1 + (k - row_start)));
  });
  return std::move(b).build();
}

PeelResult leaf_removal(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::size_t> deg(n);
  std::vector<bool> alive(n, true);
  std::deque<NodeId> queue;
  PeelResult out;

  for (NodeId x = 0; x < n; ++x) {
    deg[x] = g.degree(x);
    if (deg[x] == 0) {
      alive[x] = false;
      out.isolated.push_back(x);
    } else if (deg[x] == 1) {
      queue.push_back(x);
    }
  }

  auto remove = [&](NodeId x) {
    alive[x] = false;
    for (NodeId y : g.neighbors(x)) {
      if (!alive[y]) continue;
      --deg[y];
      if (deg[y] == 1) {
        queue.push_back(y);
      } else if (deg[y] == 0) {
        alive[y] = false;
        out.isolated.push_back(y);
      }
    }
  };

  while (!queue.empty()) {
    const NodeId p = queue.front();
    queue.pop_front();
    if (!alive[p] || deg[p] != 1) continue;
    NodeId support = p;
    for (NodeId y : g.neighbors(p)) {
      if (alive[y]) {
        support = y;
        break;
      }
    }
    out.leaf_matchings.emplace_back(p, support);
    alive[p] = false;
    --deg[support];
    remove(support);
  }

  for (NodeId x = 0; x < n; ++x) {
    if (alive[x]) out.core_nodes.push_back(x);
  }
  std::sort(out.isolated.begin(), out.isolated.end());
  return out;
}

std::vector<std::uint32_t> connected_components(const Graph& g, std::uint32_t* count) {
  constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> label(g.node_count(), kUnset);
  std::vector<NodeId> stack;
  std::uint32_t next = 0;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (label[s] != kUnset) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeId x = stack.back();
      stack.pop_back();
      for (NodeId y : g.neighbors(x)) {
        if (label[y] == kUnset) {
          label[y] = next;
          stack.push_back(y);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return label;
}

double giant_component_fraction(const Graph& g) {
  if (g.node_count() == 0) return 0.0;
  std::uint32_t count = 0;
  const auto label = connected_components(g, &count);
  std::vector<std::size_t> size(count, 0);
  for (auto l : label) ++size[l];
  const std::size_t largest = *std::max_element(size.begin(), size.end());
  return static_cast<double>(largest) / static_cast<double>(g.node_count());
}

std::variant<BipartitePartition, OddCycle> check_bipartition(const Graph& g) {
  const std::size_t n = g.node_count();
  constexpr auto kNone = std::numeric_limits<NodeId>::max();
  std::vector<int> color(n, -1);
  std::vector<NodeId> parent(n, kNone);
  std::vector<std::size_t> depth(n, 0);
  std::deque<NodeId> queue;

  for (NodeId s = 0; s < n; ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    queue.push_back(s);
    while (!queue.empty()) {
      const NodeId x = queue.front();
      queue.pop_front();
      for (NodeId y : g.neighbors(x)) {
        if (color[y] == -1) {
          color[y] = 1 - color[x];
          parent[y] = x;
          depth[y] = depth[x] + 1;
          queue.push_back(y);
        } else if (color[y] == color[x]) {
          // Same BFS layer parity: walk both tree paths up to their meeting point.
          std::vector<NodeId> left{x};
          std::vector<NodeId> right{y};
          NodeId a = x;
          NodeId b = y;
          while (depth[a] > depth[b]) left.push_back(a = parent[a]);
          while (depth[b] > depth[a]) right.push_back(b = parent[b]);
          while (a != b) {
            left.push_back(a = parent[a]);
            right.push_back(b = parent[b]);
          }
          right.pop_back();
          OddCycle cyc;
          cyc.cycle.assign(left.begin(), left.end());
          cyc.cycle.insert(cyc.cycle.end(), right.rbegin(), right.rend());
          return cyc;
        }
      }
    }
  }

  BipartitePartition part;
  part.side_of.resize(n);
  for (NodeId x = 0; x < n; ++x) {
    part.side_of[x] = color[x] == 0 ? Side::X1 : Side::X2;
    (color[x] == 0 ? part.n1 : part.n2) += 1;
  }
  return part;
}

namespace {

// Next non-empty, non-comment line, stripped of any trailing comment.
bool next_data_line(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

[[noreturn]] void parse_fail(std::size_t lineno, const std::string& what) {
  throw GraphError("graph file line " + std::to_string(lineno) + ": " + what);
}

}  // namespace

GraphFile read_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!next_data_line(in, line, lineno)) throw GraphError("graph file: missing header");

  std::istringstream header(line);
  std::string first;
  header >> first;
  std::size_t n = 0;
  std::size_t m = 0;
  std::optional<BipartitePartition> partition;
  if (first == "bipartite") {
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    if (!(header >> n1 >> n2 >> m)) parse_fail(lineno, "expected `bipartite n1 n2 m`");
    n = n1 + n2;
    partition = BipartitePartition::contiguous(n1, n2);
  } else {
    try {
      std::size_t used = 0;
      n = std::stoul(first, &used);
      if (used != first.size()) throw std::invalid_argument(first);
    } catch (const std::exception&) {
      parse_fail(lineno, "expected `n m` header");
    }
    if (!(header >> m)) parse_fail(lineno, "expected `n m` header");
  }

  GraphBuilder b(n);
  for (std::size_t k = 0; k < m; ++k) {
    if (!next_data_line(in, line, lineno)) {
      throw GraphError("graph file: expected " + std::to_string(m) + " edges, got " +
                       std::to_string(k));
    }
    std::istringstream row(line);
    long long u = -1;
    long long v = -1;
    if (!(row >> u >> v) || u < 0 || v < 0) parse_fail(lineno, "expected `u v`");
    try {
      b.add_edge(static_cast<NodeId>(u), static_cast<NodeId>(v));
    } catch (const GraphError& e) {
      parse_fail(lineno, e.what());
    }
  }
  GraphFile out{std::move(b).build(), std::move(partition)};
  if (out.graph.edge_count() != m) throw GraphError("graph file: duplicate edges");
  if (out.partition && !out.partition->valid_for(out.graph)) {
    throw GraphError("graph file: edge inside one side of a bipartite graph");
  }
  return out;
}

GraphFile read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open graph file " + path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g, const BipartitePartition* partition) {
  bool contiguous = partition != nullptr;
  if (partition) {
    for (NodeId x = 0; x < g.node_count() && contiguous; ++x) {
      contiguous = (partition->side_of[x] == Side::X1) == (x < partition->n1);
    }
  }
  if (contiguous) {
    out << "bipartite " << partition->n1 << ' ' << partition->n2 << ' ' << g.edge_count() << '\n';
  } else {
    out << g.node_count() << ' ' << g.edge_count() << '\n';
  }
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

}  // namespace vcspace

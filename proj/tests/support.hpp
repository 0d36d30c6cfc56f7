#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <utility>
#include <vector>

#include "vcspace/graph.hpp"

namespace vcspace::testing {

inline Graph make_graph(std::size_t n, std::initializer_list<std::pair<NodeId, NodeId>> edges) {
  GraphBuilder b(n);
  for (auto [u, v] : edges) b.add_edge(u, v);
  return std::move(b).build();
}

inline Graph path_graph(std::size_t n) {
  GraphBuilder b(n);
  for (NodeId i = 0; i + 1 < n; ++i) b.add_edge(i, i + 1);
  return std::move(b).build();
}

inline Graph cycle_graph(std::size_t n) {
  GraphBuilder b(n);
  for (NodeId i = 0; i < n; ++i) b.add_edge(i, static_cast<NodeId>((i + 1) % n));
  return std::move(b).build();
}

inline Graph complete_bipartite(std::size_t a, std::size_t b) {
  GraphBuilder g(a + b);
  for (NodeId i = 0; i < a; ++i) {
    for (NodeId j = 0; j < b; ++j) g.add_edge(i, static_cast<NodeId>(a + j));
  }
  return std::move(g).build();
}

struct SmallInstance {
  EnsembleParams params;
  Graph graph;
  BipartitePartition partition;
};

/// Deterministic corpus of small random bipartite graphs: sizes 4..14 and
/// mean degrees spread over [0.5, 6], lowered when the sizes cannot carry
/// them.
inline std::vector<SmallInstance> small_bipartite_corpus(std::size_t count, std::uint64_t seed) {
  std::vector<SmallInstance> out;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = 4 + i % 11;
    const std::size_t n1 = 1 + rng() % (n - 1);
    const std::size_t n2 = n - n1;
    double c = 0.5 + 5.5 * static_cast<double>(i) / static_cast<double>(count > 1 ? count - 1 : 1);
    const double c_max = 2.0 * static_cast<double>(n1 * n2) / static_cast<double>(n);
    if (c > c_max) c = c_max;
    EnsembleParams p{n1, n2, c, seed * 1'000'003 + i};
    auto [g, part] = generate_random_bipartite(p);
    out.push_back({p, std::move(g), std::move(part)});
  }
  return out;
}

/// Uniform G(n, p) instances with n drawn from [lo, hi].
inline std::vector<Graph> small_general_corpus(std::size_t count, std::size_t lo, std::size_t hi,
                                               double p, std::uint64_t seed) {
  std::vector<Graph> out;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = lo + rng() % (hi - lo + 1);
    out.push_back(generate_random_graph(n, p, rng()));
  }
  return out;
}

}  // namespace vcspace::testing

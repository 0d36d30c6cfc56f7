#include "vcspace/matching.hpp"

#include <deque>
#include <limits>

namespace vcspace {

std::vector<Edge> Matching::pairs() const {
  std::vector<Edge> out;
  out.reserve(size_);
  for (NodeId x = 0; x < partner_.size(); ++x) {
    if (partner_[x] != kUnmatched && x < partner_[x]) out.emplace_back(x, partner_[x]);
  }
  return out;
}

void Matching::add(NodeId a, NodeId b) {
  if (a == b || partner_[a] != kUnmatched || partner_[b] != kUnmatched) {
    throw GraphError("matching pair (" + std::to_string(a) + ", " + std::to_string(b) +
                     ") overlaps an existing pair");
  }
  partner_[a] = b;
  partner_[b] = a;
  ++size_;
}

void Matching::remove(NodeId a) {
  const NodeId b = partner_[a];
  if (b == kUnmatched) return;
  partner_[a] = kUnmatched;
  partner_[b] = kUnmatched;
  --size_;
}

Matching matching_from_table(std::vector<NodeId> table) {
  Matching m;
  std::size_t matched = 0;
  for (NodeId p : table) matched += p != Matching::kUnmatched ? 1 : 0;
  m.partner_ = std::move(table);
  m.size_ = matched / 2;
  return m;
}

namespace {

class HopcroftKarp {
 public:
  HopcroftKarp(const Graph& g, const BipartitePartition& part)
      : g_(g), mate_(g.node_count(), Matching::kUnmatched), level_(g.node_count(), kInf) {
    for (NodeId x = 0; x < g.node_count(); ++x) {
      if (part.side_of[x] == Side::X1) left_.push_back(x);
    }
    next_.resize(g.node_count());
  }

  std::vector<NodeId> run() {
    while (layer()) {
      for (NodeId u : left_) next_[u] = 0;
      for (NodeId u : left_) {
        if (mate_[u] == Matching::kUnmatched) augment(u);
      }
    }
    return std::move(mate_);
  }

 private:
  static constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

  // BFS from free X1 nodes; returns whether some free X2 node is reachable.
  bool layer() {
    std::deque<NodeId> queue;
    for (NodeId u : left_) {
      if (mate_[u] == Matching::kUnmatched) {
        level_[u] = 0;
        queue.push_back(u);
      } else {
        level_[u] = kInf;
      }
    }
    bool found = false;
    while (!queue.empty()) {
      const NodeId u = queue.front();
      queue.pop_front();
      for (NodeId v : g_.neighbors(u)) {
        const NodeId w = mate_[v];
        if (w == Matching::kUnmatched) {
          found = true;
        } else if (level_[w] == kInf) {
          level_[w] = level_[u] + 1;
          queue.push_back(w);
        }
      }
    }
    return found;
  }

  bool augment(NodeId u) {
    const auto nbrs = g_.neighbors(u);
    for (auto& i = next_[u]; i < nbrs.size(); ++i) {
      const NodeId v = nbrs[i];
      const NodeId w = mate_[v];
      if (w == Matching::kUnmatched || (level_[w] == level_[u] + 1 && augment(w))) {
        mate_[u] = v;
        mate_[v] = u;
        ++i;
        return true;
      }
    }
    level_[u] = kInf;
    return false;
  }

  const Graph& g_;
  std::vector<NodeId> left_;
  std::vector<NodeId> mate_;
  std::vector<std::uint32_t> level_;
  std::vector<std::size_t> next_;
};

}  // namespace

Matching max_bipartite_matching(const Graph& g, const BipartitePartition& part) {
  if (!part.valid_for(g)) throw GraphError("max_bipartite_matching: invalid bipartition");
  return matching_from_table(HopcroftKarp(g, part).run());
}

bool verify_matching(const Graph& g, const Matching& m) {
  const auto& table = m.partner_table();
  if (table.size() != g.node_count()) return false;
  std::size_t matched = 0;
  for (NodeId x = 0; x < table.size(); ++x) {
    const NodeId p = table[x];
    if (p == Matching::kUnmatched) continue;
    if (p >= table.size() || p == x || table[p] != x || !g.has_edge(x, p)) return false;
    ++matched;
  }
  return matched == 2 * m.size();
}

bool has_augmenting_path(const Graph& g, const BipartitePartition& part, const Matching& m) {
  // Alternating BFS from every free X1 node; an edge to a free X2 node closes a path.
  std::vector<bool> seen(g.node_count(), false);
  std::deque<NodeId> queue;
  for (NodeId x = 0; x < g.node_count(); ++x) {
    if (part.side_of[x] == Side::X1 && !m.is_matched(x)) {
      seen[x] = true;
      queue.push_back(x);
    }
  }
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop_front();
    for (NodeId v : g.neighbors(u)) {
      if (!m.is_matched(v)) return true;
      const NodeId w = *m.partner(v);
      if (!seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
    }
  }
  return false;
}

Matching greedy_augmenting_matching(const Graph& g) {
  const std::size_t n = g.node_count();
  Matching m(n);
  for (const Edge& e : g.edges()) {
    if (!m.is_matched(e.u) && !m.is_matched(e.v)) m.add(e.u, e.v);
  }

  // Repeated DFS for alternating paths from each free node. Nodes already
  // on the search tree are never revisited, so every path found is simple.
  bool improved = true;
  while (improved) {
    improved = false;
    for (NodeId root = 0; root < n; ++root) {
      if (m.is_matched(root)) continue;
      std::vector<bool> used(n, false);
      std::vector<NodeId> path;  // alternating: root, v1, w1, v2, w2, ...
      std::vector<std::size_t> cursor;
      used[root] = true;
      path.push_back(root);
      cursor.push_back(0);
      bool augmented = false;
      while (!path.empty() && !augmented) {
        const NodeId x = path.back();
        const auto nbrs = g.neighbors(x);
        std::size_t& i = cursor.back();
        bool descended = false;
        while (i < nbrs.size()) {
          const NodeId v = nbrs[i++];
          if (used[v]) continue;
          if (!m.is_matched(v)) {
            path.push_back(v);
            augmented = true;
            break;
          }
          const NodeId w = *m.partner(v);
          if (used[w]) continue;
          used[v] = used[w] = true;
          path.push_back(v);
          path.push_back(w);
          cursor.push_back(0);
          descended = true;
          break;
        }
        if (!augmented && !descended) {
          path.pop_back();
          cursor.pop_back();
          if (!path.empty()) path.pop_back();
        }
      }
      if (augmented) {
        // Flip: pairs (path[0],path[1]), (path[2],path[3]), ...
        for (std::size_t k = 1; k + 1 < path.size(); k += 2) m.remove(path[k]);
        for (std::size_t k = 0; k + 1 < path.size(); k += 2) m.add(path[k], path[k + 1]);
        improved = true;
      }
    }
  }
  return m;
}

}  // namespace vcspace

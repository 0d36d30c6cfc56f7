#include "vcspace/rsg.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>

namespace vcspace {

char state_code(NodeState s) {
  switch (s) {
    case NodeState::Unfrozen: return 'U';
    case NodeState::UncoveredBackbone: return 'P';
    case NodeState::CoveredBackbone: return 'N';
  }
  return '?';
}

char kind_code(EdgeKind k) { return k == EdgeKind::Double ? 'D' : 'S'; }

std::size_t Assignment::size() const {
  return static_cast<std::size_t>(std::count(covered.begin(), covered.end(), 1));
}

ReducedSolutionGraph::ReducedSolutionGraph(const Graph& host, const Matching& matching) {
  if (matching.node_count() != host.node_count() || !verify_matching(host, matching)) {
    throw GraphError("RSG: matching does not fit the host graph");
  }
  state_.assign(host.node_count(), NodeState::Unfrozen);
  edges_.assign(host.edges().begin(), host.edges().end());
  kind_.resize(edges_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto p = matching.partner(edges_[i].u);
    kind_[i] = p && *p == edges_[i].v ? EdgeKind::Double : EdgeKind::Single;
  }
  index_edges();
}

ReducedSolutionGraph ReducedSolutionGraph::from_parts(std::size_t node_count,
                                                      std::vector<NodeState> states,
                                                      std::vector<Edge> edges,
                                                      std::vector<EdgeKind> kinds) {
  if (states.size() != node_count || edges.size() != kinds.size()) {
    throw GraphError("RSG: inconsistent part sizes");
  }
  ReducedSolutionGraph r;
  r.state_ = std::move(states);
  r.edges_ = std::move(edges);
  r.kind_ = std::move(kinds);
  for (const Edge& e : r.edges_) {
    if (e.u == e.v || e.v >= node_count) throw GraphError("RSG: bad edge");
  }
  r.index_edges();
  return r;
}

void ReducedSolutionGraph::index_edges() {
  const std::size_t n = state_.size();
  adj_.assign(n, {});
  partner_.assign(n, Matching::kUnmatched);
  for (std::uint32_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    adj_[e.u].push_back({e.v, i});
    adj_[e.v].push_back({e.u, i});
    if (kind_[i] == EdgeKind::Double) {
      if (partner_[e.u] != Matching::kUnmatched || partner_[e.v] != Matching::kUnmatched) {
        throw GraphError("RSG: Double edges do not form a matching at edge (" +
                         std::to_string(e.u) + ", " + std::to_string(e.v) + ")");
      }
      partner_[e.u] = e.v;
      partner_[e.v] = e.u;
    }
  }
  for (auto& list : adj_) {
    std::sort(list.begin(), list.end(),
              [](const Incidence& a, const Incidence& b) { return a.neighbor < b.neighbor; });
    for (std::size_t k = 1; k < list.size(); ++k) {
      if (list[k].neighbor == list[k - 1].neighbor) throw GraphError("RSG: duplicate edge");
    }
  }
}

bool ReducedSolutionGraph::freeze(NodeId x, NodeState s) {
  if (state_[x] == s) return false;
  if (state_[x] != NodeState::Unfrozen) {
    throw PropagationConflict(x, "node " + std::to_string(x) +
                                     " forced both covered and uncovered");
  }
  state_[x] = s;
  return true;
}

bool ReducedSolutionGraph::has_edge(NodeId a, NodeId b) const {
  const auto& list = adj_[a];
  return std::any_of(list.begin(), list.end(), [&](const Incidence& i) { return i.neighbor == b; });
}

void ReducedSolutionGraph::add_single_edge(NodeId a, NodeId b) {
  if (a == b || a >= node_count() || b >= node_count()) throw GraphError("RSG: bad edge");
  if (has_edge(a, b)) throw GraphError("RSG: duplicate edge");
  const auto id = static_cast<std::uint32_t>(edges_.size());
  edges_.emplace_back(a, b);
  kind_.push_back(EdgeKind::Single);
  auto insert = [&](NodeId x, NodeId y) {
    auto& list = adj_[x];
    auto it = std::lower_bound(list.begin(), list.end(), y,
                               [](const Incidence& i, NodeId v) { return i.neighbor < v; });
    list.insert(it, Incidence{y, id});
  };
  insert(a, b);
  insert(b, a);
}

std::size_t ReducedSolutionGraph::min_cover_size() const {
  std::size_t doubles = 0;
  for (EdgeKind k : kind_) doubles += k == EdgeKind::Double ? 1 : 0;
  std::size_t lone_covered = 0;
  for (NodeId x = 0; x < state_.size(); ++x) {
    if (state_[x] == NodeState::CoveredBackbone && partner_[x] == Matching::kUnmatched) {
      ++lone_covered;
    }
  }
  return doubles + lone_covered;
}

Graph ReducedSolutionGraph::host_graph() const {
  GraphBuilder b(node_count());
  for (const Edge& e : edges_) b.add_edge(e.u, e.v);
  return std::move(b).build();
}

std::size_t freezing_influence(ReducedSolutionGraph& rsg) {
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> work;
  for (NodeId x = 0; x < rsg.node_count(); ++x) {
    if (rsg.state(x) != NodeState::Unfrozen) work.push(x);
  }
  std::size_t frozen = 0;
  while (!work.empty()) {
    const NodeId x = work.top();
    work.pop();
    if (rsg.state(x) == NodeState::UncoveredBackbone) {
      for (const auto& inc : rsg.incident(x)) {
        if (rsg.freeze(inc.neighbor, NodeState::CoveredBackbone)) {
          ++frozen;
          work.push(inc.neighbor);
        }
      }
    } else if (auto p = rsg.double_partner(x)) {
      if (rsg.freeze(*p, NodeState::UncoveredBackbone)) {
        ++frozen;
        work.push(*p);
      }
    }
  }
  return frozen;
}

ReducedSolutionGraph freezing_influence(const ReducedSolutionGraph& rsg) {
  ReducedSolutionGraph out = rsg;
  freezing_influence(out);
  return out;
}

namespace {

// Unit propagation of a single hypothesis on top of the frozen states.
class HypothesisProbe {
 public:
  explicit HypothesisProbe(const ReducedSolutionGraph& rsg)
      : rsg_(rsg), trial_(rsg.node_count(), NodeState::Unfrozen) {}

  // True iff assuming `x` has value `s` contradicts the constraints.
  bool fails(NodeId x, NodeState s) {
    bool conflict = !assign(x, s);
    while (!conflict && !stack_.empty()) {
      const NodeId y = stack_.back();
      stack_.pop_back();
      if (value(y) == NodeState::UncoveredBackbone) {
        for (const auto& inc : rsg_.incident(y)) {
          if (!assign(inc.neighbor, NodeState::CoveredBackbone)) {
            conflict = true;
            break;
          }
        }
      } else if (auto p = rsg_.double_partner(y)) {
        conflict = !assign(*p, NodeState::UncoveredBackbone);
      }
    }
    for (NodeId t : touched_) trial_[t] = NodeState::Unfrozen;
    touched_.clear();
    stack_.clear();
    return conflict;
  }

 private:
  NodeState value(NodeId x) const {
    const NodeState s = rsg_.state(x);
    return s != NodeState::Unfrozen ? s : trial_[x];
  }

  bool assign(NodeId x, NodeState s) {
    const NodeState cur = value(x);
    if (cur == s) return true;
    if (cur != NodeState::Unfrozen) return false;
    trial_[x] = s;
    touched_.push_back(x);
    stack_.push_back(x);
    return true;
  }

  const ReducedSolutionGraph& rsg_;
  std::vector<NodeState> trial_;
  std::vector<NodeId> touched_;
  std::vector<NodeId> stack_;
};

}  // namespace

std::size_t odd_cycle_breaking(ReducedSolutionGraph& rsg) {
  std::size_t frozen = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (NodeId x = 0; x < rsg.node_count(); ++x) {
      if (rsg.state(x) != NodeState::Unfrozen) continue;
      HypothesisProbe probe(rsg);
      const bool uncovered_fails = probe.fails(x, NodeState::UncoveredBackbone);
      const bool covered_fails = probe.fails(x, NodeState::CoveredBackbone);
      if (uncovered_fails && covered_fails) {
        throw PropagationConflict(x, "node " + std::to_string(x) +
                                         " admits neither value: structure is not König-consistent");
      }
      if (!uncovered_fails && !covered_fails) continue;
      rsg.freeze(x, uncovered_fails ? NodeState::CoveredBackbone : NodeState::UncoveredBackbone);
      frozen += 1 + freezing_influence(rsg);
      changed = true;
    }
  }
  return frozen;
}

ReducedSolutionGraph odd_cycle_breaking(const ReducedSolutionGraph& rsg) {
  ReducedSolutionGraph out = rsg;
  odd_cycle_breaking(out);
  return out;
}

ReducedSolutionGraph build_rsg_from_matching(const Graph& g, const Matching& m) {
  ReducedSolutionGraph rsg(g, m);
  for (NodeId x = 0; x < g.node_count(); ++x) {
    if (!m.is_matched(x)) rsg.freeze(x, NodeState::UncoveredBackbone);
  }
  freezing_influence(rsg);
  return rsg;
}

ReducedSolutionGraph build_rsg_bipartite(const Graph& g, const BipartitePartition& part) {
  const Matching m = max_bipartite_matching(g, part);
  try {
    return build_rsg_from_matching(g, m);
  } catch (const PropagationConflict& e) {
    throw std::logic_error(std::string("bipartite RSG propagation conflict (bug): ") + e.what());
  }
}

ReducedSolutionGraph build_rsg_bipartite_core(const Graph& g) {
  const PeelResult peel = leaf_removal(g);
  std::vector<bool> in_core(g.node_count(), false);
  for (NodeId x : peel.core_nodes) in_core[x] = true;
  const Graph core = g.induced(in_core);

  auto colored = check_bipartition(core);
  if (!std::holds_alternative<BipartitePartition>(colored)) throw NotBipartiteCore();
  const Matching core_matching = max_bipartite_matching(core, std::get<BipartitePartition>(colored));

  Matching m(g.node_count());
  for (const auto& [pendant, support] : peel.leaf_matchings) m.add(pendant, support);
  for (const Edge& e : core_matching.pairs()) m.add(e.u, e.v);

  ReducedSolutionGraph rsg = build_rsg_from_matching(g, m);
  while (odd_cycle_breaking(rsg) > 0) {
    freezing_influence(rsg);
  }
  return rsg;
}

std::vector<Assignment> consistent_assignments(const ReducedSolutionGraph& rsg,
                                               std::size_t limit) {
  const std::size_t n = rsg.node_count();
  std::vector<Assignment> out;
  // -1 unassigned, 0 uncovered, 1 covered
  std::vector<int> val(n, -1);

  auto compatible = [&](NodeId x) {
    for (const auto& inc : rsg.incident(x)) {
      const int other = val[inc.neighbor];
      if (other < 0) continue;
      if (rsg.kind(inc.edge) == EdgeKind::Double) {
        if (other == val[x]) return false;
      } else if (other == 0 && val[x] == 0) {
        return false;
      }
    }
    return true;
  };

  std::function<void(NodeId)> rec = [&](NodeId x) {
    if (x == n) {
      if (out.size() >= limit) {
        throw EnumerationLimit("consistent_assignments: more than " + std::to_string(limit));
      }
      Assignment a;
      a.covered.resize(n);
      for (std::size_t i = 0; i < n; ++i) a.covered[i] = static_cast<std::uint8_t>(val[i]);
      out.push_back(std::move(a));
      return;
    }
    const NodeState s = rsg.state(x);
    for (int v : {0, 1}) {
      if (s == NodeState::UncoveredBackbone && v == 1) continue;
      if (s == NodeState::CoveredBackbone && v == 0) continue;
      val[x] = v;
      if (compatible(x)) rec(x + 1);
    }
    val[x] = -1;
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

StateRatios state_ratios(const ReducedSolutionGraph& rsg) {
  StateRatios r;
  const std::size_t n = rsg.node_count();
  if (n == 0) return r;
  std::size_t plus = 0;
  std::size_t minus = 0;
  for (NodeState s : rsg.states()) {
    plus += s == NodeState::UncoveredBackbone ? 1 : 0;
    minus += s == NodeState::CoveredBackbone ? 1 : 0;
  }
  const auto dn = static_cast<double>(n);
  r.q_plus = static_cast<double>(plus) / dn;
  r.q_minus = static_cast<double>(minus) / dn;
  r.q_zero = static_cast<double>(n - plus - minus) / dn;
  return r;
}

void write_rsg(std::ostream& out, const ReducedSolutionGraph& rsg) {
  out << "rsg " << rsg.node_count() << ' ' << rsg.edge_count() << '\n';
  for (NodeId x = 0; x < rsg.node_count(); ++x) out << x << ' ' << state_code(rsg.state(x)) << '\n';
  for (std::size_t i = 0; i < rsg.edge_count(); ++i) {
    const Edge& e = rsg.edges()[i];
    out << e.u << ' ' << e.v << ' ' << kind_code(rsg.kind(i)) << '\n';
  }
}

ReducedSolutionGraph read_rsg(std::istream& in) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
  }
  auto fail = [](const std::string& what) -> GraphError { return GraphError("rsg file: " + what); };
  if (lines.empty()) throw fail("missing header");
  std::istringstream header(lines[0]);
  std::string tag;
  std::size_t n = 0;
  std::size_t m = 0;
  if (!(header >> tag >> n >> m) || tag != "rsg") throw fail("expected `rsg n m` header");
  if (lines.size() != 1 + n + m) throw fail("expected " + std::to_string(n + m) + " body lines");

  std::vector<NodeState> states(n, NodeState::Unfrozen);
  for (std::size_t i = 0; i < n; ++i) {
    std::istringstream row(lines[1 + i]);
    std::size_t id = 0;
    char code = 0;
    if (!(row >> id >> code) || id != i) throw fail("bad node line `" + lines[1 + i] + "`");
    switch (code) {
      case 'U': states[i] = NodeState::Unfrozen; break;
      case 'P': states[i] = NodeState::UncoveredBackbone; break;
      case 'N': states[i] = NodeState::CoveredBackbone; break;
      default: throw fail("unknown state `" + std::string(1, code) + "`");
    }
  }
  std::vector<Edge> edges;
  std::vector<EdgeKind> kinds;
  for (std::size_t i = 0; i < m; ++i) {
    std::istringstream row(lines[1 + n + i]);
    std::size_t u = 0;
    std::size_t v = 0;
    char code = 0;
    if (!(row >> u >> v >> code) || u >= n || v >= n || (code != 'S' && code != 'D')) {
      throw fail("bad edge line `" + lines[1 + n + i] + "`");
    }
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    kinds.push_back(code == 'D' ? EdgeKind::Double : EdgeKind::Single);
  }
  return ReducedSolutionGraph::from_parts(n, std::move(states), std::move(edges), std::move(kinds));
}

}  // namespace vcspace

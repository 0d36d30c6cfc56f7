#include "vcspace/ke_growth.hpp"

#include <algorithm>
#include <deque>
#include <ostream>
#include <random>
#include <stdexcept>

namespace vcspace {

namespace {

constexpr std::uint8_t kUndecided = 2;

// Orients each matched pair, in BFS order over pairs, so that it crosses as
// many edges to already placed nodes as possible. Unmatched nodes sit on X1.
std::vector<std::uint8_t> assign_sides(const Graph& g, const Matching& m) {
  const std::size_t n = g.node_count();
  std::vector<std::uint8_t> side(n, kUndecided);
  for (NodeId x = 0; x < n; ++x) {
    if (!m.is_matched(x)) side[x] = 0;
  }
  auto crossing = [&](NodeId x, std::uint8_t s) {
    std::size_t count = 0;
    for (NodeId y : g.neighbors(x)) count += side[y] != kUndecided && side[y] != s ? 1 : 0;
    return count;
  };
  std::deque<NodeId> queue;
  for (NodeId start = 0; start < n; ++start) {
    if (side[start] != kUndecided) continue;
    queue.push_back(start);
    while (!queue.empty()) {
      const NodeId a = queue.front();
      queue.pop_front();
      if (side[a] != kUndecided) continue;
      const NodeId b = *m.partner(a);
      const NodeId lo = std::min(a, b);
      const NodeId hi = std::max(a, b);
      const std::size_t keep = crossing(lo, 0) + crossing(hi, 1);
      const std::size_t flip = crossing(lo, 1) + crossing(hi, 0);
      side[lo] = keep >= flip ? 0 : 1;
      side[hi] = 1 - side[lo];
      for (NodeId x : {lo, hi}) {
        for (NodeId y : g.neighbors(x)) {
          if (side[y] == kUndecided) queue.push_back(y);
        }
      }
    }
  }
  return side;
}

void run_propagation(ReducedSolutionGraph& rsg) {
  freezing_influence(rsg);
  while (odd_cycle_breaking(rsg) > 0) freezing_influence(rsg);
}

}  // namespace

KEGrowthState bipartite_seed(const Graph& g) {
  const std::size_t n = g.node_count();
  const Matching m = greedy_augmenting_matching(g);
  const auto side = assign_sides(g, m);

  KEGrowthState state;
  state.node_count = n;
  state.seed_partition.side_of.resize(n);
  for (NodeId x = 0; x < n; ++x) {
    state.seed_partition.side_of[x] = side[x] == 0 ? Side::X1 : Side::X2;
    (side[x] == 0 ? state.seed_partition.n1 : state.seed_partition.n2) += 1;
  }

  GraphBuilder seed(n);
  for (const Edge& e : g.edges()) {
    if (side[e.u] != side[e.v]) {
      seed.add_edge(e.u, e.v);
      state.accepted.push_back(e);
    } else {
      state.pending.push_back(e);
    }
  }
  const Graph gb = std::move(seed).build();
  state.rsg = build_rsg_bipartite(gb, state.seed_partition);
  state.seed_matching_size = state.rsg.min_cover_size();
  return state;
}

GrowOutcome grow_step(KEGrowthState& state, Edge e) {
  const auto it = std::find(state.pending.begin(), state.pending.end(), e);
  if (it == state.pending.end()) {
    throw std::invalid_argument("grow_step: edge (" + std::to_string(e.u) + ", " +
                                std::to_string(e.v) + ") is not pending");
  }
  state.pending.erase(it);

  ReducedSolutionGraph& rsg = state.rsg;
  const NodeState su = rsg.state(e.u);
  const NodeState sv = rsg.state(e.v);
  auto is = [](NodeState s, NodeState t) { return s == t; };
  try {
    if (is(su, NodeState::CoveredBackbone) || is(sv, NodeState::CoveredBackbone)) {
      rsg.add_single_edge(e.u, e.v);
      state.accepted.push_back(e);
      return GrowOutcome::AcceptedCovered;
    }
    if (is(su, NodeState::UncoveredBackbone) && is(sv, NodeState::UncoveredBackbone)) {
      state.discarded.push_back(e);
      return GrowOutcome::Discarded;
    }
    rsg.add_single_edge(e.u, e.v);
    state.accepted.push_back(e);
    if (is(su, NodeState::UncoveredBackbone) || is(sv, NodeState::UncoveredBackbone)) {
      rsg.freeze(is(su, NodeState::Unfrozen) ? e.u : e.v, NodeState::CoveredBackbone);
      run_propagation(rsg);
      return GrowOutcome::AcceptedFreeze;
    }
    const std::size_t frozen = odd_cycle_breaking(rsg);
    freezing_influence(rsg);
    if (frozen > 0) ++state.contractions;
    return GrowOutcome::AcceptedUnfrozen;
  } catch (const PropagationConflict& err) {
    throw std::logic_error(std::string("KE growth lost the König–Egerváry property: ") +
                           err.what());
  }
}

KEGrowthState grow_all(const Graph& g, EdgeOrder order, std::uint64_t seed) {
  KEGrowthState state = bipartite_seed(g);
  if (order == EdgeOrder::Shuffled) {
    std::mt19937_64 rng(seed);
    std::shuffle(state.pending.begin(), state.pending.end(), rng);
  }
  while (!state.pending.empty()) grow_step(state, state.pending.front());
  return state;
}

Graph accepted_graph(const KEGrowthState& state) {
  GraphBuilder b(state.node_count);
  for (const Edge& e : state.accepted) b.add_edge(e.u, e.v);
  return std::move(b).build();
}

KECertificate ke_certificate(const KEGrowthState& state) {
  KECertificate cert;
  const Graph gke = accepted_graph(state);
  const std::size_t n = state.node_count;

  cert.matching = Matching(n);
  for (NodeId x = 0; x < n; ++x) {
    if (auto p = state.rsg.double_partner(x); p && x < *p) cert.matching.add(x, *p);
  }
  cert.matching_size = cert.matching.size();

  // Fix unfrozen nodes one at a time; propagation keeps the rest extendable.
  ReducedSolutionGraph r = state.rsg;
  bool consistent = true;
  try {
    for (NodeId x = 0; x < n; ++x) {
      if (r.state(x) != NodeState::Unfrozen) continue;
      r.freeze(x, NodeState::CoveredBackbone);
      run_propagation(r);
    }
  } catch (const PropagationConflict&) {
    consistent = false;
  }
  cert.cover.covered.assign(n, 0);
  for (NodeId x = 0; x < n; ++x) {
    cert.cover.covered[x] = r.state(x) == NodeState::CoveredBackbone ? 1 : 0;
  }
  cert.cover_size = cert.cover.size();

  bool covers = consistent;
  for (const Edge& e : gke.edges()) {
    covers = covers && (cert.cover.covered[e.u] != 0 || cert.cover.covered[e.v] != 0);
  }
  cert.ok = covers && verify_matching(gke, cert.matching) && cert.matching_size == cert.cover_size;
  return cert;
}

void write_ke_report(std::ostream& out, const KEGrowthState& state, const KECertificate& cert) {
  for (const Edge& e : state.accepted) out << "accepted " << e.u << ' ' << e.v << '\n';
  for (const Edge& e : state.discarded) out << "discarded " << e.u << ' ' << e.v << '\n';
  out << "contractions " << state.contractions << '\n';
  out << (cert.ok ? "ke_ok" : "ke_fail") << " matching=" << cert.matching_size
      << " cover=" << cert.cover_size << '\n';
}

}  // namespace vcspace

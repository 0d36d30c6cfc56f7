#include "vcspace/core_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <tuple>

namespace vcspace {

double log2_count(const BigCount& count) {
  if (count <= 0) return -std::numeric_limits<double>::infinity();
  const std::size_t msb = boost::multiprecision::msb(count);
  if (msb < 53) return std::log2(count.convert_to<double>());
  // Keep the top 53 bits and account for the shift separately.
  const BigCount top = count >> (msb - 52);
  return std::log2(top.convert_to<double>()) + static_cast<double>(msb - 52);
}

namespace {

constexpr NodeId kNone = std::numeric_limits<NodeId>::max();

// Unfrozen partner of each unfrozen node; throws if the RSG is not closed
// under propagation.
std::vector<NodeId> unfrozen_partners(const ReducedSolutionGraph& rsg) {
  std::vector<NodeId> partner(rsg.node_count(), kNone);
  for (NodeId x = 0; x < rsg.node_count(); ++x) {
    const NodeState s = rsg.state(x);
    if (s == NodeState::UncoveredBackbone) {
      for (const auto& inc : rsg.incident(x)) {
        if (rsg.state(inc.neighbor) != NodeState::CoveredBackbone) {
          throw std::invalid_argument("RSG not propagated: uncovered backbone " +
                                      std::to_string(x) + " has an uncovered neighbor");
        }
      }
    }
    if (s != NodeState::Unfrozen) continue;
    const auto p = rsg.double_partner(x);
    if (!p || rsg.state(*p) != NodeState::Unfrozen) {
      throw std::invalid_argument("RSG not propagated: unfrozen node " + std::to_string(x) +
                                  " lacks an unfrozen Double partner");
    }
    partner[x] = *p;
  }
  return partner;
}

}  // namespace

UnfrozenCore unfrozen_core(const ReducedSolutionGraph& rsg) {
  const std::size_t n = rsg.node_count();
  const auto partner = unfrozen_partners(rsg);

  // Pair id = smaller end.
  auto pair_of = [&](NodeId x) { return std::min(x, partner[x]); };
  std::vector<bool> alive(n, false);
  std::vector<std::size_t> degree(n, 0);
  std::vector<std::map<NodeId, std::size_t>> pair_links(n);  // keyed by pair id
  for (NodeId x = 0; x < n; ++x) {
    if (partner[x] == kNone) continue;
    alive[x] = true;
    for (const auto& inc : rsg.incident(x)) {
      const NodeId y = inc.neighbor;
      if (partner[y] == kNone) continue;
      ++degree[x];
      if (pair_of(y) != pair_of(x)) ++pair_links[pair_of(x)][pair_of(y)];
    }
  }

  auto peelable = [&](NodeId pair) {
    return degree[pair] <= 1 || degree[partner[pair]] <= 1 || pair_links[pair].size() <= 1;
  };

  std::deque<NodeId> queue;
  std::vector<bool> queued(n, false);
  for (NodeId x = 0; x < n; ++x) {
    if (alive[x] && pair_of(x) == x && peelable(x)) {
      queue.push_back(x);
      queued[x] = true;
    }
  }
  while (!queue.empty()) {
    const NodeId pair = queue.front();
    queue.pop_front();
    queued[pair] = false;
    if (!alive[pair] || !peelable(pair)) continue;
    for (NodeId end : {pair, partner[pair]}) alive[end] = false;
    for (NodeId end : {pair, partner[pair]}) {
      for (const auto& inc : rsg.incident(end)) {
        const NodeId y = inc.neighbor;
        if (!alive[y]) continue;
        --degree[y];
        const NodeId other = pair_of(y);
        auto it = pair_links[other].find(pair);
        if (it != pair_links[other].end() && --it->second == 0) pair_links[other].erase(it);
        if (!queued[other] && peelable(other)) {
          queue.push_back(other);
          queued[other] = true;
        }
      }
    }
  }

  UnfrozenCore core;
  for (NodeId x = 0; x < n; ++x) {
    if (alive[x]) core.nodes.push_back(x);
  }
  for (std::size_t i = 0; i < rsg.edge_count(); ++i) {
    const Edge& e = rsg.edges()[i];
    if (alive[e.u] && alive[e.v]) {
      core.edges.push_back(e);
      core.kinds.push_back(rsg.kind(i));
    }
  }
  return core;
}

ReducedSolutionGraph core_subgraph(const ReducedSolutionGraph& rsg, const UnfrozenCore& core) {
  std::vector<NodeId> local(rsg.node_count(), kNone);
  for (std::size_t i = 0; i < core.nodes.size(); ++i) local[core.nodes[i]] = static_cast<NodeId>(i);
  std::vector<Edge> edges;
  for (const Edge& e : core.edges) edges.emplace_back(local[e.u], local[e.v]);
  return ReducedSolutionGraph::from_parts(core.nodes.size(),
                                          std::vector<NodeState>(core.nodes.size(), NodeState::Unfrozen),
                                          std::move(edges), core.kinds);
}

namespace {

// Iterative Tarjan SCC over an adjacency list. Returns component id per
// vertex (ids in reverse topological order).
std::vector<std::uint32_t> strongly_connected(const std::vector<std::vector<NodeId>>& arcs,
                                              std::uint32_t& count) {
  const std::size_t n = arcs.size();
  constexpr auto kUnvisited = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> index(n, kUnvisited), low(n, 0), comp(n, kUnvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<NodeId> stack;
  std::vector<std::pair<NodeId, std::size_t>> call;
  std::uint32_t next_index = 0;
  count = 0;
  for (NodeId root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.emplace_back(root, 0);
    while (!call.empty()) {
      auto& [v, i] = call.back();
      if (i == 0 && index[v] == kUnvisited) {
        index[v] = low[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      if (i < arcs[v].size()) {
        const NodeId w = arcs[v][i++];
        if (index[w] == kUnvisited) {
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        NodeId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = count;
        } while (w != v);
        ++count;
      }
      const NodeId done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
    }
  }
  return comp;
}

// One round of merging: contracts every strongly connected class of the
// "covered(a) implies covered(b)" graph on unfrozen nodes.
SimplifiedRSG merge_round(const ReducedSolutionGraph& rsg) {
  const std::size_t n = rsg.node_count();
  const auto partner = unfrozen_partners(rsg);

  // Single edge u-v: uncovered u forces v covered, i.e. covered(partner u) => covered(v).
  std::vector<std::vector<NodeId>> arcs(n);
  for (std::size_t i = 0; i < rsg.edge_count(); ++i) {
    if (rsg.kind(i) != EdgeKind::Single) continue;
    const Edge& e = rsg.edges()[i];
    if (partner[e.u] == kNone || partner[e.v] == kNone) continue;
    arcs[partner[e.u]].push_back(e.v);
    arcs[partner[e.v]].push_back(e.u);
  }
  std::uint32_t comp_count = 0;
  const auto comp = strongly_connected(arcs, comp_count);

  std::vector<std::size_t> comp_size(comp_count, 0);
  for (NodeId x = 0; x < n; ++x) ++comp_size[comp[x]];
  for (NodeId x = 0; x < n; ++x) {
    if (partner[x] != kNone && comp[x] == comp[partner[x]]) {
      throw GraphError("cycle simplification: node " + std::to_string(x) +
                       " is forced equal to its own Double partner");
    }
  }

  // New ids in order of smallest member; singleton classes keep their node.
  std::vector<NodeId> comp_new(comp_count, kNone);
  SimplifiedRSG out;
  out.merge_map.assign(n, kNone);
  std::vector<NodeState> states;
  NodeId next = 0;
  for (NodeId x = 0; x < n; ++x) {
    if (comp_new[comp[x]] == kNone) {
      comp_new[comp[x]] = next++;
      states.push_back(rsg.state(x));
      if (comp_size[comp[x]] > 1) ++out.merged_cycles;
    }
    out.merge_map[x] = comp_new[comp[x]];
  }
  out.merged_cycles /= 2;  // classes come in mirror pairs

  std::map<Edge, EdgeKind> merged;
  for (std::size_t i = 0; i < rsg.edge_count(); ++i) {
    const Edge& e = rsg.edges()[i];
    const NodeId a = out.merge_map[e.u];
    const NodeId b = out.merge_map[e.v];
    if (a == b) {
      throw GraphError("cycle simplification: edge (" + std::to_string(e.u) + ", " +
                       std::to_string(e.v) + ") collapses to a self-edge");
    }
    const Edge key(a, b);
    const EdgeKind k = rsg.kind(i);
    auto [it, inserted] = merged.emplace(key, k);
    if (!inserted && k == EdgeKind::Double) it->second = EdgeKind::Double;
  }

  // Any Single edge parallel to a Double pair is a tautology and was absorbed
  // above. Check the Double edges still form a matching.
  std::vector<Edge> edges;
  std::vector<EdgeKind> kinds;
  std::vector<NodeId> dpartner(next, kNone);
  for (const auto& [e, k] : merged) {
    if (k == EdgeKind::Double) {
      if ((dpartner[e.u] != kNone && dpartner[e.u] != e.v) ||
          (dpartner[e.v] != kNone && dpartner[e.v] != e.u)) {
        throw GraphError("cycle simplification: conflicting Double edges at super-node " +
                         std::to_string(dpartner[e.u] != kNone ? e.u : e.v));
      }
      dpartner[e.u] = e.v;
      dpartner[e.v] = e.u;
    }
    edges.push_back(e);
    kinds.push_back(k);
  }
  out.rsg = ReducedSolutionGraph::from_parts(next, std::move(states), std::move(edges),
                                             std::move(kinds));
  return out;
}

}  // namespace

Assignment SimplifiedRSG::expand(const Assignment& simplified) const {
  Assignment a;
  a.covered.resize(merge_map.size());
  for (std::size_t x = 0; x < merge_map.size(); ++x) a.covered[x] = simplified.covered[merge_map[x]];
  return a;
}

SimplifiedRSG cycle_simplification(const ReducedSolutionGraph& rsg) {
  SimplifiedRSG total = merge_round(rsg);
  while (true) {
    SimplifiedRSG again = merge_round(total.rsg);
    if (again.merged_cycles == 0) break;
    for (auto& m : total.merge_map) m = again.merge_map[m];
    total.merged_cycles += again.merged_cycles;
    total.rsg = std::move(again.rsg);
  }
  return total;
}

namespace {

// Factor over binary variables. Table index bit k holds the value of scope[k].
struct Factor {
  std::vector<std::uint32_t> scope;
  std::vector<BigCount> table;
};

class EliminationCounter {
 public:
  EliminationCounter(const ReducedSolutionGraph& rsg, const CountLimits& limits) : limits_(limits) {
    build(rsg);
  }

  BigCount count() {
    if (infeasible_) return 0;
    binary_of_.assign(var_count_, {});
    for (std::size_t i = var_count_; i < factors_.size(); ++i) {
      for (std::uint32_t v : factors_[i].scope) binary_of_[v].push_back(i);
    }
    domain_.assign(var_count_, 0);
    std::vector<std::uint32_t> fixed;
    for (std::uint32_t v = 0; v < var_count_; ++v) {
      const auto& t = factors_[v].table;
      domain_[v] = static_cast<std::uint8_t>((t[0] != 0 ? 1 : 0) | (t[1] != 0 ? 2 : 0));
      if (domain_[v] == 0) return 0;
      if (domain_[v] != 3) fixed.push_back(v);
    }
    if (!propagate(fixed)) return 0;
    std::vector<std::uint32_t> free;
    for (std::uint32_t v = 0; v < var_count_; ++v) {
      if (domain_[v] == 3) free.push_back(v);
    }
    BigCount total = 1;
    for (const auto& component : components(free)) {
      total *= solve(component);
      if (total == 0) break;
    }
    return total;
  }

 private:
  // Value pair (va, vb) allowed by binary factor i, with a and b in any order.
  bool allows(std::size_t i, std::uint32_t a, int va, int vb) const {
    const Factor& f = factors_[i];
    const int lo = f.scope[0] == a ? va : vb;
    const int hi = f.scope[0] == a ? vb : va;
    return f.table[static_cast<std::size_t>(lo | (hi << 1))] != 0;
  }

  std::uint32_t other(std::size_t i, std::uint32_t v) const {
    return factors_[i].scope[0] == v ? factors_[i].scope[1] : factors_[i].scope[0];
  }

  void narrow(std::uint32_t v, std::uint8_t d) {
    trail_.emplace_back(v, domain_[v]);
    domain_[v] = d;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      domain_[trail_.back().first] = trail_.back().second;
      trail_.pop_back();
    }
  }

  // Arc consistency from newly fixed variables. False on a wipe-out.
  bool propagate(std::vector<std::uint32_t> queue) {
    while (!queue.empty()) {
      const std::uint32_t v = queue.back();
      queue.pop_back();
      const int value = domain_[v] == 2 ? 1 : 0;
      for (std::size_t i : binary_of_[v]) {
        const std::uint32_t u = other(i, v);
        std::uint8_t d = 0;
        for (int vu : {0, 1}) {
          if ((domain_[u] >> vu & 1) && allows(i, v, value, vu)) d |= static_cast<std::uint8_t>(1 << vu);
        }
        if (d == domain_[u]) continue;
        if (d == 0) return false;
        narrow(u, d);
        queue.push_back(u);
      }
    }
    return true;
  }

  // Connected components of `vars` (all free) over binary factors, each sorted.
  std::vector<std::vector<std::uint32_t>> components(const std::vector<std::uint32_t>& vars) {
    std::vector<std::vector<std::uint32_t>> out;
    std::set<std::uint32_t> left(vars.begin(), vars.end());
    while (!left.empty()) {
      std::vector<std::uint32_t> comp{*left.begin()};
      left.erase(left.begin());
      for (std::size_t k = 0; k < comp.size(); ++k) {
        for (std::size_t i : binary_of_[comp[k]]) {
          const std::uint32_t u = other(i, comp[k]);
          if (domain_[u] == 3 && left.erase(u) != 0) comp.push_back(u);
        }
      }
      std::sort(comp.begin(), comp.end());
      out.push_back(std::move(comp));
    }
    return out;
  }

  // Count of one component of free variables. Every constraint touching it
  // from outside is already satisfied, so the result depends on the variable
  // set alone and is cached on it.
  BigCount solve(const std::vector<std::uint32_t>& vars) {
    if (vars.size() == 1) return 2;
    if (const auto it = cache_.find(vars); it != cache_.end()) return it->second;

    std::map<std::uint32_t, std::set<std::uint32_t>> nbr;
    std::vector<std::size_t> inner;
    for (std::uint32_t v : vars) {
      nbr[v];
      for (std::size_t i : binary_of_[v]) {
        const std::uint32_t u = other(i, v);
        if (domain_[u] != 3) continue;
        nbr[v].insert(u);
        if (v < u) inner.push_back(i);
      }
    }
    BigCount total = 0;
    if (auto order = elimination_order(nbr, limits_.max_table_width)) {
      total = eliminate_component(vars, inner, *order);
    } else {
      std::uint32_t pivot = vars.front();
      for (std::uint32_t v : vars) {
        if (nbr[v].size() > nbr[pivot].size()) pivot = v;
      }
      for (int value : {0, 1}) {
        if (++branches_ > limits_.max_branches) {
          throw CountIntractable("count intractable: more than " + std::to_string(limits_.max_branches) +
                                 " branches");
        }
        const std::size_t mark = trail_.size();
        narrow(pivot, static_cast<std::uint8_t>(1 << value));
        if (propagate({pivot})) {
          std::vector<std::uint32_t> rest;
          for (std::uint32_t v : vars) {
            if (domain_[v] == 3) rest.push_back(v);
          }
          BigCount sub = 1;
          for (const auto& component : components(rest)) {
            sub *= solve(component);
            if (sub == 0) break;
          }
          total += sub;
        }
        undo(mark);
      }
    }
    cache_.emplace(vars, total);
    return total;
  }

  // Literal: node x covered <=> var(x) has value pol(x).
  void build(const ReducedSolutionGraph& rsg) {
    const std::size_t n = rsg.node_count();
    var_of_.assign(n, kNone);
    pol_.assign(n, 1);
    for (NodeId x = 0; x < n; ++x) {
      if (rsg.state(x) != NodeState::Unfrozen || var_of_[x] != kNone) continue;
      const auto p = rsg.double_partner(x);
      var_of_[x] = var_count_;
      pol_[x] = 1;
      if (p && rsg.state(*p) == NodeState::Unfrozen) {
        var_of_[*p] = var_count_;
        pol_[*p] = 0;
      }
      ++var_count_;
    }
    for (std::uint32_t v = 0; v < var_count_; ++v) {
      factors_.push_back(Factor{{v}, {BigCount(1), BigCount(1)}});
    }
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> binary;

    auto frozen_covered = [&](NodeId x) { return rsg.state(x) == NodeState::CoveredBackbone; };
    auto force = [&](NodeId x, bool covered) {
      // Node x must take value `covered`.
      const std::uint32_t v = var_of_[x];
      const int allowed = covered ? pol_[x] : 1 - pol_[x];
      factors_[v].table[1 - allowed] = 0;
    };

    for (std::size_t i = 0; i < rsg.edge_count(); ++i) {
      const Edge& e = rsg.edges()[i];
      const bool du = rsg.state(e.u) == NodeState::Unfrozen;
      const bool dv = rsg.state(e.v) == NodeState::Unfrozen;
      const bool is_double = rsg.kind(i) == EdgeKind::Double;
      if (!du && !dv) {
        const bool cu = frozen_covered(e.u);
        const bool cv = frozen_covered(e.v);
        if (is_double ? cu == cv : !(cu || cv)) infeasible_ = true;
        continue;
      }
      if (du != dv) {
        const NodeId free = du ? e.u : e.v;
        const bool fixed_covered = frozen_covered(du ? e.v : e.u);
        if (is_double) {
          force(free, !fixed_covered);
        } else if (!fixed_covered) {
          force(free, true);
        }
        continue;
      }
      if (is_double && var_of_[e.u] == var_of_[e.v]) continue;  // the pair itself
      const std::uint32_t a = var_of_[e.u];
      const std::uint32_t b = var_of_[e.v];
      // Allowed combinations of (value of a, value of b).
      auto allowed = [&](int va, int vb) {
        const bool cu = va == pol_[e.u];
        const bool cv = vb == pol_[e.v];
        return is_double ? cu != cv : (cu || cv);
      };
      if (a == b) {
        for (int va : {0, 1}) {
          if (!allowed(va, va)) factors_[a].table[va] = 0;
        }
        continue;
      }
      const auto key = std::minmax(a, b);
      auto it = binary.find({key.first, key.second});
      if (it == binary.end()) {
        it = binary.emplace(std::pair{key.first, key.second}, factors_.size()).first;
        factors_.push_back(Factor{{key.first, key.second}, std::vector<BigCount>(4, BigCount(1))});
      }
      auto& table = factors_[it->second].table;
      for (int va : {0, 1}) {
        for (int vb : {0, 1}) {
          if (allowed(va, vb)) continue;
          const int lo = a == key.first ? va : vb;
          const int hi = a == key.first ? vb : va;
          table[lo | (hi << 1)] = 0;
        }
      }
    }
  }

  // Greedy min-fill order (ties by degree, then index) on the interaction
  // graph of one component; nullopt once a step would exceed `max_width`.
  static std::optional<std::vector<std::uint32_t>> elimination_order(
      std::map<std::uint32_t, std::set<std::uint32_t>> nbr, std::size_t max_width) {
    auto fill = [&](std::uint32_t v) {
      const auto& n = nbr[v];
      std::size_t missing = 0;
      for (auto a = n.begin(); a != n.end(); ++a) {
        for (auto b = std::next(a); b != n.end(); ++b) {
          if (!nbr[*a].contains(*b)) ++missing;
        }
      }
      return missing;
    };
    using Key = std::tuple<std::size_t, std::size_t, std::uint32_t>;
    std::set<Key> queue;
    std::map<std::uint32_t, Key> key_of;
    auto rekey = [&](std::uint32_t v) {
      if (auto it = key_of.find(v); it != key_of.end()) queue.erase(it->second);
      const Key k{fill(v), nbr[v].size(), v};
      key_of[v] = k;
      queue.insert(k);
    };
    for (const auto& [v, n] : nbr) rekey(v);

    std::vector<std::uint32_t> order;
    order.reserve(nbr.size());
    while (!queue.empty()) {
      const std::uint32_t v = std::get<2>(*queue.begin());
      queue.erase(queue.begin());
      key_of.erase(v);
      const std::vector<std::uint32_t> scope(nbr[v].begin(), nbr[v].end());
      if (scope.size() > max_width) return std::nullopt;
      order.push_back(v);
      std::set<std::uint32_t> touched;
      for (std::uint32_t w : scope) {
        nbr[w].erase(v);
        for (std::uint32_t u : scope) {
          if (u != w) nbr[w].insert(u);
        }
      }
      nbr.erase(v);
      for (std::uint32_t w : scope) {
        touched.insert(w);
        touched.insert(nbr[w].begin(), nbr[w].end());
      }
      for (std::uint32_t w : touched) rekey(w);
    }
    return order;
  }

  // Variable elimination over free variables `vars` and binary factors
  // `factor_ids`, in the given order.
  BigCount eliminate_component(const std::vector<std::uint32_t>& vars,
                               const std::vector<std::size_t>& factor_ids,
                               const std::vector<std::uint32_t>& order) {
    std::vector<Factor> pool;
    std::map<std::uint32_t, std::set<std::size_t>> holding;  // var -> live factor ids
    std::map<std::uint32_t, std::set<std::uint32_t>> nbr;
    for (std::uint32_t v : vars) {
      holding[v];
      nbr[v];
    }
    auto add_factor = [&](Factor f) {
      const std::size_t id = pool.size();
      for (std::uint32_t v : f.scope) {
        holding[v].insert(id);
        for (std::uint32_t w : f.scope) {
          if (w != v) nbr[v].insert(w);
        }
      }
      pool.push_back(std::move(f));
    };
    for (std::size_t i : factor_ids) add_factor(factors_[i]);

    BigCount scalar = 1;
    for (const std::uint32_t v : order) {
      std::vector<std::uint32_t> scope(nbr[v].begin(), nbr[v].end());
      std::vector<std::size_t> ids(holding[v].begin(), holding[v].end());
      Factor merged{scope, std::vector<BigCount>(std::size_t{1} << scope.size(), BigCount(0))};

      // Position of each factor variable inside `scope` (or -1 for v).
      std::vector<std::vector<int>> position(ids.size());
      for (std::size_t f = 0; f < ids.size(); ++f) {
        for (std::uint32_t w : pool[ids[f]].scope) {
          if (w == v) {
            position[f].push_back(-1);
          } else {
            position[f].push_back(static_cast<int>(
                std::lower_bound(scope.begin(), scope.end(), w) - scope.begin()));
          }
        }
      }
      for (std::size_t assign = 0; assign < merged.table.size(); ++assign) {
        BigCount sum = 0;
        for (int value : {0, 1}) {
          BigCount prod = 1;
          for (std::size_t f = 0; f < ids.size() && prod != 0; ++f) {
            std::size_t idx = 0;
            for (std::size_t k = 0; k < position[f].size(); ++k) {
              const int pos = position[f][k];
              const std::size_t bit = pos < 0 ? static_cast<std::size_t>(value) : (assign >> pos) & 1u;
              idx |= bit << k;
            }
            prod *= pool[ids[f]].table[idx];
          }
          sum += prod;
        }
        merged.table[assign] = std::move(sum);
      }

      // Retire v and its factors; neighbors become a clique.
      for (std::size_t id : ids) {
        for (std::uint32_t w : pool[id].scope) {
          if (w != v) holding[w].erase(id);
        }
        pool[id].table.clear();
        pool[id].table.shrink_to_fit();
      }
      for (std::uint32_t w : scope) nbr[w].erase(v);
      holding.erase(v);
      nbr.erase(v);
      if (scope.empty()) {
        scalar *= merged.table[0];
      } else {
        add_factor(std::move(merged));
      }
      if (scalar == 0) return 0;
    }
    return scalar;
  }

  std::vector<std::uint32_t> var_of_;
  std::vector<int> pol_;
  std::uint32_t var_count_ = 0;
  std::vector<Factor> factors_;
  bool infeasible_ = false;
  CountLimits limits_;
  std::vector<std::vector<std::size_t>> binary_of_;
  std::vector<std::uint8_t> domain_;  // bit k set: value k still allowed
  std::vector<std::pair<std::uint32_t, std::uint8_t>> trail_;
  std::map<std::vector<std::uint32_t>, BigCount> cache_;
  std::size_t branches_ = 0;
};

}  // namespace

BigCount count_consistent(const ReducedSolutionGraph& rsg, const CountLimits& limits) {
  return EliminationCounter(rsg, limits).count();
}

double CountResult::entropy() const {
  if (!solution_count || node_count == 0) return 0.0;
  return log2_count(*solution_count) / static_cast<double>(node_count);
}

double CountResult::core_entropy() const {
  if (!core_count || node_count == 0) return 0.0;
  return log2_count(*core_count) / static_cast<double>(node_count);
}

CountResult count_core_solutions(const ReducedSolutionGraph& rsg, const UnfrozenCore& core,
                                 std::size_t n_total) {
  CountResult out;
  out.node_count = n_total;
  if (core.empty()) {
    out.core_count = 1;
    return out;
  }
  const ReducedSolutionGraph sub = core_subgraph(rsg, core);
  out.core_count = count_consistent(cycle_simplification(sub).rsg);
  return out;
}

CountResult count_solutions(const ReducedSolutionGraph& rsg) {
  CountResult out = count_core_solutions(rsg, unfrozen_core(rsg), rsg.node_count());
  out.solution_count = count_consistent(cycle_simplification(rsg).rsg);
  return out;
}

}  // namespace vcspace

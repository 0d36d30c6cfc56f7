#include "vcspace/oracle.hpp"

#include <algorithm>
#include <limits>

namespace vcspace {

namespace {

class CoverSearch {
 public:
  CoverSearch(const Graph& g, std::size_t limit)
      : g_(g), limit_(limit), val_(g.node_count(), kFree) {}

  MinCoverSet run() {
    best_ = g_.node_count();
    search(0);
    MinCoverSet out;
    out.size = best_;
    out.covers = std::move(found_);
    std::sort(out.covers.begin(), out.covers.end());
    return out;
  }

 private:
  static constexpr int kFree = -1;
  static constexpr int kOut = 0;
  static constexpr int kIn = 1;

  void search(std::size_t taken) {
    if (taken > best_) return;
    // First edge (in sorted order) with no end in the cover.
    const Edge* open = nullptr;
    for (const Edge& e : g_.edges()) {
      if (val_[e.u] != kIn && val_[e.v] != kIn) {
        open = &e;
        break;
      }
    }
    if (open == nullptr) {
      record(taken);
      return;
    }
    const NodeId u = val_[open->u] == kOut ? open->v : open->u;
    if (val_[u] == kOut) return;  // both ends excluded

    // Branch 1: u in the cover.
    val_[u] = kIn;
    search(taken + 1);

    // Branch 2: u excluded, every neighbor of u in the cover.
    val_[u] = kOut;
    std::vector<NodeId> added;
    bool ok = true;
    for (NodeId w : g_.neighbors(u)) {
      if (val_[w] == kOut) {
        ok = false;
        break;
      }
      if (val_[w] == kFree) {
        val_[w] = kIn;
        added.push_back(w);
      }
    }
    if (ok) search(taken + added.size());
    for (NodeId w : added) val_[w] = kFree;
    val_[u] = kFree;
  }

  void record(std::size_t taken) {
    if (taken < best_) {
      best_ = taken;
      found_.clear();
    }
    if (found_.size() >= limit_) {
      throw EnumerationLimit("brute_force_min_covers: more than " + std::to_string(limit_) +
                             " minimum covers");
    }
    Assignment a;
    a.covered.resize(val_.size());
    for (std::size_t i = 0; i < val_.size(); ++i) a.covered[i] = val_[i] == kIn ? 1 : 0;
    found_.push_back(std::move(a));
  }

  const Graph& g_;
  std::size_t limit_;
  std::vector<int> val_;
  std::size_t best_ = 0;
  std::vector<Assignment> found_;
};

}  // namespace

MinCoverSet brute_force_min_covers(const Graph& g, std::size_t limit) {
  return CoverSearch(g, limit).run();
}

std::vector<NodeState> states_from_covers(const MinCoverSet& covers, std::size_t node_count) {
  std::vector<NodeState> out(node_count, NodeState::Unfrozen);
  if (covers.covers.empty()) return out;
  for (std::size_t x = 0; x < node_count; ++x) {
    bool always = true;
    bool never = true;
    for (const auto& a : covers.covers) {
      always = always && a.covered[x] == 1;
      never = never && a.covered[x] == 0;
    }
    if (always) out[x] = NodeState::CoveredBackbone;
    if (never) out[x] = NodeState::UncoveredBackbone;
  }
  return out;
}

}  // namespace vcspace

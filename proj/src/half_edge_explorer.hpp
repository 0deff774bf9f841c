#pragma once

#include <utility>
#include <vector>

#include "cfgexplore/degree_model.hpp"
#include "cfgexplore/eea.hpp"
#include "cfgexplore/rng.hpp"

namespace cfgx::detail {

// Half-edge bookkeeping shared by the discrete exploration run and the
// continuous-time simulator. Vertices are sleeping until woken; the active
// array holds one entry (the owning vertex id) per active half-edge, so
// uniform sampling and O(1) removal are index swaps.
class HalfEdgeExplorer {
 public:
  explicit HalfEdgeExplorer(const DegreeSequence& seq)
      : degree_(seq.degrees),
        pos_(seq.degrees.size()),
        max_degree_(seq.max_degree()) {
    sleepers_.resize(max_degree_ + 1);
    for (int v = 0; v < static_cast<int>(degree_.size()); ++v) {
      pos_[v] = static_cast<int>(sleepers_[degree_[v]].size());
      sleepers_[degree_[v]].push_back(v);
      sleeping_stubs_ += degree_[v];
    }
    active_.reserve(2 * max_degree_ + 2);
  }

  long long active_count() const { return static_cast<long long>(active_.size()); }
  long long sleeping_stubs() const { return sleeping_stubs_; }
  long long dead_count() const { return dead_; }
  int max_degree() const { return max_degree_; }
  long long sleeper_count(int k) const {
    return static_cast<long long>(sleepers_[k].size());
  }
  bool done() const { return active_.empty() && sleeping_stubs_ == 0; }

  ExplorationState state() const {
    ExplorationState s;
    s.active = active_count();
    s.sleeping.assign(max_degree_ + 1, 0);
    for (int k = 1; k <= max_degree_; ++k) s.sleeping[k] = sleeper_count(k);
    s.dead = dead_;
    return s;
  }

  // Owner of the i-th sleeping half-edge (0 <= i < sleeping_stubs_),
  // counting degree classes in ascending order.
  int sleeping_stub_owner(long long i) const {
    for (int k = 1; k <= max_degree_; ++k) {
      const long long stubs_k = static_cast<long long>(k) * sleeper_count(k);
      if (i < stubs_k) return sleepers_[k][static_cast<std::size_t>(i / k)];
      i -= stubs_k;
    }
    return -1;  // unreachable when i is in range
  }

  int uniform_sleeping_vertex(int k, Rng& rng) const {
    return sleepers_[k][static_cast<std::size_t>(rng.below(sleepers_[k].size()))];
  }

  // Moves all of v's half-edges from sleeping to active.
  void wake(int v) {
    const int d = degree_[v];
    auto& bucket = sleepers_[d];
    const int p = pos_[v];
    bucket[p] = bucket.back();
    pos_[bucket[p]] = p;
    bucket.pop_back();
    sleeping_stubs_ -= d;
    for (int i = 0; i < d; ++i) active_.push_back(v);
  }

  // Removes one uniform active half-edge and returns its owner.
  int take_uniform_active(Rng& rng) {
    const std::size_t i = static_cast<std::size_t>(rng.below(active_.size()));
    return take_active_at(i);
  }

  int take_active_at(std::size_t i) {
    const int v = active_[i];
    active_[i] = active_.back();
    active_.pop_back();
    dead_++;
    return v;
  }

  // Removes the most recently activated half-edge (used when a wake is
  // immediately followed by pairing one of the new stubs).
  int take_last_active() {
    const int v = active_.back();
    active_.pop_back();
    dead_++;
    return v;
  }

 private:
  std::vector<int> degree_;
  std::vector<std::vector<int>> sleepers_;  // per degree, sleeping vertex ids
  std::vector<int> pos_;                    // index of each vertex in its bucket
  std::vector<int> active_;                 // one vertex id per active half-edge
  long long sleeping_stubs_ = 0;
  long long dead_ = 0;
  int max_degree_ = 0;
};

}  // namespace cfgx::detail

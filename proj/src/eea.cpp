#include "cfgexplore/eea.hpp"

#include <algorithm>

#include "half_edge_explorer.hpp"

namespace cfgx {

long long ExplorationState::sleeping_half_edges() const {
  long long total = 0;
  for (int k = 1; k < static_cast<int>(sleeping.size()); ++k)
    total += static_cast<long long>(k) * sleeping[k];
  return total;
}

bool ExplorationState::terminated() const {
  return active == 0 && sleeping_half_edges() == 0;
}

const char* to_string(StepType type) {
  switch (type) {
    case StepType::WakeByDegree: return "wake";
    case StepType::PairWithActive: return "pair-active";
    case StepType::PairWakeDegree: return "pair-wake";
  }
  return "?";
}

TransitionDistribution transition_distribution(const ExplorationState& state) {
  const long long stub_sum = state.sleeping_half_edges();
  const long long pair_weight = std::max<long long>(state.active - 1, 0);
  const long long denom = stub_sum + pair_weight;
  if (denom == 0)
    fail(ErrorCode::Terminated, "no transition available from this state");
  TransitionDistribution dist;
  dist.pair_prob = static_cast<double>(pair_weight) / static_cast<double>(denom);
  for (int k = 1; k < static_cast<int>(state.sleeping.size()); ++k) {
    if (state.sleeping[k] > 0) {
      dist.wake_probs.push_back(
          {k, static_cast<double>(k) * static_cast<double>(state.sleeping[k]) /
                  static_cast<double>(denom)});
    }
  }
  return dist;
}

EEAResult eea_run(const DegreeSequence& seq, Rng& rng, EEAOptions opts) {
  const auto checked = DegreeSequence::from(seq.degrees);
  detail::HalfEdgeExplorer ex(checked);
  const long long n = static_cast<long long>(checked.degrees.size());
  const long long m = checked.edge_count();

  EEAResult result;
  result.log.n = n;
  result.log.m = m;
  if (opts.record_graph) {
    result.graph.n = static_cast<int>(n);
    result.graph.degree.assign(n, 0);
    result.graph.edges.reserve(m);
  }

  ComponentRecord current;
  auto note_wake = [&](int v) {
    current.vertices.push_back(v);
    current.degree_config[checked.degrees[v]]++;
  };
  auto close_component = [&]() {
    if (!current.vertices.empty()) {
      std::sort(current.vertices.begin(), current.vertices.end());
      result.components.push_back(std::move(current));
      current = ComponentRecord{};
    }
  };

  long long j = 0;
  while (!ex.done()) {
    ++j;
    StepRecord rec;
    rec.j = j;
    if (ex.active_count() == 0) {
      // Wake the owner of a uniform sleeping half-edge; proportional to degree.
      const long long i = static_cast<long long>(rng.below(ex.sleeping_stubs()));
      const int v = ex.sleeping_stub_owner(i);
      ex.wake(v);
      note_wake(v);
      rec.type = StepType::WakeByDegree;
      rec.k = checked.degrees[v];
    } else {
      const int v1 = ex.take_uniform_active(rng);
      // Partner uniform among the remaining living half-edges.
      const long long living =
          ex.active_count() + ex.sleeping_stubs();
      const long long u = static_cast<long long>(rng.below(living));
      int v2;
      if (u < ex.active_count()) {
        v2 = ex.take_active_at(static_cast<std::size_t>(u));
        rec.type = StepType::PairWithActive;
      } else {
        v2 = ex.sleeping_stub_owner(u - ex.active_count());
        ex.wake(v2);
        note_wake(v2);
        ex.take_last_active();  // the paired stub dies with v1's stub
        rec.type = StepType::PairWakeDegree;
        rec.k = checked.degrees[v2];
      }
      rec.u = std::min(v1, v2);
      rec.v = std::max(v1, v2);
      if (opts.record_graph) result.graph.add_edge(v1, v2);
      current.edge_count++;
    }
    rec.active_after = ex.active_count();
    if (rec.active_after == 0) close_component();
    if (opts.record_log) result.log.steps.push_back(rec);
  }
  close_component();
  return result;
}

ScaledEmbedding scaled_embedding(const ExcursionLog& log, long long n) {
  // Initial sleeper counts equal the total number of wakes per degree.
  int K = 0;
  for (const auto& rec : log.steps)
    if (rec.k > K) K = rec.k;
  std::vector<long long> v(K + 1, 0);
  for (const auto& rec : log.steps)
    if (rec.k > 0) v[rec.k]++;

  const std::size_t len = log.steps.size() + 1;
  ScaledEmbedding emb;
  emb.x0.resize(len);
  emb.vk.assign(K + 1, std::vector<double>(len));
  const double inv_n = 1.0 / static_cast<double>(n);

  long long a = 0;
  auto snapshot = [&](std::size_t j) {
    emb.x0[j] = static_cast<double>(a - 1) * inv_n;
    for (int k = 0; k <= K; ++k)
      emb.vk[k][j] = static_cast<double>(v[k]) * inv_n;
  };
  snapshot(0);
  for (std::size_t j = 0; j < log.steps.size(); ++j) {
    const auto& rec = log.steps[j];
    if (rec.k > 0) v[rec.k]--;
    a = rec.active_after;
    snapshot(j + 1);
  }
  return emb;
}

}  // namespace cfgx

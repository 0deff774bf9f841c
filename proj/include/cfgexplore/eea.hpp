#pragma once

#include <vector>

#include "cfgexplore/graph_gen.hpp"

namespace cfgx {

// Count view of the exploration chain: A active half-edges and V_k sleeping
// vertices of degree k. The dead tally closes the conservation identity
// A + sum_k k V_k + dead == 2m.
struct ExplorationState {
  long long active = 0;
  std::vector<long long> sleeping;  // indexed by degree k; index 0 unused
  long long dead = 0;

  long long sleeping_half_edges() const;
  bool terminated() const;
};

enum class StepType {
  WakeByDegree,    // A == 0: wake a sleeping vertex, no edge formed
  PairWithActive,  // pair an active half-edge with another active one
  PairWakeDegree,  // pair an active half-edge with a sleeping vertex's stub
};

const char* to_string(StepType type);

struct StepRecord {
  long long j = 0;  // step index (1-based; state j is reached after step j)
  StepType type = StepType::WakeByDegree;
  int k = 0;        // woken vertex degree, 0 for PairWithActive
  int u = -1;       // realized edge endpoints, -1 when no edge formed
  int v = -1;
  long long active_after = 0;
};

// Full step log of one run. Excursion boundaries are the steps j > 0 with
// A(j) == 0; each excursion's pairing-step count is its component's edge
// count and its woken vertices are the component members.
struct ExcursionLog {
  long long n = 0;
  long long m = 0;
  std::vector<StepRecord> steps;
};

// One-step transition law: pair two actives with weight (a-1)^+ and wake a
// degree-k vertex with weight k v_k, normalized by sum_i i v_i + (a-1)^+.
struct TransitionDistribution {
  double pair_prob = 0;
  std::vector<std::pair<int, double>> wake_probs;  // (k, probability), k ascending
};

TransitionDistribution transition_distribution(const ExplorationState& state);

struct EEAOptions {
  bool record_log = true;
  bool record_graph = true;
};

struct EEAResult {
  Multigraph graph;          // empty unless record_graph
  ExcursionLog log;          // empty unless record_log
  std::vector<ComponentRecord> components;  // from excursions, always filled
};

// Runs the exploration to termination, building the matching on the fly.
// The realized graph has the same law as uniform_matching. RNG use per
// step: one draw when A == 0 (the stub to wake), otherwise two draws (the
// active half-edge, then its partner among the other living ones).
EEAResult eea_run(const DegreeSequence& seq, Rng& rng, EEAOptions opts = {});

// Scaled embedding ((A(j)-1)/n, V(j)/n) of a logged run, aligned with the
// fluid limit at times t_j = j/n.
struct ScaledEmbedding {
  std::vector<double> x0;               // (A(j)-1)/n, j = 0..steps
  std::vector<std::vector<double>> vk;  // vk[k][j] = V_k(j)/n
};

ScaledEmbedding scaled_embedding(const ExcursionLog& log, long long n);

}  // namespace cfgx

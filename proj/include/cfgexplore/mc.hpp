#pragma once

#include <cstdint>
#include <vector>

#include "cfgexplore/ctmc.hpp"
#include "cfgexplore/degree_ld.hpp"
#include "cfgexplore/eea.hpp"

namespace cfgx {

// Event "some component has degree configuration within eps of q": every
// degree k up to max_degree must satisfy (q_k - eps) n <= n̄_k <= (q_k + eps) n,
// including the upper bound n̄_k <= eps n where q_k = 0.
struct EventSpec {
  std::vector<double> q;  // q[k], k = 0..max_degree
  double eps = 0.02;
  int max_degree = 0;

  double q_at(int k) const {
    return (k >= 0 && k < static_cast<int>(q.size())) ? q[k] : 0.0;
  }
  static EventSpec from_target(const DegreeConfigTarget& target, int max_degree);
};

bool event_indicator(const std::vector<ComponentRecord>& components,
                     const EventSpec& spec, long long n);

struct EstimateReport {
  long long n = 0;
  long long replicas = 0;
  long long hits = 0;
  double p_hat = 0;
  double ci_lo = 0;       // Wilson 95% for plain MC, normal approx for IS
  double ci_hi = 0;
  double rate_hat = 0;    // -(1/n) log p_hat; NaN when p_hat == 0
  double wall_seconds = 0;
  std::uint64_t seed = 0;
};

// Wilson 95% score interval for `hits` successes out of `replicas`.
void wilson_interval(long long hits, long long replicas, double& lo, double& hi);

enum class Parallel { Auto, Serial };

// Replica-parallel estimator over independent exploration runs. Replica i
// draws from stream seed XOR i and deposits into its own slot, so the
// result is bit-identical for any thread count; Parallel::Serial keeps the
// plain loop as the reference implementation.
EstimateReport mc_probability(const DegreeSequence& seq, const EventSpec& spec,
                              long long replicas, std::uint64_t seed,
                              Parallel mode = Parallel::Auto);

// Exact probability by full matching enumeration (tiny instances only).
double exact_probability(const DegreeSequence& seq, const EventSpec& spec,
                         int limit = 14);

// Importance-sampling estimator: replicas run the tilted continuous-time
// process, and the likelihood ratio reweights hits so the estimate is
// unbiased for the nominal probability. Requires strictly positive tilts
// on every live band.
EstimateReport is_probability(const DegreeSequence& seq, const EventSpec& spec,
                              const BandControl& control, long long replicas,
                              std::uint64_t seed, Parallel mode = Parallel::Auto);

struct SweepRow {
  long long n = 0;
  double p_hat = 0;
  double ci_lo = 0;
  double ci_hi = 0;
  double rate_hat = 0;
};

// Decay curve over instance sizes: realizes a sequence from the model at
// each n and runs mc_probability.
std::vector<SweepRow> mc_sweep(const DegreeModel& model, const EventSpec& spec,
                               const std::vector<long long>& sizes,
                               long long replicas, std::uint64_t seed,
                               Parallel mode = Parallel::Auto);

}  // namespace cfgx

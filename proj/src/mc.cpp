#include "cfgexplore/mc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "cfgexplore/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cfgx {

namespace {

double elapsed_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

double rate_from(double p_hat, long long n) {
  if (p_hat <= 0) return std::numeric_limits<double>::quiet_NaN();
  return -std::log(p_hat) / static_cast<double>(n);
}

}  // namespace

EventSpec EventSpec::from_target(const DegreeConfigTarget& target, int max_degree) {
  EventSpec spec;
  spec.max_degree = max_degree;
  spec.eps = target.eps;
  spec.q.assign(max_degree + 1, 0.0);
  for (int k = 1; k <= max_degree; ++k) spec.q[k] = target.q_at(k);
  return spec;
}

bool event_indicator(const std::vector<ComponentRecord>& components,
                     const EventSpec& spec, long long n) {
  const double scale = static_cast<double>(n);
  for (const auto& comp : components) {
    bool ok = true;
    for (int k = 1; k <= spec.max_degree && ok; ++k) {
      auto it = comp.degree_config.find(k);
      const double count = it == comp.degree_config.end()
                               ? 0.0
                               : static_cast<double>(it->second);
      const double lo = (spec.q_at(k) - spec.eps) * scale;
      const double hi = (spec.q_at(k) + spec.eps) * scale;
      ok = count >= lo && count <= hi;
    }
    // Degrees present in the component beyond max_degree have q = 0.
    if (ok) {
      for (const auto& [k, count] : comp.degree_config) {
        if (k > spec.max_degree &&
            static_cast<double>(count) > spec.eps * scale) {
          ok = false;
          break;
        }
      }
    }
    if (ok) return true;
  }
  return false;
}

void wilson_interval(long long hits, long long replicas, double& lo, double& hi) {
  const double z = 1.959963984540054;
  const double nn = static_cast<double>(replicas);
  const double p = static_cast<double>(hits) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  lo = std::max(0.0, center - half);
  hi = std::min(1.0, center + half);
}

EstimateReport mc_probability(const DegreeSequence& seq, const EventSpec& spec,
                              long long replicas, std::uint64_t seed,
                              Parallel mode) {
  if (replicas < 1) fail(ErrorCode::EmptyInput, "need at least one replica");
  const auto checked = DegreeSequence::from(seq.degrees);
  const long long n = static_cast<long long>(checked.degrees.size());
  const auto start = std::chrono::steady_clock::now();

  std::vector<unsigned char> hit(replicas, 0);
  const EEAOptions fast{/*record_log=*/false, /*record_graph=*/false};

  auto run_one = [&](long long i) {
    Rng rng = replica_stream(seed, static_cast<std::uint64_t>(i));
    const EEAResult result = eea_run(checked, rng, fast);
    hit[i] = event_indicator(result.components, spec, n) ? 1 : 0;
  };

  if (mode == Parallel::Serial) {
    for (long long i = 0; i < replicas; ++i) run_one(i);
  } else {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long i = 0; i < replicas; ++i) run_one(i);
  }

  EstimateReport report;
  report.n = n;
  report.replicas = replicas;
  report.seed = seed;
  for (long long i = 0; i < replicas; ++i) report.hits += hit[i];
  report.p_hat = static_cast<double>(report.hits) / static_cast<double>(replicas);
  wilson_interval(report.hits, replicas, report.ci_lo, report.ci_hi);
  report.rate_hat = rate_from(report.p_hat, n);
  report.wall_seconds = elapsed_since(start);
  return report;
}

double exact_probability(const DegreeSequence& seq, const EventSpec& spec,
                         int limit) {
  const auto checked = DegreeSequence::from(seq.degrees);
  const long long n = static_cast<long long>(checked.degrees.size());
  long long total = 0, hits = 0;
  for_each_matching(
      checked,
      [&](const Multigraph& g) {
        total++;
        if (event_indicator(components_of(g), spec, n)) hits++;
        return true;
      },
      limit);
  return static_cast<double>(hits) / static_cast<double>(total);
}

EstimateReport is_probability(const DegreeSequence& seq, const EventSpec& spec,
                              const BandControl& control, long long replicas,
                              std::uint64_t seed, Parallel mode) {
  if (replicas < 1) fail(ErrorCode::EmptyInput, "need at least one replica");
  control.validate();
  const auto checked = DegreeSequence::from(seq.degrees);
  const long long n = static_cast<long long>(checked.degrees.size());
  const int K = checked.max_degree();
  // The run must reach absorption under the tilt, so every type that can
  // fire needs a strictly positive mean intensity in every piece.
  for (int piece = 0; piece < control.pieces(); ++piece)
    for (int k = 0; k <= K; ++k)
      if (control.live_mean(piece, k) <= 0)
        fail(ErrorCode::InvalidControl,
             "type " + std::to_string(k) + " has zero mean intensity");

  const auto start = std::chrono::steady_clock::now();
  // Generous horizon: jump count is bounded by m + n, so absorption comes
  // in finite time almost surely; the horizon only guards degenerate tilts.
  const double horizon = std::numeric_limits<double>::max();

  std::vector<double> weighted(replicas, 0.0);
  std::vector<unsigned char> hit(replicas, 0);
  const SimulateOptions opts{/*realize_graph=*/true};

  auto run_one = [&](long long i) {
    Rng rng = replica_stream(seed, static_cast<std::uint64_t>(i));
    const CTPath path = simulate(checked, horizon, control, rng, opts);
    if (event_indicator(path.components, spec, n)) {
      hit[i] = 1;
      weighted[i] = importance_weight(path, control, n);
    }
  };

  if (mode == Parallel::Serial) {
    for (long long i = 0; i < replicas; ++i) run_one(i);
  } else {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long i = 0; i < replicas; ++i) run_one(i);
  }

  EstimateReport report;
  report.n = n;
  report.replicas = replicas;
  report.seed = seed;
  KahanSum sum, sum_sq;
  for (long long i = 0; i < replicas; ++i) {
    report.hits += hit[i];
    sum.add(weighted[i]);
    sum_sq.add(weighted[i] * weighted[i]);
  }
  const double mean = sum.value() / static_cast<double>(replicas);
  const double var =
      std::max(0.0, sum_sq.value() / static_cast<double>(replicas) - mean * mean);
  const double half =
      1.959963984540054 * std::sqrt(var / static_cast<double>(replicas));
  report.p_hat = mean;
  report.ci_lo = std::max(0.0, mean - half);
  report.ci_hi = mean + half;
  report.rate_hat = rate_from(mean, n);
  report.wall_seconds = elapsed_since(start);
  return report;
}

std::vector<SweepRow> mc_sweep(const DegreeModel& model, const EventSpec& spec,
                               const std::vector<long long>& sizes,
                               long long replicas, std::uint64_t seed,
                               Parallel mode) {
  std::vector<SweepRow> rows;
  rows.reserve(sizes.size());
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const DegreeSequence seq = realize_sequence(model, sizes[i]);
    const EstimateReport report = mc_probability(
        seq, spec, replicas, seed + static_cast<std::uint64_t>(i) * 0x9e3779b9ULL,
        mode);
    rows.push_back({report.n, report.p_hat, report.ci_lo, report.ci_hi,
                    report.rate_hat});
  }
  return rows;
}

}  // namespace cfgx

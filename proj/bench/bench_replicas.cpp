// Throughput comparison of the replica kernels: serial reference loop vs
// the OpenMP-parallel path, for both the discrete estimator and the
// importance-sampled continuous-time estimator. Run: bench_replicas [n].

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include "cfgexplore/mc.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace cfgx;

namespace {

double time_of(const char* label, double reference,
               const std::function<EstimateReport()>& run) {
  const auto start = std::chrono::steady_clock::now();
  const EstimateReport report = run();
  const double sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  std::printf("  %-22s %8.3f s   p_hat=%.6g   x%.2f\n", label, sec, report.p_hat,
              reference > 0 ? reference / sec : 1.0);
  return sec;
}

}  // namespace

int main(int argc, char** argv) {
  const long long n = argc > 1 ? std::atoll(argv[1]) : 400;
  const long long replicas = argc > 2 ? std::atoll(argv[2]) : 20000;
  const std::uint64_t seed = 20260809;

  const auto model = build_model({{1, 0.5}, {3, 0.5}});
  const auto seq = realize_sequence(model, n);
  const auto target = make_target(model, {{1, 0.25}, {3, 0.45}}, 0.05);
  const auto spec = EventSpec::from_target(target, seq.max_degree());

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (no OpenMP)\n");
#endif
  std::printf("n=%lld, replicas=%lld\n", n, replicas);

  std::printf("discrete exploration estimator:\n");
  const double mc_serial = time_of("serial reference", 0.0, [&]() {
    return mc_probability(seq, spec, replicas, seed, Parallel::Serial);
  });
  time_of("parallel", mc_serial, [&]() {
    return mc_probability(seq, spec, replicas, seed, Parallel::Auto);
  });

  std::printf("importance-sampled continuous-time estimator:\n");
  const auto control = BandControl::constant(1.25, seq.max_degree());
  const long long is_replicas = replicas / 4;
  const double is_serial = time_of("serial reference", 0.0, [&]() {
    return is_probability(seq, spec, control, is_replicas, seed, Parallel::Serial);
  });
  time_of("parallel", is_serial, [&]() {
    return is_probability(seq, spec, control, is_replicas, seed, Parallel::Auto);
  });
  return 0;
}

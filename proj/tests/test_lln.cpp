#include <doctest.h>

#include <cmath>

#include "cfgexplore/eea.hpp"
#include "cfgexplore/lln.hpp"
#include "support/generators.hpp"

using namespace cfgx;

namespace {

double sup_distance(const LLNPath& a, const LLNPath& b) {
  double worst = 0;
  for (std::size_t i = 0; i < a.t.size(); ++i) {
    worst = std::max(worst, std::abs(a.zeta0[i] - b.zeta0[i]));
    for (int k = 1; k <= a.K; ++k)
      worst = std::max(worst, std::abs(a.zeta[k][i] - b.zeta[k][i]));
  }
  return worst;
}

}  // namespace

TEST_SUITE("lln") {

TEST_CASE("phase classification") {
  const auto cubic = build_model(DegreeSequence{{3, 3, 3, 3}});
  const auto super = phase_and_rho(cubic);
  CHECK(super.supercritical);
  CHECK(super.rho == doctest::Approx(0.0));
  CHECK(super.tau == doctest::Approx(1.5));

  const auto ones = phase_and_rho(build_model(DegreeSequence{{1, 1}}));
  CHECK_FALSE(ones.supercritical);
  CHECK(ones.drift == doctest::Approx(-1.0));

  const auto twos = phase_and_rho(build_model(DegreeSequence{{2, 2}}));
  CHECK_FALSE(twos.supercritical);  // drift 0 goes with the subcritical branch

  // Half degree-1, half degree-3: G1(z) = 1/4 + (3/4) z^2, fixed point 1/3.
  const auto mixed = phase_and_rho(build_model({{1, 0.5}, {3, 0.5}}));
  CHECK(mixed.supercritical);
  CHECK(mixed.rho == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
  CHECK(mixed.tau == doctest::Approx(8.0 / 9.0).epsilon(1e-10));
}

TEST_CASE("fixed point residual") {
  Rng rng(21);
  int supercritical_seen = 0;
  for (int rep = 0; rep < 300; ++rep) {
    const auto m = testing::random_model(rng);
    const auto phase = phase_and_rho(m);
    if (!phase.supercritical) continue;
    supercritical_seen++;
    CHECK(phase.rho >= 0.0);
    CHECK(phase.rho < 1.0);
    CHECK(std::abs(eval_generating(m, phase.rho, Gen::G1) - phase.rho) <= 1e-10);
    CHECK(phase.tau > 0.0);
    CHECK(phase.tau <= 0.5 * m.mu + 1e-12);
  }
  CHECK(supercritical_seen > 20);
}

TEST_CASE("inverse of the depletion clock") {
  const auto ones = build_model(DegreeSequence{{1, 1}});
  for (double u : {0.0, 0.25, 0.5, 0.99})
    CHECK(invert_F(ones, 1.0, u) == doctest::Approx(1.0 - u).epsilon(1e-10));
  Rng rng(3);
  for (int rep = 0; rep < 20; ++rep) {
    const auto m = testing::random_model(rng);
    CHECK(invert_F(m, 1.0, 0.0) == doctest::Approx(1.0));
    const double g0 = eval_generating(m, 0.8, Gen::G0);
    CHECK(invert_F(m, 0.8, g0 + 0.1) == 0.0);
    // Round trip through F_s.
    const double f = invert_F(m, 0.8, 0.5 * g0);
    const double back = g0 - eval_generating(m, 0.8 * f, Gen::G0);
    CHECK(std::abs(back - 0.5 * g0) <= 1e-10);
  }
}

TEST_CASE("closed-form trajectory values") {
  SUBCASE("pure degree 3") {
    const auto m = build_model(DegreeSequence{{3, 3, 3, 3}});
    const auto path = lln_path(m, 1.6, 1601);  // grid lands on t = 0.75 exactly
    CHECK(path.zeta0[0] == doctest::Approx(0.0));
    CHECK(path.zeta[3][0] == doctest::Approx(1.0));
    const int i = 750;
    CHECK(path.t[i] == doctest::Approx(0.75));
    CHECK(path.zeta[3][i] == doctest::Approx(std::pow(0.5, 1.5)).epsilon(1e-12));
    CHECK(path.zeta0[i] ==
          doctest::Approx(1.5 - 3.0 * std::pow(0.5, 1.5)).epsilon(1e-12));
    CHECK(path.tau_zeta == doctest::Approx(1.5));
    // Past absorption everything is zero.
    CHECK(path.zeta[3].back() == 0.0);
    CHECK(path.zeta0.back() == 0.0);
  }
  SUBCASE("pure degree 1") {
    const auto m = build_model(DegreeSequence{{1, 1}});
    const auto path = lln_path(m, 1.0, 1001);
    const int i = 500;
    CHECK(path.zeta[1][i] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(path.zeta0[i] == doctest::Approx(0.0));
    CHECK(path.psi[i] == doctest::Approx(-0.5).epsilon(1e-10));
    CHECK(path.tau_zeta == doctest::Approx(1.0));
  }
}

TEST_CASE("post-tau continuation with a positive fixed point") {
  // Half degree-1, half degree-3: rho = 1/3, tau = 8/9, and the trajectory
  // continues past tau as the depleted flow started from zeta_k(tau) =
  // p_k rho^k, dying at tau + G0(rho) = 8/9 + 5/27.
  const auto m = build_model({{1, 0.5}, {3, 0.5}});
  const auto phase = phase_and_rho(m);
  std::vector<double> zk;
  lln_eval(m, phase, phase.tau, zk);
  CHECK(zk[1] == doctest::Approx(0.5 / 3.0).epsilon(1e-9));
  CHECK(zk[3] == doctest::Approx(0.5 / 27.0).epsilon(1e-9));
  const double z0_at_tau = lln_eval(m, phase, phase.tau, zk);
  CHECK(z0_at_tau == doctest::Approx(0.0).epsilon(1e-9));

  const auto path = lln_path(m, 1.2, 1201);
  CHECK(path.tau_zeta == doctest::Approx(8.0 / 9.0 + 5.0 / 27.0).epsilon(1e-9));
  // Continuity across tau on the grid.
  const int i_tau = static_cast<int>(phase.tau / 0.001);
  CHECK(path.zeta[1][i_tau + 1] <= path.zeta[1][i_tau] + 1e-12);
  CHECK(path.zeta[1][i_tau] - path.zeta[1][i_tau + 1] <= 2e-3);
  // Everything is gone after absorption.
  CHECK(path.zeta[1].back() == 0.0);
  CHECK(path.zeta[3].back() == 0.0);
  CHECK(path.zeta0.back() == 0.0);
}

TEST_CASE("psi matches its integral form away from the boundary jump") {
  // The exported psi uses the telescoped identities; cross-check against
  // fine trapezoid quadrature of -2 r_0(zeta) on the smooth stretch.
  const auto m = build_model({{1, 0.4}, {4, 0.6}});
  const auto phase = phase_and_rho(m);
  REQUIRE(phase.supercritical);
  const int N = 200001;
  const double T = 1.1 * phase.tau;
  const auto path = lln_path(m, T, N);
  const double dt = T / (N - 1);
  double integral = 0.0;
  std::vector<double> state(path.K + 1);
  double prev_r0 = 0.0;
  for (int i = 0; i < N; ++i) {
    state[0] = path.zeta0[i];
    for (int k = 1; k <= path.K; ++k) state[k] = path.zeta[k][i];
    const auto rates = band_rates(state[0], state);
    if (i > 0) integral += 0.5 * dt * (prev_r0 + rates.band[0]);
    prev_r0 = rates.band[0];
    if (path.t[i] > 0.95 * phase.tau) break;  // stop before the kink
    double telescoped = 0.0;
    for (int k = 1; k <= path.K; ++k)
      telescoped += (k - 2.0) * (m.p[k] - path.zeta[k][i]);
    CHECK(std::abs(path.psi[i] - (-2.0 * integral + telescoped)) <= 1e-7);
  }
}

TEST_CASE("oracle agrees with the closed form") {
  SUBCASE("pure degree 3 to 1e-6") {
    const auto m = build_model(DegreeSequence{{3, 3, 3, 3}});
    const auto closed = lln_path(m, 1.4, 10001);
    const auto ode = lln_ode_oracle(m, 1.4, 10001);
    CHECK(sup_distance(closed, ode) <= 1e-6);
  }
  SUBCASE("pure degree 1 is integrated exactly") {
    const auto m = build_model(DegreeSequence{{1, 1}});
    const auto ode = lln_ode_oracle(m, 0.9, 2001);
    for (std::size_t i = 0; i < ode.t.size(); ++i)
      CHECK(std::abs(ode.zeta[1][i] - (1.0 - ode.t[i])) <= 1e-8);
  }
  SUBCASE("five random models to 1e-5, past absorption included") {
    Rng rng(5150);
    for (int rep = 0; rep < 5; ++rep) {
      const auto m = testing::random_model(rng);
      const double T = std::max(1.0, 0.5 * m.mu) + 0.25;
      const auto closed = lln_path(m, T, 10001);
      const auto ode = lln_ode_oracle(m, T, 10001);
      CHECK(sup_distance(closed, ode) <= 1e-5);
    }
  }
}

TEST_CASE("trajectory invariants") {
  Rng rng(61);
  for (int rep = 0; rep < 10; ++rep) {
    const auto m = testing::random_model(rng);
    const double T = std::max(1.0, 0.5 * m.mu) + 0.25;
    const auto path = lln_path(m, T, 2001);
    for (int k = 1; k <= path.K; ++k) {
      CHECK(path.zeta[k][0] == doctest::Approx(m.p[k]));
      for (std::size_t i = 1; i < path.t.size(); ++i)
        CHECK(path.zeta[k][i] <= path.zeta[k][i - 1] + 1e-12);
    }
    // zeta0 is the reflection of psi up to quadrature error.
    double running_min = 0, worst = 0;
    for (std::size_t i = 0; i < path.t.size(); ++i) {
      running_min = std::min(running_min, std::min(path.psi[i], 0.0));
      worst = std::max(worst, std::abs(path.zeta0[i] - (path.psi[i] - running_min)));
    }
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("embedded discrete run tracks the fluid limit") {
  const auto m = build_model(DegreeSequence{{3, 3, 3, 3}});
  const auto phase = phase_and_rho(m);
  const long long n = 20000;
  const DegreeSequence seq = realize_sequence(m, n);
  Rng rng(321);
  const auto result = eea_run(seq, rng, {true, false});
  const auto emb = scaled_embedding(result.log, n);
  std::vector<double> zk;
  double worst = 0;
  for (std::size_t j = 0; j < emb.x0.size(); ++j) {
    const double t = static_cast<double>(j) / static_cast<double>(n);
    const double z0 = lln_eval(m, phase, t, zk);
    worst = std::max(worst, std::abs(emb.x0[j] - z0));
    worst = std::max(worst, std::abs(emb.vk[3][j] - zk[3]));
  }
  CHECK(worst <= 0.05);
}

}  // TEST_SUITE

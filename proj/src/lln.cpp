#include "cfgexplore/lln.hpp"

#include <algorithm>
#include <cmath>

#include "cfgexplore/ctmc.hpp"

namespace cfgx {

namespace {

constexpr int kMaxBisect = 200;

}  // namespace

PhaseReport phase_and_rho(const DegreeModel& m) {
  PhaseReport report;
  report.drift = m.drift;
  report.supercritical = m.drift > 0;
  if (!report.supercritical) return report;

  if (m.p_at(1) <= 0.0) {
    report.rho = 0.0;
  } else {
    auto g = [&](double a) { return eval_generating(m, a, Gen::G1) - a; };
    // g(0) = p_1/mu > 0; expand the right bracket until g turns negative.
    double lo = 0.0, hi = 1.0 - 1e-3;
    int expand = 0;
    while (g(hi) > 0) {
      hi = 1.0 - (1.0 - hi) / 4.0;
      if (++expand > 60)
        fail(ErrorCode::NoConvergence, "no sign change for the G1 fixed point");
    }
    for (int it = 0; it < kMaxBisect && hi - lo > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (g(mid) > 0) lo = mid;
      else hi = mid;
    }
    report.rho = 0.5 * (lo + hi);
    if (std::abs(g(report.rho)) > 1e-10)
      fail(ErrorCode::NoConvergence, "G1 fixed point residual too large");
  }
  report.tau = 0.5 * m.mu * (1.0 - report.rho * report.rho);
  return report;
}

double invert_F(const DegreeModel& m, double s, double t) {
  if (s <= 0.0 || s > 1.0)
    fail(ErrorCode::NegativeInput, "f_s needs s in (0,1]");
  if (t < 0.0) fail(ErrorCode::NegativeInput, "f_s needs t >= 0");
  const double g0s = eval_generating(m, s, Gen::G0);
  if (t >= g0s) return 0.0;
  if (t == 0.0) return 1.0;
  // F_s(x) = G0(s) - G0(s x) is strictly decreasing in x from G0(s) to 0.
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < kMaxBisect && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double val = g0s - eval_generating(m, s * mid, Gen::G0);
    if (val > t) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double lln_eval(const DegreeModel& m, const PhaseReport& phase, double t,
                std::vector<double>& zeta_k) {
  const int K = m.max_degree();
  zeta_k.assign(K + 1, 0.0);
  if (!phase.supercritical) {
    const double f = invert_F(m, 1.0, t);
    double fk = 1.0;
    for (int k = 1; k <= K; ++k) {
      fk *= f;
      zeta_k[k] = m.p[k] * fk;
    }
    return 0.0;
  }
  if (t <= phase.tau) {
    const double root = std::sqrt(std::max(0.0, 1.0 - 2.0 * t / m.mu));
    double rk = 1.0;
    for (int k = 1; k <= K; ++k) {
      rk *= root;
      zeta_k[k] = m.p[k] * rk;
    }
    const double zeta0 =
        m.mu - 2.0 * t - m.mu * root * eval_generating(m, root, Gen::G1);
    return std::max(0.0, zeta0);
  }
  // Past tau the giant phase is exhausted and the trajectory continues as
  // the subcritical flow started from zeta_k(tau) = p_k rho^k.
  if (phase.rho <= 0.0) return 0.0;
  const double f = invert_F(m, phase.rho, t - phase.tau);
  double rfk = 1.0;
  for (int k = 1; k <= K; ++k) {
    rfk *= phase.rho * f;
    zeta_k[k] = m.p[k] * rfk;
  }
  return 0.0;
}

namespace {

// Quadrature form of psi = -2 int r_0 + sum (k-2)(p_k - zeta_k): trapezoid
// of r_0 on the grid. Used by the ODE oracle; near absorption r_0 can jump,
// so this form carries an O(dt) bias there.
void fill_psi_quadrature(const DegreeModel& m, LLNPath& path) {
  const int K = path.K;
  const std::size_t len = path.t.size();
  path.psi.assign(len, 0.0);
  std::vector<double> r0(len, 0.0);
  std::vector<double> state(K + 1, 0.0);
  for (std::size_t i = 0; i < len; ++i) {
    state[0] = path.zeta0[i];
    for (int k = 1; k <= K; ++k) state[k] = path.zeta[k][i];
    const BandRates rates = band_rates(state[0], state);
    r0[i] = rates.band[0];
  }
  double integral = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    if (i > 0) {
      const double dt = path.t[i] - path.t[i - 1];
      integral += 0.5 * dt * (r0[i - 1] + r0[i]);
    }
    double telescoped = 0.0;
    for (int k = 1; k <= K; ++k)
      telescoped += (k - 2.0) * (m.p[k] - path.zeta[k][i]);
    path.psi[i] = -2.0 * integral + telescoped;
  }
}

// Exact form of psi for the closed-form trajectory. While zeta0 > 0 the
// drift integral satisfies psi = zeta0; once zeta0 sticks at zero only the
// telescoping term moves. This keeps zeta0 = Gamma(psi) to rounding on the
// grid, which the quadrature form cannot do across the absorption jump of
// r_0 in the rho = 0 regime.
void fill_psi_closed(const DegreeModel& m, const PhaseReport& phase, LLNPath& path) {
  const int K = path.K;
  const std::size_t len = path.t.size();
  path.psi.assign(len, 0.0);
  if (!phase.supercritical) {
    for (std::size_t i = 0; i < len; ++i) {
      double acc = 0.0;
      for (int k = 1; k <= K; ++k)
        acc += (k - 2.0) * (m.p[k] - path.zeta[k][i]);
      path.psi[i] = acc;
    }
    return;
  }
  std::vector<double> zeta_tau(K + 1, 0.0);
  double rho_k = 1.0;
  for (int k = 1; k <= K; ++k) {
    rho_k *= phase.rho;
    zeta_tau[k] = m.p[k] * rho_k;  // zeta_k(tau) = p_k rho^k
  }
  for (std::size_t i = 0; i < len; ++i) {
    if (path.t[i] <= phase.tau) {
      path.psi[i] = path.zeta0[i];
    } else {
      double acc = 0.0;
      for (int k = 1; k <= K; ++k)
        acc += (k - 2.0) * (zeta_tau[k] - path.zeta[k][i]);
      path.psi[i] = acc;
    }
  }
}

double absorption_of(const DegreeModel& m, const PhaseReport& phase) {
  if (!phase.supercritical) return eval_generating(m, 1.0, Gen::G0);  // = 1
  if (phase.rho <= 0.0) return phase.tau;
  return phase.tau + eval_generating(m, phase.rho, Gen::G0);
}

}  // namespace

LLNPath lln_path(const DegreeModel& m, double T, int grid_points) {
  if (T <= 0 || grid_points < 2)
    fail(ErrorCode::NegativeInput, "need T > 0 and at least two grid points");
  const PhaseReport phase = phase_and_rho(m);
  const int K = m.max_degree();
  LLNPath path;
  path.K = K;
  path.t.resize(grid_points);
  path.zeta0.resize(grid_points);
  path.zeta.assign(K + 1, std::vector<double>(grid_points, 0.0));
  const double dt = T / (grid_points - 1);
  std::vector<double> zk;
  for (int i = 0; i < grid_points; ++i) {
    const double t = i * dt;
    path.t[i] = t;
    path.zeta0[i] = lln_eval(m, phase, t, zk);
    for (int k = 1; k <= K; ++k) path.zeta[k][i] = zk[k];
  }
  path.tau_zeta = std::min(absorption_of(m, phase), T);
  fill_psi_closed(m, phase, path);
  return path;
}

LLNPath lln_ode_oracle(const DegreeModel& m, double T, int grid_points,
                       double r_tol) {
  if (T <= 0 || grid_points < 2)
    fail(ErrorCode::NegativeInput, "need T > 0 and at least two grid points");
  const int K = m.max_degree();
  const double h = T / (grid_points - 1);

  // Derivative field: dz_k = -r_k(z) for k >= 1, dz0 = -2 + sum_k k r_k(z).
  // Trial stages may overshoot below zero; they are clamped before the
  // band geometry is evaluated.
  std::vector<double> clamped(K + 1);
  auto field = [&](const std::vector<double>& z, std::vector<double>& dz) {
    clamped[0] = std::max(z[0], 0.0);
    for (int k = 1; k <= K; ++k) clamped[k] = std::max(z[k], 0.0);
    const BandRates rates = band_rates(clamped[0], clamped);
    if (rates.r <= r_tol) {
      std::fill(dz.begin(), dz.end(), 0.0);
      return;
    }
    double sum_k_rk = 0.0;
    for (int k = 1; k <= K; ++k) {
      dz[k] = -rates.band[k];
      sum_k_rk += k * rates.band[k];
    }
    dz[0] = -2.0 + sum_k_rk;
  };

  LLNPath path;
  path.K = K;
  path.t.resize(grid_points);
  path.zeta0.resize(grid_points);
  path.zeta.assign(K + 1, std::vector<double>(grid_points, 0.0));

  std::vector<double> z(K + 1, 0.0);
  for (int k = 1; k <= K; ++k) z[k] = m.p[k];
  std::vector<double> k1(K + 1), k2(K + 1), k3(K + 1), k4(K + 1), tmp(K + 1);
  bool frozen = false;
  path.tau_zeta = T;

  auto rk4_step = [&](std::vector<double>& state, double step) {
    field(state, k1);
    for (int k = 0; k <= K; ++k) tmp[k] = state[k] + 0.5 * step * k1[k];
    field(tmp, k2);
    for (int k = 0; k <= K; ++k) tmp[k] = state[k] + 0.5 * step * k2[k];
    field(tmp, k3);
    for (int k = 0; k <= K; ++k) tmp[k] = state[k] + step * k3[k];
    field(tmp, k4);
    for (int k = 0; k <= K; ++k)
      state[k] += step / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
    state[0] = std::max(state[0], 0.0);  // reflection at zero
    for (int k = 1; k <= K; ++k) state[k] = std::max(state[k], 0.0);
  };

  // One grid interval via step doubling: the reflection and absorption
  // kinks are not smooth, so the step is bisected locally until a full
  // step and two half steps agree.
  std::vector<double> once(K + 1), scratch(K + 1);
  auto advance = [&](auto&& self, std::vector<double>& state, double step,
                     int depth) -> void {
    once = state;
    rk4_step(once, step);
    scratch = state;
    rk4_step(scratch, 0.5 * step);
    rk4_step(scratch, 0.5 * step);
    double diff = 0.0;
    for (int k = 0; k <= K; ++k) diff = std::max(diff, std::abs(once[k] - scratch[k]));
    if (diff <= 1e-11) {
      state = scratch;
      return;
    }
    if (depth >= 24) {
      if (diff > 1e-4)
        fail(ErrorCode::StepTooLarge,
             "state not resolved at step " + std::to_string(step));
      state = scratch;
      return;
    }
    self(self, state, 0.5 * step, depth + 1);
    self(self, state, 0.5 * step, depth + 1);
  };

  auto snapshot = [&](int i, double t) {
    path.t[i] = t;
    path.zeta0[i] = z[0];
    for (int k = 1; k <= K; ++k) path.zeta[k][i] = z[k];
  };
  snapshot(0, 0.0);

  for (int i = 1; i < grid_points; ++i) {
    const double t = i * h;
    if (!frozen) {
      advance(advance, z, h, 0);
      double r = z[0];
      for (int k = 1; k <= K; ++k) r += k * z[k];
      if (r <= std::max(r_tol, 1e-12)) {
        std::fill(z.begin(), z.end(), 0.0);
        frozen = true;
        path.tau_zeta = std::min(path.tau_zeta, t);
      }
    }
    snapshot(i, t);
  }
  fill_psi_quadrature(m, path);
  return path;
}

}  // namespace cfgx

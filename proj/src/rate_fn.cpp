#include "cfgexplore/rate_fn.hpp"

#include <algorithm>
#include <cmath>

namespace cfgx {

double ell(double x) {
  if (x < 0) fail(ErrorCode::NegativeInput, "ell is defined on [0, inf)");
  if (x == 0) return 1.0;
  return x * std::log(x) - x + 1.0;
}

SkorokhodResult skorokhod_map(const std::vector<double>& psi) {
  SkorokhodResult out;
  out.zeta0.resize(psi.size());
  out.eta.resize(psi.size());
  double running_min = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    running_min = std::min(running_min, std::min(psi[i], 0.0));
    out.zeta0[i] = psi[i] - running_min;
    out.eta[i] = -running_min;
  }
  return out;
}

PathPair to_path_pair(const LLNPath& path) {
  PathPair pair;
  pair.t = path.t;
  pair.psi = path.psi;
  pair.zeta0 = path.zeta0;
  pair.zeta = path.zeta;
  pair.K = path.K;
  return pair;
}

namespace {

double mass_at(const PathPair& path, int i) {
  double r = std::max(path.zeta0[i], 0.0);
  for (int k = 1; k <= path.K; ++k) r += k * path.zeta[k][i];
  return r;
}

}  // namespace

FeasibilityReport feasibility(const PathPair& path,
                              const std::vector<double>* expected_p,
                              FeasibilityOptions opts) {
  FeasibilityReport report;
  const int N = static_cast<int>(path.t.size());
  report.tau_zeta = path.t.empty() ? 0.0 : path.t.back();
  auto violate = [&](const std::string& reason, int index) {
    report.feasible = false;
    report.reason = reason;
    report.index = index;
  };

  if (N == 0) {
    violate("empty path", 0);
    return report;
  }
  if (std::abs(path.psi[0]) > opts.init_tol) {
    violate("psi(0) != 0", 0);
    return report;
  }
  if (expected_p) {
    for (int k = 1; k <= path.K; ++k) {
      const double pk = k < static_cast<int>(expected_p->size()) ? (*expected_p)[k] : 0.0;
      if (std::abs(path.zeta[k][0] - pk) > opts.init_tol) {
        violate("initial condition k=" + std::to_string(k), 0);
        return report;
      }
    }
  }
  const SkorokhodResult reflected = skorokhod_map(path.psi);
  for (int i = 0; i < N; ++i) {
    if (std::abs(path.zeta0[i] - reflected.zeta0[i]) > opts.reflect_tol) {
      violate("reflection", i);
      return report;
    }
  }
  for (int k = 1; k <= path.K; ++k) {
    for (int i = 0; i < N; ++i) {
      if (path.zeta[k][i] < -opts.mono_tol) {
        violate("negativity k=" + std::to_string(k), i);
        return report;
      }
      if (i > 0 && path.zeta[k][i] > path.zeta[k][i - 1] + opts.mono_tol) {
        violate("monotonicity k=" + std::to_string(k), i);
        return report;
      }
    }
  }
  // Absorption: once the half-edge mass vanishes, the whole vector stays 0.
  int absorbed_at = -1;
  for (int i = 0; i < N; ++i) {
    if (mass_at(path, i) <= opts.absorb_tol) {
      absorbed_at = i;
      break;
    }
  }
  if (absorbed_at >= 0) {
    report.tau_zeta = path.t[absorbed_at];
    for (int i = absorbed_at; i < N; ++i) {
      bool zero = std::abs(path.zeta0[i]) <= opts.reflect_tol;
      for (int k = 1; k <= path.K && zero; ++k)
        zero = std::abs(path.zeta[k][i]) <= opts.mono_tol;
      if (!zero) {
        violate("absorption", i);
        return report;
      }
    }
  }
  return report;
}

namespace {

RateResult evaluate_rate(const PathPair& path, double num_tol,
                         FeasibilityOptions opts, bool run_feasibility) {
  RateResult result;
  result.report = feasibility(path, nullptr, opts);
  result.tau_zeta = result.report.tau_zeta;
  if (run_feasibility && !result.report.feasible) return result;

  const int S = path.slices();
  const int K = path.K;
  const double dt = path.dt();
  result.phi.assign(K + 1, std::vector<double>(S, 1.0));
  result.b.assign(K + 1, std::vector<double>(S, 0.0));

  double total = 0.0;
  std::vector<double> mid(K + 1);
  for (int i = 0; i < S; ++i) {
    double weighted = 0.0;  // sum_k (k-2) b_k over k >= 1
    for (int k = 1; k <= K; ++k) {
      const double bk = -(path.zeta[k][i + 1] - path.zeta[k][i]) / dt;
      result.b[k][i] = bk;
      weighted += (k - 2.0) * bk;
    }
    const double dpsi = (path.psi[i + 1] - path.psi[i]) / dt;
    result.b[0][i] = 0.5 * (weighted - dpsi);

    mid[0] = 0.5 * (path.zeta0[i] + path.zeta0[i + 1]);
    for (int k = 1; k <= K; ++k)
      mid[k] = 0.5 * (path.zeta[k][i] + path.zeta[k][i + 1]);
    const BandRates rates = band_rates(mid[0], mid);

    for (int k = 0; k <= K; ++k) {
      const double bk = result.b[k][i];
      if (bk < -num_tol) {
        result.value = std::numeric_limits<double>::infinity();
        result.report.feasible = false;
        result.report.reason = "negative consumption k=" + std::to_string(k);
        result.report.index = i;
        return result;
      }
      const double width = rates.band[k];
      if (width <= num_tol) {
        // Exponential tails drain through faint bands with b ~ phi * width,
        // which is fine; only consumption no moderate tilt could deliver
        // marks a genuinely dead band.
        if (bk > num_tol && bk > 1e6 * width) {
          result.value = std::numeric_limits<double>::infinity();
          result.report.feasible = false;
          result.report.reason = "consumption on an empty band k=" + std::to_string(k);
          result.report.index = i;
          return result;
        }
        if (bk <= num_tol) {
          result.phi[k][i] = 1.0;  // dormant band, zero cost by convention
          continue;
        }
      }
      const double phi = std::max(bk, 0.0) / width;
      result.phi[k][i] = phi;
      result.max_phi = std::max(result.max_phi, phi);
      total += width * ell(phi) * dt;
    }
  }
  result.feasible = true;
  result.value = total;
  return result;
}

}  // namespace

RateResult optimal_band_control(const PathPair& path, double num_tol,
                                FeasibilityOptions opts) {
  return evaluate_rate(path, num_tol, opts, false);
}

RateResult rate_integral(const PathPair& path, double num_tol,
                         FeasibilityOptions opts) {
  return evaluate_rate(path, num_tol, opts, true);
}

double cost_of_control(const PathPair& path, const BandControl& control,
                       double num_tol) {
  control.validate();
  const RateResult inverted = optimal_band_control(path, num_tol);
  const int S = path.slices();
  const int K = path.K;
  const double dt = path.dt();
  std::vector<double> mid(K + 1);
  double total = 0.0;
  for (int i = 0; i < S; ++i) {
    const double t_mid = 0.5 * (path.t[i] + path.t[i + 1]);
    const int piece = control.piece_at(t_mid);
    mid[0] = 0.5 * (path.zeta0[i] + path.zeta0[i + 1]);
    for (int k = 1; k <= K; ++k)
      mid[k] = 0.5 * (path.zeta[k][i] + path.zeta[k][i + 1]);
    const BandRates rates = band_rates(mid[0], mid);
    for (int k = 0; k <= K; ++k) {
      const double width = rates.band[k];
      const double delivered = width * control.live_mean(piece, k);
      const double wanted = std::max(inverted.b[k][i], 0.0);
      // Forward differences vs midpoint interpolation agree to O(dt^2), so
      // the reproduction check carries that consistency slack.
      const double slack = num_tol * (1.0 + std::abs(wanted)) + dt * dt;
      if (std::abs(delivered - wanted) > slack)
        fail(ErrorCode::ControlPathMismatch,
             "slice " + std::to_string(i) + " type " + std::to_string(k) +
                 " delivers " + std::to_string(delivered) + " instead of " +
                 std::to_string(wanted));
      if (width <= 0) continue;
      // ell(1) = 0, so only explicit segments can contribute.
      for (const auto& seg : control.segments(piece, k)) {
        const double y_lo = std::min(seg.lo * width, 1.0);
        const double y_hi = std::min(seg.hi * width, 1.0);
        if (y_hi > y_lo) total += (y_hi - y_lo) * ell(seg.value) * dt;
      }
    }
  }
  return total;
}

BandControl perturb_bands(const BandControl& control, double eps,
                          const PathPair& path) {
  if (eps <= 0 || eps >= 1)
    fail(ErrorCode::InvalidControl, "eps must lie in (0,1)");
  control.validate();
  BandControl out;
  const int K = std::max(control.cutoff(), path.K);
  for (int piece = 0; piece < control.pieces(); ++piece) {
    out.add_piece(control.piece_start(piece));
    for (int k = 0; k <= K; ++k) {
      const auto& segs = control.segments(piece, k);
      double value = 1.0;
      if (!segs.empty()) {
        if (segs.size() != 1 || segs[0].lo != 0.0 || segs[0].hi < 1.0)
          fail(ErrorCode::InvalidControl,
               "support shrinking needs a band-constant control");
        value = segs[0].value;
      }
      out.set_segments(piece, k,
                       {BandSegment{0.0, 1.0 - eps, value / (1.0 - eps)},
                        BandSegment{1.0 - eps, 1.0 + eps, 0.0}});
    }
  }
  out.set_cutoff(K);
  out.validate();
  return out;
}

}  // namespace cfgx

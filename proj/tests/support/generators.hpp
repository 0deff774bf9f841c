#pragma once

// Test-only generators: random degree models/sequences and deterministic
// controlled trajectories used as independent fixtures for the rate tests.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "cfgexplore/ctmc.hpp"
#include "cfgexplore/degree_model.hpp"
#include "cfgexplore/rate_fn.hpp"
#include "cfgexplore/rng.hpp"

namespace cfgx::testing {

// Disambiguated table constructor (single-entry brace lists are otherwise
// ambiguous with the sequence overload).
inline DegreeModel table_model(const std::vector<std::pair<int, double>>& t) {
  return build_model(t);
}

// Random degree distribution with support in {1..max_degree}.
inline DegreeModel random_model(Rng& rng, int max_degree = 10) {
  std::vector<std::pair<int, double>> table;
  double total = 0;
  for (int k = 1; k <= max_degree; ++k) {
    const double w = rng.uniform01() < 0.4 ? 0.0 : rng.uniform01();
    if (w > 0) {
      table.push_back({k, w});
      total += w;
    }
  }
  if (table.empty()) {
    table.push_back({2, 1.0});
    total = 1.0;
  }
  for (auto& [k, w] : table) w /= total;
  return build_model(table);
}

// Random degree sequence with even total, degrees in {1..max_degree}.
inline DegreeSequence random_sequence(Rng& rng, int n_max = 200, int max_degree = 8) {
  const int n = 2 + static_cast<int>(rng.below(n_max - 1));
  std::vector<int> degrees(n);
  long long total = 0;
  for (int i = 0; i < n; ++i) {
    degrees[i] = 1 + static_cast<int>(rng.below(max_degree));
    total += degrees[i];
  }
  if (total % 2 != 0) {
    if (degrees[0] < max_degree) degrees[0]++;
    else degrees[0]--;
  }
  return DegreeSequence::from(std::move(degrees));
}

// Euler-integrated trajectory of the band-tilted deterministic flow:
//   zeta_k' = -r_k(zeta) phi_k(t),  psi' = -2 r_0 phi_0 + sum (k-2) r_k phi_k,
// with zeta0 maintained as the reflection of the sampled psi, so the result
// is admissible on its own grid by construction. phi(k, t) >= 0.
inline PathPair controlled_path(const DegreeModel& model, double T, int grid_points,
                                const std::function<double(int, double)>& phi) {
  const int K = model.max_degree();
  PathPair path;
  path.K = K;
  path.t.resize(grid_points);
  path.psi.resize(grid_points);
  path.zeta0.resize(grid_points);
  path.zeta.assign(K + 1, std::vector<double>(grid_points, 0.0));

  std::vector<double> z(K + 1, 0.0);
  for (int k = 1; k <= K; ++k) z[k] = model.p[k];
  double psi = 0.0, running_min = 0.0, zeta0 = 0.0;
  const double dt = T / (grid_points - 1);

  // Midpoint (RK2) stepping: the realized slopes then match the slice
  // midpoint rates to O(dt^2), the accuracy the rate inversion assumes.
  auto rates_at = [&](const std::vector<double>& zk, double z0) {
    std::vector<double> state = zk;
    state[0] = z0;
    return band_rates(z0, state);
  };

  for (int i = 0; i < grid_points; ++i) {
    const double t = i * dt;
    path.t[i] = t;
    path.psi[i] = psi;
    path.zeta0[i] = zeta0;
    for (int k = 1; k <= K; ++k) path.zeta[k][i] = z[k];
    if (i + 1 == grid_points) break;

    const double t_mid = t + 0.5 * dt;
    // Half Euler step to estimate the midpoint state.
    const BandRates left = rates_at(z, zeta0);
    std::vector<double> z_mid = z;
    double psi_mid = psi;
    if (left.r > 1e-12) {
      double dpsi = -2.0 * left.band[0] * phi(0, t);
      for (int k = 1; k <= K; ++k) {
        const double c = std::min(left.band[k] * phi(k, t), z[k] / dt);
        z_mid[k] = std::max(0.0, z[k] - 0.5 * dt * c);
        dpsi += (k - 2.0) * c;
      }
      psi_mid += 0.5 * dt * dpsi;
    }
    const double zeta0_mid = psi_mid - std::min(running_min, std::min(psi_mid, 0.0));
    // Full step with midpoint rates.
    const BandRates mid = rates_at(z_mid, std::max(zeta0_mid, 0.0));
    double dpsi = 0.0;
    if (mid.r > 1e-12 && left.r > 1e-12) {
      dpsi = -2.0 * mid.band[0] * phi(0, t_mid);
      for (int k = 1; k <= K; ++k) {
        const double consume =
            std::min(mid.band[k] * phi(k, t_mid), z[k] / dt);  // keep zeta_k >= 0
        z[k] -= consume * dt;
        if (z[k] < 1e-15) z[k] = 0.0;
        dpsi += (k - 2.0) * consume;
      }
    }
    psi += dpsi * dt;
    running_min = std::min(running_min, std::min(psi, 0.0));
    zeta0 = psi - running_min;
    if (zeta0 < 1e-15) zeta0 = 0.0;
  }
  return path;
}

// Nominal flow (phi == 1); numerically the zero of the action.
inline PathPair nominal_path(const DegreeModel& model, double T, int grid_points) {
  return controlled_path(model, T, grid_points, [](int, double) { return 1.0; });
}

// Random band-constant tilt, piecewise constant over `blocks` time blocks,
// values within [1-spread, 1+spread] (clamped positive).
inline PathPair tilted_path(const DegreeModel& model, double T, int grid_points,
                            Rng& rng, double spread, int blocks = 4) {
  const int K = model.max_degree();
  std::vector<std::vector<double>> tilt(blocks, std::vector<double>(K + 1, 1.0));
  for (int b = 0; b < blocks; ++b)
    for (int k = 0; k <= K; ++k)
      tilt[b][k] = std::max(0.05, 1.0 + spread * (2.0 * rng.uniform01() - 1.0));
  return controlled_path(model, T, grid_points, [=](int k, double t) {
    int b = std::min(blocks - 1, static_cast<int>(t / T * blocks));
    return tilt[b][k];
  });
}

// Slice-aligned band-constant control realizing a rate inversion.
inline BandControl control_from_rate(const RateResult& rate, const PathPair& path) {
  BandControl control;
  for (int i = 0; i < path.slices(); ++i) {
    control.add_piece(path.t[i]);
    for (int k = 0; k <= path.K; ++k)
      control.set_value(i, k, rate.phi[k][i]);
  }
  control.set_cutoff(path.K);
  return control;
}

}  // namespace cfgx::testing

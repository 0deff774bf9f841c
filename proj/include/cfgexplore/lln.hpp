#pragma once

#include <vector>

#include "cfgexplore/degree_model.hpp"

namespace cfgx {

// Criticality report: the sign of sum_k k(k-2) p_k splits the regimes; rho
// is the fixed point of G1 in [0,1) (0 when p_1 = 0) and tau = (mu/2)(1-rho^2)
// marks the end of the giant-component phase. rho/tau are meaningful only
// when supercritical.
struct PhaseReport {
  double drift = 0;
  bool supercritical = false;
  double rho = 0;
  double tau = 0;
};

PhaseReport phase_and_rho(const DegreeModel& m);

// f_s(t) = F_s^{-1}(t) where F_s(x) = G0(s) - G0(s x); returns 0 for
// t > G0(s). Strictly decreasing in t until it hits zero; f_s(0) = 1.
double invert_F(const DegreeModel& m, double s, double t);

// Fluid-limit trajectory on a uniform grid: zeta0, zeta_k for k in the
// degree support, and the drift integral psi with psi(0) = 0.
struct LLNPath {
  std::vector<double> t;
  std::vector<double> zeta0;
  std::vector<double> psi;
  std::vector<std::vector<double>> zeta;  // zeta[k][i], k = 0..K (row 0 unused)
  int K = 0;
  double tau_zeta = 0;  // absorption time: first t with r(zeta) = 0
};

// Pointwise closed-form evaluation for the regime of `phase`. Fills
// zeta_k[1..K] and returns zeta0(t).
double lln_eval(const DegreeModel& m, const PhaseReport& phase, double t,
                std::vector<double>& zeta_k);

// Closed-form trajectory; psi is assembled from the exact telescoping term
// plus trapezoidal quadrature of -2 r_0(zeta).
LLNPath lln_path(const DegreeModel& m, double T, int grid_points);

// Independent check: integrates zeta_k' = -r_k(zeta) with
// zeta0' = -2 + sum_k k r_k(zeta) reflected at zero (classical RK4, fixed
// step, freeze once r(zeta) <= r_tol).
LLNPath lln_ode_oracle(const DegreeModel& m, double T, int grid_points,
                       double r_tol = 1e-12);

}  // namespace cfgx

#pragma once

#include <limits>
#include <string>
#include <vector>

#include "cfgexplore/ctmc.hpp"
#include "cfgexplore/lln.hpp"

namespace cfgx {

// Relative-entropy integrand x log x - x + 1 (natural log, 0 log 0 = 0).
double ell(double x);

// One-dimensional reflection: zeta0(t) = psi(t) - min(inf_{s<=t} psi(s), 0)
// and the regulator eta = zeta0 - psi (nondecreasing, starts at 0).
struct SkorokhodResult {
  std::vector<double> zeta0;
  std::vector<double> eta;
};
SkorokhodResult skorokhod_map(const std::vector<double>& psi);

// Candidate trajectory pair on a uniform grid.
struct PathPair {
  std::vector<double> t;
  std::vector<double> psi;
  std::vector<double> zeta0;
  std::vector<std::vector<double>> zeta;  // zeta[k][i], k = 0..K (row 0 unused)
  int K = 0;

  int slices() const { return static_cast<int>(t.size()) - 1; }
  double dt() const { return t.size() > 1 ? t[1] - t[0] : 0.0; }
};

PathPair to_path_pair(const LLNPath& path);

struct FeasibilityOptions {
  double reflect_tol = 1e-6;  // |zeta0 - Gamma(psi)| allowance
  double mono_tol = 1e-9;     // monotonicity / nonnegativity slack
  double init_tol = 1e-9;     // psi(0), zeta_k(0) allowance
  double absorb_tol = 1e-9;   // r(zeta) <= absorb_tol declares absorption
};

struct FeasibilityReport {
  bool feasible = true;
  std::string reason;
  int index = -1;      // grid index of the first violation
  double tau_zeta = 0; // detected absorption time (= T if none)
};

// Grid check of the admissibility conditions: psi starts at zero, zeta0 is
// the reflection of psi, each zeta_k starts at p_k (when expected_p is
// given), is nonincreasing and nonnegative, and the whole vector stays at
// zero after absorption.
FeasibilityReport feasibility(const PathPair& path,
                              const std::vector<double>* expected_p = nullptr,
                              FeasibilityOptions opts = {});

struct RateResult {
  bool feasible = false;
  double value = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> phi;  // phi[k][slice]
  std::vector<std::vector<double>> b;    // consumption rates b[k][slice]
  double tau_zeta = 0;
  double max_phi = 0;
  FeasibilityReport report;
};

// Per-slice inversion of the path into band-constant intensities:
// b_k = -(zeta_k(t+dt)-zeta_k(t))/dt, b_0 = (sum_k (k-2) b_k - dpsi/dt)/2,
// phi_k = b_k / r_k at the slice midpoint. Sets the infinity flag when a
// consumption rate is negative or sits on an empty band.
RateResult optimal_band_control(const PathPair& path, double num_tol = 1e-9,
                                FeasibilityOptions opts = {});

// Action of the path: sum_k sum_slices r_k * ell(phi_k) * dt, infinite off
// the admissible set. The minimizing profile is band-constant, so this is
// the infimum over intensities delivering the path.
RateResult rate_integral(const PathPair& path, double num_tol = 1e-9,
                         FeasibilityOptions opts = {});

// Cost of a specific control that delivers the same consumption rates as
// the path (checked per slice; throws ControlPathMismatch otherwise).
// Always >= rate_integral(path).value by convexity of ell.
double cost_of_control(const PathPair& path, const BandControl& control,
                       double num_tol = 1e-9);

// Support-shrinking perturbation: value phi/(1-eps) on [0,(1-eps)r_k), 0 on
// [(1-eps)r_k,(1+eps)r_k), 1 beyond. Preserves every consumption rate and
// inflates the cost by at most (cost + 2T) log(1/(1-eps)) + T eps.
BandControl perturb_bands(const BandControl& control, double eps,
                          const PathPair& path);

}  // namespace cfgx

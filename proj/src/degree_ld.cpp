#include "cfgexplore/degree_ld.hpp"

#include <algorithm>
#include <cmath>

namespace cfgx {

void DegreeConfigTarget::validate() const {
  double edge_sum = 0, vertex_sum = 0;
  for (int k = 1; k < static_cast<int>(q.size()); ++k) {
    if (q[k] < 0)
      fail(ErrorCode::InvalidTarget, "q_" + std::to_string(k) + " is negative");
    if (q[k] > model.p_at(k) + 1e-12)
      fail(ErrorCode::InvalidTarget,
           "q_" + std::to_string(k) + " exceeds p_" + std::to_string(k));
    edge_sum += k * q[k];
    vertex_sum += q[k];
  }
  if (vertex_sum <= 0) fail(ErrorCode::InvalidTarget, "q has no mass");
  if (edge_sum <= 2 * vertex_sum)
    fail(ErrorCode::InvalidTarget,
         "sum k q_k must exceed 2 sum q_k (more edges than vertices)");
}

bool DegreeConfigTarget::bounds_match() const {
  return model.p_at(1) == 0.0 && model.p_at(2) == 0.0;
}

DegreeConfigTarget make_target(const DegreeModel& model,
                               const std::vector<std::pair<int, double>>& entries,
                               double eps) {
  DegreeConfigTarget target;
  target.model = model;
  target.eps = eps;
  int K = 0;
  for (const auto& [k, v] : entries)
    if (v != 0.0) K = std::max(K, k);
  target.q.assign(K + 1, 0.0);
  for (const auto& [k, v] : entries) {
    if (k <= 0) fail(ErrorCode::InvalidTarget, "degree entries must be positive");
    if (k <= K) target.q[k] += v;
  }
  target.validate();
  return target;
}

double beta_residual(const DegreeConfigTarget& target, double beta) {
  // F(a) = sum_{k>=3} (a - a^{k-1})/(1 - a^k) * k q_k - q_1.
  double acc = -target.q_at(1);
  for (int k = 3; k < static_cast<int>(target.q.size()); ++k) {
    if (target.q[k] <= 0) continue;
    const double ak = std::pow(beta, k);
    const double num = beta - std::pow(beta, k - 1);
    acc += num / (1.0 - ak) * k * target.q[k];
  }
  return acc;
}

double solve_beta(const DegreeConfigTarget& target) {
  target.validate();
  if (target.q_at(1) <= 0) return 0.0;
  double lo = 1e-12, hi = 1.0 - 1e-12;
  double f_lo = beta_residual(target, lo);
  double f_hi = beta_residual(target, hi);
  if (!(f_lo < 0) || !(f_hi > 0))
    fail(ErrorCode::NoSignChange,
         "endpoint signs F(0+)=" + std::to_string(f_lo) +
             ", F(1-)=" + std::to_string(f_hi));
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (beta_residual(target, mid) < 0) lo = mid;
    else hi = mid;
  }
  const double beta = 0.5 * (lo + hi);
  if (std::abs(beta_residual(target, beta)) > 1e-10)
    fail(ErrorCode::NoConvergence, "beta residual too large");
  return beta;
}

double entropy_H(const std::vector<double>& v) {
  double edge_mass = 0, term_sum = 0;
  bool any = false;
  for (int k = 1; k < static_cast<int>(v.size()); ++k) {
    if (v[k] < 0) fail(ErrorCode::NegativeInput, "entries must be nonnegative");
    if (v[k] > 0) {
      any = true;
      term_sum += v[k] * std::log(v[k]);
      edge_mass += k * v[k];
    }
  }
  if (!any || edge_mass <= 0) fail(ErrorCode::AllZero, "entropy of the zero vector");
  const double half = 0.5 * edge_mass;
  return term_sum - half * std::log(half);
}

double coeff_K_at(const DegreeConfigTarget& target, double beta) {
  if (beta == 0.0) return 0.0;
  double edge_sum = 0, correction = 0;
  for (int k = 1; k < static_cast<int>(target.q.size()); ++k) {
    if (target.q[k] <= 0) continue;
    edge_sum += k * target.q[k];
    correction += target.q[k] * std::log(1.0 - std::pow(beta, k));
  }
  return 0.5 * edge_sum * std::log(1.0 - beta * beta) - correction;
}

double coeff_K(const DegreeConfigTarget& target) {
  return coeff_K_at(target, solve_beta(target));
}

DegreeRateReport rate_I1(const DegreeConfigTarget& target) {
  target.validate();
  const int K = std::max(target.max_degree(), target.model.max_degree());
  std::vector<double> q_full(K + 1, 0.0), residue(K + 1, 0.0);
  bool residue_zero = true;
  for (int k = 1; k <= K; ++k) {
    q_full[k] = target.q_at(k);
    residue[k] = target.model.p_at(k) - q_full[k];
    if (residue[k] < -1e-12)
      fail(ErrorCode::InvalidTarget, "p - q is negative at k=" + std::to_string(k));
    residue[k] = std::max(residue[k], 0.0);
    if (residue[k] > 0) residue_zero = false;
  }
  std::vector<double> p_full(K + 1, 0.0);
  for (int k = 1; k <= K; ++k) p_full[k] = target.model.p_at(k);

  DegreeRateReport report;
  report.beta = solve_beta(target);
  report.K = coeff_K_at(target, report.beta);
  report.H_q = entropy_H(q_full);
  report.H_pq = residue_zero ? 0.0 : entropy_H(residue);  // H(0) = 0 convention
  report.H_p = entropy_H(p_full);
  report.I1 = report.H_q + report.H_pq - report.H_p + report.K;
  report.bounds_match = target.bounds_match();
  return report;
}

}  // namespace cfgx

#pragma once

#include <vector>

#include "cfgexplore/degree_model.hpp"

namespace cfgx {

// Target degree configuration q for the one-component decay rate: its
// entries satisfy 0 <= q_k <= p_k and sum_k k q_k > 2 sum_k q_k (strictly
// more edges than vertices in the target component).
struct DegreeConfigTarget {
  std::vector<double> q;  // q[k], k = 0..K (q[0] == 0)
  DegreeModel model;      // reference distribution p
  double eps = 0.02;      // event half-width used by the estimators

  double q_at(int k) const {
    return (k >= 0 && k < static_cast<int>(q.size())) ? q[k] : 0.0;
  }
  int max_degree() const { return static_cast<int>(q.size()) - 1; }

  // Throws InvalidTarget naming the violated constraint.
  void validate() const;
  // True when both decay bounds coincide (requires p_1 = p_2 = 0).
  bool bounds_match() const;
};

DegreeConfigTarget make_target(const DegreeModel& model,
                               const std::vector<std::pair<int, double>>& entries,
                               double eps = 0.02);

// Root of F(a) = sum_{k>=3} (a - a^{k-1})/(1 - a^k) k q_k - q_1 on (0,1)
// when q_1 > 0 (F is increasing with F(0+) = -q_1 < 0), and 0 otherwise.
double solve_beta(const DegreeConfigTarget& target);
double beta_residual(const DegreeConfigTarget& target, double beta);

// H(v) = sum_k v_k log v_k - (1/2 sum_k k v_k) log(1/2 sum_k k v_k).
// Not a probability entropy; may be negative. Throws AllZero when v == 0.
double entropy_H(const std::vector<double>& v);

// K(q) = (1/2 sum k q_k) log(1 - beta^2) - sum_k q_k log(1 - beta^k).
double coeff_K(const DegreeConfigTarget& target);
double coeff_K_at(const DegreeConfigTarget& target, double beta);

struct DegreeRateReport {
  double beta = 0;
  double K = 0;
  double H_q = 0;
  double H_pq = 0;  // H(p - q); 0 by convention when p == q
  double H_p = 0;
  double I1 = 0;
  bool bounds_match = false;
};

// Decay rate I1(q) = H(q) + H(p-q) - H(p) + K(q).
DegreeRateReport rate_I1(const DegreeConfigTarget& target);

}  // namespace cfgx

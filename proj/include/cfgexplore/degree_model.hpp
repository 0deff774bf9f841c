#pragma once

#include <utility>
#include <vector>

#include "cfgexplore/errors.hpp"

namespace cfgx {

// Degree sequence d_1..d_n. Every d_i >= 1 and the total degree is even.
struct DegreeSequence {
  std::vector<int> degrees;

  long long half_edges() const;  // 2m
  long long edge_count() const;  // m
  int max_degree() const;

  // Validates the invariants; throws EmptyInput / ZeroDegree / OddDegreeSum.
  static DegreeSequence from(std::vector<int> degrees);
};

// Finite-support degree distribution with derived moments and the step
// bound for exploration runs. Immutable after construction and safe to
// share across worker threads.
struct DegreeModel {
  std::vector<double> p;          // p[k] for k = 0..K; p[0] == 0
  std::vector<long long> counts;  // n_k when built from a sequence, else empty
  long long n = 0;                // vertex count; 0 when built from a table
  double mu = 0;                  // sum_k k p_k
  double nu = 0;                  // sum_k k(k-1) p_k / mu
  double drift = 0;               // sum_k k(k-2) p_k
  double eps_p = 1.0;             // exponent used in the moment report
  double moment_report = 0;       // sum_k p_k k^{1+eps_p}
  double tail_mass = 0;           // mass dropped before renormalization
  long long step_bound = 0;       // 1 + floor(mu/2); runs take <= n*step_bound steps

  int max_degree() const { return static_cast<int>(p.size()) - 1; }
  double p_at(int k) const {
    return (k >= 0 && k < static_cast<int>(p.size())) ? p[k] : 0.0;
  }
};

DegreeModel build_model(const DegreeSequence& seq, double tail_tol = 1e-12,
                        double eps_p = 1.0);

// Table of (k, weight) records with nonnegative entries summing to 1 within
// tail_tol. Entries are renormalized; the defect is recorded as tail_mass.
DegreeModel build_model(const std::vector<std::pair<int, double>>& table,
                        double tail_tol = 1e-12, double eps_p = 1.0);

enum class Gen { G0, G1 };

// G0(z) = sum_k p_k z^k, G1(z) = sum_k k p_k z^{k-1} / mu, both on [0,1].
double eval_generating(const DegreeModel& m, double z, Gen which);

// Deterministic n-vertex realization of the distribution: largest-remainder
// rounding of n*p_k with the parity of the degree total fixed by promoting
// one vertex of the smallest occupied degree.
DegreeSequence realize_sequence(const DegreeModel& m, long long n);

}  // namespace cfgx

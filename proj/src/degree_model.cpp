#include "cfgexplore/degree_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cfgx {

long long DegreeSequence::half_edges() const {
  return std::accumulate(degrees.begin(), degrees.end(), 0LL);
}

long long DegreeSequence::edge_count() const { return half_edges() / 2; }

int DegreeSequence::max_degree() const {
  return degrees.empty() ? 0 : *std::max_element(degrees.begin(), degrees.end());
}

DegreeSequence DegreeSequence::from(std::vector<int> degrees) {
  if (degrees.empty()) fail(ErrorCode::EmptyInput, "degree sequence is empty");
  long long total = 0;
  for (int d : degrees) {
    if (d <= 0) fail(ErrorCode::ZeroDegree, "degree " + std::to_string(d) + " is not positive");
    total += d;
  }
  if (total % 2 != 0)
    fail(ErrorCode::OddDegreeSum, "total degree " + std::to_string(total) + " is odd");
  return DegreeSequence{std::move(degrees)};
}

namespace {

void finalize_moments(DegreeModel& m) {
  const int K = m.max_degree();
  double mu = 0, second = 0, drift = 0, moment = 0;
  for (int k = 1; k <= K; ++k) {
    const double pk = m.p[k];
    mu += k * pk;
    second += static_cast<double>(k) * (k - 1) * pk;
    drift += static_cast<double>(k) * (k - 2) * pk;
    moment += pk * std::pow(static_cast<double>(k), 1.0 + m.eps_p);
  }
  m.mu = mu;
  m.nu = mu > 0 ? second / mu : 0.0;
  m.drift = drift;
  m.moment_report = moment;
  m.step_bound = 1 + static_cast<long long>(std::floor(mu / 2.0));
}

}  // namespace

DegreeModel build_model(const DegreeSequence& seq, double tail_tol, double eps_p) {
  (void)tail_tol;  // sequences are exact; nothing to truncate
  DegreeSequence checked = DegreeSequence::from(seq.degrees);
  const int K = checked.max_degree();
  DegreeModel m;
  m.eps_p = eps_p;
  m.n = static_cast<long long>(checked.degrees.size());
  m.counts.assign(K + 1, 0);
  for (int d : checked.degrees) m.counts[d]++;
  m.p.assign(K + 1, 0.0);
  for (int k = 1; k <= K; ++k)
    m.p[k] = static_cast<double>(m.counts[k]) / static_cast<double>(m.n);
  finalize_moments(m);
  return m;
}

DegreeModel build_model(const std::vector<std::pair<int, double>>& table,
                        double tail_tol, double eps_p) {
  if (table.empty()) fail(ErrorCode::EmptyInput, "probability table is empty");
  int K = 0;
  for (const auto& [k, w] : table) {
    if (k <= 0) fail(ErrorCode::ZeroDegree, "degree " + std::to_string(k) + " is not positive");
    if (w < 0) fail(ErrorCode::NegativeInput, "negative probability for degree " + std::to_string(k));
    if (w > 0) K = std::max(K, k);
  }
  if (K == 0) fail(ErrorCode::EmptyInput, "probability table has no mass");

  DegreeModel m;
  m.eps_p = eps_p;
  m.p.assign(K + 1, 0.0);
  for (const auto& [k, w] : table)
    if (k <= K) m.p[k] += w;
  const double total = std::accumulate(m.p.begin(), m.p.end(), 0.0);
  if (std::abs(total - 1.0) > tail_tol)
    fail(ErrorCode::InvalidTarget,
         "probability table sums to " + std::to_string(total) + ", outside tolerance");
  m.tail_mass = std::max(0.0, 1.0 - total);
  for (double& pk : m.p) pk /= total;
  finalize_moments(m);
  return m;
}

double eval_generating(const DegreeModel& m, double z, Gen which) {
  if (z < 0.0 || z > 1.0)
    fail(ErrorCode::NegativeInput, "generating functions are evaluated on [0,1]");
  const int K = m.max_degree();
  if (which == Gen::G0) {
    double acc = 0, zk = 1;
    for (int k = 1; k <= K; ++k) {
      zk *= z;  // z^k
      acc += m.p[k] * zk;
    }
    return acc;
  }
  double acc = 0, zk = 1;  // z^{k-1}
  for (int k = 1; k <= K; ++k) {
    acc += k * m.p[k] * zk;
    zk *= z;
  }
  return m.mu > 0 ? acc / m.mu : 0.0;
}

DegreeSequence realize_sequence(const DegreeModel& m, long long n) {
  if (n <= 0) fail(ErrorCode::EmptyInput, "vertex count must be positive");
  const int K = m.max_degree();
  std::vector<long long> counts(K + 1, 0);
  std::vector<std::pair<double, int>> remainders;
  long long assigned = 0;
  for (int k = 1; k <= K; ++k) {
    const double exact = m.p[k] * static_cast<double>(n);
    counts[k] = static_cast<long long>(std::floor(exact));
    assigned += counts[k];
    remainders.push_back({exact - std::floor(exact), -k});
  }
  std::sort(remainders.rbegin(), remainders.rend());
  for (auto [frac, negk] : remainders) {
    if (assigned >= n) break;
    (void)frac;
    counts[-negk]++;
    assigned++;
  }
  long long total = 0;
  for (int k = 1; k <= K; ++k) total += static_cast<long long>(k) * counts[k];
  if (total % 2 != 0) {
    // Promote one vertex of the smallest occupied degree by 1.
    for (int k = 1; k <= K; ++k) {
      if (counts[k] > 0) {
        counts[k]--;
        if (k + 1 > K) counts.push_back(0);
        counts[k + 1]++;
        break;
      }
    }
  }
  std::vector<int> degrees;
  degrees.reserve(n);
  for (int k = 1; k < static_cast<int>(counts.size()); ++k)
    for (long long i = 0; i < counts[k]; ++i) degrees.push_back(k);
  return DegreeSequence::from(std::move(degrees));
}

}  // namespace cfgx

#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "cfgexplore/eea.hpp"
#include "cfgexplore/graph_gen.hpp"
#include "cfgexplore/rng.hpp"

namespace cfgx {

// Thinning-band geometry at a state x = (x0, x1, ..., xK):
//   r(x)   = (x0)^+ + sum_k k x_k      (remaining half-edge mass)
//   band[0] = (x0)^+ / r, band[k] = k x_k / r, all zero when r == 0.
struct BandRates {
  double r = 0;
  std::vector<double> band;  // index 0..K, sums to 1 whenever r > 0
};

BandRates band_rates(double x0, const std::vector<double>& xk);

// Piece of a jump-type intensity profile, in units of the live band width:
// the profile takes `value` for u in [lo, hi), where y = u * r_k(x).
struct BandSegment {
  double lo = 0;
  double hi = 1;
  double value = 1;
};

// Piecewise-constant-in-time intensity tilt, constant (or stepwise, for
// shrunk-support profiles) across each type's thinning band. Types above
// `cutoff` and uncovered band fractions keep intensity 1.
class BandControl {
 public:
  BandControl() = default;

  static BandControl nominal();
  // Same constant value on every band of every type k <= cutoff.
  static BandControl constant(double value, int cutoff);
  // Per-type constant values; values[k] applies on type k's band.
  static BandControl per_type(const std::vector<double>& values);

  // Appends a time piece starting at `start`; starts must be increasing and
  // the first must be 0. Returns the piece index.
  int add_piece(double start);
  void set_segments(int piece, int k, std::vector<BandSegment> segments);
  void set_value(int piece, int k, double value);

  int pieces() const { return static_cast<int>(starts_.size()); }
  int cutoff() const { return cutoff_; }
  void set_cutoff(int cutoff) { cutoff_ = cutoff; }
  double piece_start(int piece) const { return starts_[piece]; }
  double piece_end(int piece) const {
    return piece + 1 < pieces() ? starts_[piece + 1]
                                : std::numeric_limits<double>::infinity();
  }
  int piece_at(double t) const;

  const std::vector<BandSegment>& segments(int piece, int k) const;
  // Intensity at band fraction u of type k's band (u >= 0; u >= 1 is off
  // the live band). Uncovered fractions default to 1.
  double value_at(int piece, int k, double u) const;
  // Mean intensity over the live band, integral of the profile on u in [0,1).
  double live_mean(int piece, int k) const;
  // Smallest intensity on the live band (0 if any covered stretch is 0).
  double live_min(int piece, int k) const;

  // Throws InvalidControl on negative values or malformed segments.
  void validate() const;

 private:
  std::vector<double> starts_;
  // seg_[piece][k]; empty vector means intensity 1 everywhere.
  std::vector<std::vector<std::vector<BandSegment>>> seg_;
  int cutoff_ = 0;
};

// One jump of the continuous-time exploration: time, type, and the band
// fraction u in [0,1) at which the driving point landed.
struct CTJump {
  double t = 0;
  int k = 0;
  double u = 0;
};

// Sample path of the scaled process on [0, horizon]. State bookkeeping is
// exact: counts live on the 1/n lattice, so the identity X0 = Y + eta and
// the floor X0 >= -1/n hold without rounding drift.
struct CTPath {
  long long n = 0;
  int K = 0;
  std::vector<long long> initial_sleepers;  // V_k(0) = n_k
  std::vector<CTJump> jumps;
  double horizon = 0;
  double stop_time = 0;
  std::optional<double> absorption_time;
  // Time integral of band[k] over [0, stop], split by control piece.
  std::vector<std::vector<double>> band_time;  // [piece][k]
  // Filled when SimulateOptions::realize_graph is set.
  Multigraph graph;
  std::vector<ComponentRecord> components;

  // Frame-by-frame replay. The visitor receives, after each jump:
  //   (jump index, time, A, V, wake_jumps, eta_steps)
  // where A is the active half-edge count, V the sleeper counts,
  // and eta_steps counts jumps fired while x0 < 0 (eta = 2*eta_steps/n).
  template <typename Visitor>
  void replay(Visitor&& visit) const {
    long long a = 0;
    std::vector<long long> v = initial_sleepers;
    long long eta_steps = 0;
    for (std::size_t j = 0; j < jumps.size(); ++j) {
      const auto& jump = jumps[j];
      if (jump.k == 0) {
        a -= 2;
      } else if (a == 0) {  // x0 < 0: reflected wake
        a += jump.k;
        v[jump.k]--;
        eta_steps++;
      } else {
        a += jump.k - 2;
        v[jump.k]--;
      }
      visit(j, jump.t, a, v, eta_steps);
    }
  }
};

struct SimulateOptions {
  bool realize_graph = false;
};

// Exact piecewise-Gillespie simulation of the controlled process: between
// jumps the type-k hazard is n * band[k] * (mean tilt on the band), and the
// exponential clock is carried across control breakpoints. The nominal
// control (all tilts 1) gives holding times Exp(n) while r > 0 and the jump
// chain of the discrete exploration.
CTPath simulate(const DegreeSequence& seq, double T, const BandControl& control,
                Rng& rng, SimulateOptions opts = {});

// Likelihood ratio d(nominal)/d(controlled) along the path:
//   L = prod_jumps 1/phi_k(t,u) * exp(n * sum_k int_0^stop band_k(X) (phi_k - 1) dt).
// Expectations of L * 1_A under the controlled law equal nominal
// probabilities for events A measurable from the path.
double importance_weight(const CTPath& path, const BandControl& control, long long n);

}  // namespace cfgx

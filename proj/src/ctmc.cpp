#include "cfgexplore/ctmc.hpp"

#include <algorithm>
#include <cmath>

#include "half_edge_explorer.hpp"

namespace cfgx {

BandRates band_rates(double x0, const std::vector<double>& xk) {
  BandRates out;
  out.band.assign(xk.size(), 0.0);
  double r = std::max(x0, 0.0);
  for (int k = 1; k < static_cast<int>(xk.size()); ++k) r += k * xk[k];
  out.r = r;
  if (r <= 0) return out;
  out.band[0] = std::max(x0, 0.0) / r;
  for (int k = 1; k < static_cast<int>(xk.size()); ++k)
    out.band[k] = k * xk[k] / r;
  return out;
}

BandControl BandControl::nominal() {
  BandControl c;
  c.add_piece(0.0);
  return c;
}

BandControl BandControl::constant(double value, int cutoff) {
  BandControl c;
  c.add_piece(0.0);
  c.cutoff_ = cutoff;
  for (int k = 0; k <= cutoff; ++k) c.set_value(0, k, value);
  c.validate();
  return c;
}

BandControl BandControl::per_type(const std::vector<double>& values) {
  BandControl c;
  c.add_piece(0.0);
  c.cutoff_ = static_cast<int>(values.size()) - 1;
  for (int k = 0; k < static_cast<int>(values.size()); ++k)
    c.set_value(0, k, values[k]);
  c.validate();
  return c;
}

int BandControl::add_piece(double start) {
  if (starts_.empty() && start != 0.0)
    fail(ErrorCode::InvalidControl, "first piece must start at t = 0");
  if (!starts_.empty() && start <= starts_.back())
    fail(ErrorCode::InvalidControl, "piece starts must be increasing");
  starts_.push_back(start);
  seg_.emplace_back();
  return static_cast<int>(starts_.size()) - 1;
}

void BandControl::set_segments(int piece, int k, std::vector<BandSegment> segments) {
  auto& per_k = seg_[piece];
  if (k >= static_cast<int>(per_k.size())) per_k.resize(k + 1);
  per_k[k] = std::move(segments);
  cutoff_ = std::max(cutoff_, k);
}

void BandControl::set_value(int piece, int k, double value) {
  set_segments(piece, k, {BandSegment{0.0, 1.0, value}});
}

int BandControl::piece_at(double t) const {
  int lo = 0;
  for (int i = 1; i < pieces(); ++i) {
    if (starts_[i] <= t) lo = i;
    else break;
  }
  return lo;
}

const std::vector<BandSegment>& BandControl::segments(int piece, int k) const {
  static const std::vector<BandSegment> kEmpty;
  if (piece >= static_cast<int>(seg_.size())) return kEmpty;
  const auto& per_k = seg_[piece];
  if (k >= static_cast<int>(per_k.size())) return kEmpty;
  return per_k[k];
}

double BandControl::value_at(int piece, int k, double u) const {
  if (k > cutoff_) return 1.0;
  for (const auto& s : segments(piece, k))
    if (u >= s.lo && u < s.hi) return s.value;
  return 1.0;
}

double BandControl::live_mean(int piece, int k) const {
  if (k > cutoff_) return 1.0;
  double mean = 0.0, covered = 0.0;
  for (const auto& s : segments(piece, k)) {
    const double w = std::max(0.0, std::min(s.hi, 1.0) - std::min(s.lo, 1.0));
    mean += w * s.value;
    covered += w;
  }
  return mean + (1.0 - covered);  // uncovered fractions keep intensity 1
}

double BandControl::live_min(int piece, int k) const {
  if (k > cutoff_) return 1.0;
  double lowest = 1.0, covered = 0.0;
  for (const auto& s : segments(piece, k)) {
    const double w = std::max(0.0, std::min(s.hi, 1.0) - std::min(s.lo, 1.0));
    if (w > 0) lowest = std::min(lowest, s.value);
    covered += w;
  }
  if (covered < 1.0) lowest = std::min(lowest, 1.0);
  return lowest;
}

void BandControl::validate() const {
  if (starts_.empty())
    fail(ErrorCode::InvalidControl, "control has no time pieces");
  for (int piece = 0; piece < pieces(); ++piece) {
    const auto& per_k = seg_[piece];
    for (int k = 0; k < static_cast<int>(per_k.size()); ++k) {
      double prev_hi = 0.0;
      for (const auto& s : per_k[k]) {
        if (s.value < 0)
          fail(ErrorCode::InvalidControl, "negative intensity for type " + std::to_string(k));
        if (s.hi <= s.lo || s.lo < prev_hi)
          fail(ErrorCode::InvalidControl, "segments must be disjoint and increasing");
        prev_hi = s.hi;
      }
    }
  }
}

namespace {

// Picks the landing fraction u inside type k's live band, weighted by the
// intensity profile, and returns it. Uncovered stretches carry value 1.
double sample_band_fraction(const BandControl& control, int piece, int k, Rng& rng) {
  const auto& segs = control.segments(piece, k);
  if (k > control.cutoff() || segs.empty()) return rng.uniform01();
  // Build the covered-stretch weights plus a fused "value 1" remainder.
  double total = 0.0, covered = 0.0;
  for (const auto& s : segs) {
    const double w = std::max(0.0, std::min(s.hi, 1.0) - std::min(s.lo, 1.0));
    total += w * s.value;
    covered += w;
  }
  const double uncovered = 1.0 - covered;
  total += uncovered;
  double pick = rng.uniform01() * total;
  for (const auto& s : segs) {
    const double lo = std::min(s.lo, 1.0), hi = std::min(s.hi, 1.0);
    const double w = (hi - lo) * s.value;
    if (pick < w && s.value > 0) return lo + (hi - lo) * (pick / w);
    pick -= w;
  }
  // Landed on an uncovered stretch: walk the gaps between segments.
  double gap_start = 0.0;
  for (const auto& s : segs) {
    const double lo = std::min(s.lo, 1.0);
    if (lo > gap_start) {
      const double w = lo - gap_start;
      if (pick < w) return gap_start + pick;
      pick -= w;
    }
    gap_start = std::max(gap_start, std::min(s.hi, 1.0));
  }
  return std::min(gap_start + std::max(pick, 0.0), std::nextafter(1.0, 0.0));
}

}  // namespace

CTPath simulate(const DegreeSequence& seq, double T, const BandControl& control,
                Rng& rng, SimulateOptions opts) {
  if (T <= 0) fail(ErrorCode::InvalidControl, "horizon must be positive");
  control.validate();
  const auto checked = DegreeSequence::from(seq.degrees);
  detail::HalfEdgeExplorer ex(checked);
  const long long n = static_cast<long long>(checked.degrees.size());
  const int K = checked.max_degree();

  CTPath path;
  path.n = n;
  path.K = K;
  path.horizon = T;
  path.initial_sleepers.assign(K + 1, 0);
  for (int d : checked.degrees) path.initial_sleepers[d]++;
  path.band_time.assign(control.pieces(), std::vector<double>(K + 1, 0.0));
  if (opts.realize_graph) {
    path.graph.n = static_cast<int>(n);
    path.graph.degree.assign(n, 0);
    path.graph.edges.reserve(checked.edge_count());
  }
  std::vector<KahanSum> band_acc(static_cast<std::size_t>(control.pieces()) * (K + 1));
  // Accrues dt * band[k] for the pre-jump state geometry.
  auto accrue = [&](const detail::HalfEdgeExplorer& state, int piece, double dt) {
    const long long pair_w = std::max<long long>(state.active_count() - 1, 0);
    const long long mass = pair_w + state.sleeping_stubs();
    if (mass == 0 || dt <= 0) return;
    const double inv_mass = 1.0 / static_cast<double>(mass);
    if (pair_w > 0)
      band_acc[static_cast<std::size_t>(piece) * (K + 1)].add(dt * pair_w * inv_mass);
    for (int k = 1; k <= K; ++k) {
      const long long cnt = state.sleeper_count(k);
      if (cnt > 0)
        band_acc[static_cast<std::size_t>(piece) * (K + 1) + k].add(
            dt * static_cast<double>(k) * static_cast<double>(cnt) * inv_mass);
    }
  };

  ComponentRecord current;
  auto note_wake = [&](int v) {
    if (!opts.realize_graph) return;
    current.vertices.push_back(v);
    current.degree_config[checked.degrees[v]]++;
  };
  auto close_component = [&]() {
    if (opts.realize_graph && !current.vertices.empty()) {
      std::sort(current.vertices.begin(), current.vertices.end());
      path.components.push_back(std::move(current));
      current = ComponentRecord{};
    }
  };

  // Integer weights per type: w[0] = (A-1)^+ mean_0, w[k] = k V_k mean_k.
  // Hazard of type k is n * w[k] / (live half-edge mass), so the total
  // hazard is n * sum_k w[k] / ((A-1)^+ + sum k V_k).
  std::vector<double> weights(K + 1, 0.0);
  double t = 0.0;
  int piece = 0;
  bool absorbed = false;

  while (true) {
    const long long a = ex.active_count();
    const long long pair_w = std::max<long long>(a - 1, 0);
    const long long stub_sum = ex.sleeping_stubs();
    const long long mass = pair_w + stub_sum;
    if (mass == 0) {
      path.absorption_time = t;
      path.stop_time = t;
      absorbed = true;
      break;
    }

    // Advance the exponential clock through control pieces.
    double target = rng.exponential();
    bool fired = false;
    while (!fired) {
      double weight_sum = 0.0;
      weights.assign(K + 1, 0.0);
      weights[0] = static_cast<double>(pair_w) * control.live_mean(piece, 0);
      weight_sum += weights[0];
      for (int k = 1; k <= K; ++k) {
        const long long cnt = ex.sleeper_count(k);
        if (cnt > 0) {
          weights[k] = static_cast<double>(k) * static_cast<double>(cnt) *
                       control.live_mean(piece, k);
          weight_sum += weights[k];
        }
      }
      const double hazard =
          static_cast<double>(n) * weight_sum / static_cast<double>(mass);
      const double piece_end = std::min(control.piece_end(piece), T);
      if (hazard <= 0.0) {
        // Control switched every live band off; coast to the next piece.
        accrue(ex, piece, piece_end - t);
        t = piece_end;
        if (t >= T) {
          path.stop_time = T;
          goto finish;  // stalled path keeps its open component unfinished
        }
        piece++;
        continue;
      }
      const double dt_fire = target / hazard;
      if (t + dt_fire >= piece_end) {
        // Not fired within this piece: consume the budget and roll over.
        target -= hazard * (piece_end - t);
        accrue(ex, piece, piece_end - t);
        t = piece_end;
        if (t >= T) {
          path.stop_time = T;
          goto finish;
        }
        piece++;
        continue;
      }
      // Fire at t + dt_fire inside this piece.
      accrue(ex, piece, dt_fire);
      t += dt_fire;
      fired = true;

      // Select the jump type proportional to the tilted weights.
      double pick = rng.uniform01() * weight_sum;
      int type = 0;
      for (int k = 0; k <= K; ++k) {
        if (weights[k] > 0 && pick < weights[k]) {
          type = k;
          break;
        }
        pick -= weights[k];
      }
      const double u = sample_band_fraction(control, piece, type, rng);

      if (type == 0) {
        const int v1 = ex.take_uniform_active(rng);
        const int v2 = ex.take_uniform_active(rng);
        if (opts.realize_graph) {
          path.graph.add_edge(v1, v2);
          current.edge_count++;
        }
      } else if (a == 0) {
        // Reflected wake: x0 < 0, no edge formed.
        const int v = ex.uniform_sleeping_vertex(type, rng);
        ex.wake(v);
        note_wake(v);
      } else {
        const int v1 = ex.take_uniform_active(rng);
        const int v2 = ex.uniform_sleeping_vertex(type, rng);
        ex.wake(v2);
        note_wake(v2);
        ex.take_last_active();
        if (opts.realize_graph) {
          path.graph.add_edge(v1, v2);
          current.edge_count++;
        }
      }
      path.jumps.push_back({t, type, u});
      if (ex.active_count() == 0) close_component();
    }
  }

finish:
  if (absorbed) close_component();
  for (int p = 0; p < control.pieces(); ++p)
    for (int k = 0; k <= K; ++k)
      path.band_time[p][k] = band_acc[static_cast<std::size_t>(p) * (K + 1) + k].value();
  return path;
}

double importance_weight(const CTPath& path, const BandControl& control, long long n) {
  KahanSum log_weight;
  for (const auto& jump : path.jumps) {
    const int piece = control.piece_at(jump.t);
    const double value = control.value_at(piece, jump.k, jump.u);
    if (value <= 0)
      fail(ErrorCode::ZeroIntensityJump,
           "jump landed where the control intensity is zero");
    log_weight.add(-std::log(value));
  }
  for (int piece = 0; piece < control.pieces() &&
                      piece < static_cast<int>(path.band_time.size());
       ++piece) {
    for (int k = 0; k <= path.K; ++k) {
      const double s = path.band_time[piece][k];
      if (s != 0.0)
        log_weight.add(static_cast<double>(n) * s *
                       (control.live_mean(piece, k) - 1.0));
    }
  }
  return std::exp(log_weight.value());
}

}  // namespace cfgx

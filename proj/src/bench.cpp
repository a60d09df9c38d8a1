#include "dqc1bench/bench.hpp"

#include <cmath>
#include <stdexcept>

#include "dqc1bench/rng.hpp"

namespace dqc1bench {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;

// One controlled phase rotation diag(e^{-i theta/2}, e^{i theta/2}) on mixed
// qubit m, as the fixed two-CNOT template [Rz(theta/2) m, CX, Rz(-theta/2) m,
// CX]. The template is emitted directly rather than compiled so the gate
// structure is identical at every theta — the compiler's identity shortcut
// would otherwise drop all gates at theta = 0 and give those sweep points a
// smaller noise budget than the rest of the curve.
void append_phase_segment(Circuit& payload, double theta, int m) {
  payload.append(Gate::rz(theta / 2.0, m));
  payload.append(Gate::cnot(0, m));
  payload.append(Gate::rz(-theta / 2.0, m));
  payload.append(Gate::cnot(0, m));
}
}  // namespace

Circuit un_l_payload(double theta, int l, int n_mixed) {
  if (l < 0) throw std::invalid_argument("un_l_payload: l must be >= 0");
  if (n_mixed < 1) throw std::invalid_argument("un_l_payload: n_mixed must be >= 1");

  Circuit payload(1 + n_mixed);
  if (l == 0) return payload;

  for (int m = 1; m <= n_mixed; ++m) {
    append_phase_segment(payload, theta, m);
    for (int rep = 1; rep < l; ++rep) {
      append_phase_segment(payload, -theta, m);
      append_phase_segment(payload, theta, m);
    }
  }
  return payload;
}

SweepCurve theta_sweep(int n_mixed, int l, int grid, const NoiseModel& model, std::uint64_t shots,
                       std::uint64_t seed, std::int64_t now, PrepStrategy prep,
                       const DqcOptions& opts) {
  if (grid < 2) throw std::invalid_argument("theta_sweep: grid must have at least 2 points");

  SweepCurve curve;
  curve.n_mixed = n_mixed;
  curve.l = l;
  curve.cnots = cnot_count(un_l_payload(0.0, l, n_mixed));
  curve.points.resize(grid);

#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < grid; ++i) {
    const double theta = kTwoPi * i / (grid - 1);
    const Circuit payload = un_l_payload(theta, l, n_mixed);
    const TraceEstimate est =
        estimate_normalized_trace(payload, n_mixed, prep, model, shots,
                                  child_seed(seed, static_cast<std::uint64_t>(i)), now, opts);
    SweepPoint& pt = curve.points[i];
    pt.theta = theta;
    pt.ideal = l == 0 ? 1.0 : std::pow(std::cos(theta / 2.0), n_mixed);
    pt.sx = est.re;
    pt.sy = est.im;
    pt.sz = est.z_diag;
  }
  return curve;
}

double visibility(const SweepCurve& curve) {
  if (curve.points.empty()) throw std::invalid_argument("visibility: empty curve");
  double best = curve.points.front().sx.mean;
  for (const SweepPoint& pt : curve.points) best = std::max(best, pt.sx.mean);
  return best;
}

double coherent_error_metric(const SweepCurve& curve) {
  if (curve.points.empty()) throw std::invalid_argument("coherent_error_metric: empty curve");
  double best = 0.0;
  for (const SweepPoint& pt : curve.points) best = std::max(best, std::abs(pt.sy.mean));
  return best;
}

FitResult fit_exponential(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_exponential: size mismatch");

  FitResult fit;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (y[i] > 0.0) {
      xs.push_back(x[i]);
      ys.push_back(y[i]);
    } else {
      ++fit.n_dropped;
    }
  }
  fit.n_used = static_cast<int>(xs.size());
  if (fit.n_used < 3)
    throw std::invalid_argument("fit_exponential: fewer than 3 usable (positive) points");

  double mx = 0.0, ml = 0.0;
  for (int i = 0; i < fit.n_used; ++i) {
    mx += xs[i];
    ml += std::log(ys[i]);
  }
  mx /= fit.n_used;
  ml /= fit.n_used;

  double sxx = 0.0, sxl = 0.0;
  for (int i = 0; i < fit.n_used; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxl += (xs[i] - mx) * (std::log(ys[i]) - ml);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_exponential: all x values identical");

  const double slope = sxl / sxx;
  const double intercept = ml - slope * mx;
  fit.a = std::exp(intercept);
  fit.tau = slope == 0.0 ? 0.0 : -1.0 / slope;
  fit.decaying = slope < 0.0;

  double my = 0.0;
  for (int i = 0; i < fit.n_used; ++i) my += ys[i];
  my /= fit.n_used;
  double ss_res = 0.0, ss_tot = 0.0;
  for (int i = 0; i < fit.n_used; ++i) {
    const double f = std::exp(intercept + slope * xs[i]);
    ss_res += (ys[i] - f) * (ys[i] - f);
    ss_tot += (ys[i] - my) * (ys[i] - my);
  }
  fit.r_squared = ss_tot == 0.0 ? (ss_res == 0.0 ? 1.0 : 0.0) : 1.0 - ss_res / ss_tot;
  return fit;
}

}  // namespace dqc1bench

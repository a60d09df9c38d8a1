#pragma once

#include <array>
#include <string>
#include <vector>

#include "dqc1bench/bench.hpp"
#include "dqc1bench/svg.hpp"

// Plot builders shared by the suite runner and the report generator, so a
// report rebuilt from CSVs renders through the same code path as the
// original bundle.
namespace dqc1bench::plots {

// One theta sweep, unpacked into plain columns (what both a SweepCurve and a
// parsed CSV reduce to).
struct SweepSeries {
  int n_mixed = 1;
  int l = 1;
  int cnots = 0;
  std::vector<double> theta, sx, sxe, sy, sye, sz, sze;
};

SweepSeries from_curve(const SweepCurve& curve);

// Exact Re of the normalized trace for the echo payload: cos^n_mixed(theta/2),
// or 1 for the empty l = 0 payload.
std::vector<double> ideal_re_of(const SweepSeries& s);

Plot sweep_plot(const SweepSeries& s);

struct VisCurve {
  std::string label;
  bool dashed = false;
  std::vector<double> cnots, vis;
};

// Log-y decay plot; the fit (when given and decaying) is drawn dashed over
// the first curve's x values — exact for an exponential on a log axis.
Plot visibility_plot(const std::vector<VisCurve>& curves, const FitResult* fit);

struct KnotMark {
  std::string label;
  Cmplx mean = 0.0;
  std::array<double, 3> cov_mean{};  // c00, c01, c11 for the plotted mean
  Cmplx oracle = 0.0;
  bool dashed = false;
};

EllipsePlot knots_plane_plot(const std::vector<KnotMark>& marks);

struct DistSeries {
  std::string label;
  bool dashed = false;
  bool is_reference = false;  // exact values: gray dashed line, no error bars
  std::vector<double> x, y, yerr;
};

Plot distance_plot(const std::vector<DistSeries>& series, bool normalized);

}  // namespace dqc1bench::plots

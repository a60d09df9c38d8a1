#pragma once

#include <string>
#include <vector>

namespace dqc1bench {

// Minimal deterministic SVG plotting: fixed canvas, fixed palette, fixed
// number formatting — identical inputs give identical bytes.

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> yerr;  // empty, or one error bar half-width per point
  bool points_only = false;
  bool dashed = false;
  std::string color;  // empty picks from the palette by series index
};

struct Plot {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  bool log_y = false;  // nonpositive values are skipped when set
  std::vector<Series> series;
};

std::string render_plot(const Plot& plot);

// Complex-plane marks: a mean with a one-standard-deviation covariance
// ellipse, plus an optional reference point drawn as a gray cross.
struct EllipseMark {
  std::string label;
  double cx = 0.0, cy = 0.0;
  double c00 = 0.0, c01 = 0.0, c11 = 0.0;  // covariance of the plotted mean
  bool has_ref = false;
  double rx = 0.0, ry = 0.0;
  bool dashed = false;
  std::string color;
};

struct EllipsePlot {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  std::vector<EllipseMark> marks;
};

std::string render_ellipse_plot(const EllipsePlot& plot);

}  // namespace dqc1bench

#include "dqc1bench/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace dqc1bench {

namespace {

constexpr double kWidth = 720.0, kHeight = 480.0;
constexpr double kLeft = 70.0, kRight = 24.0, kTop = 44.0, kBottom = 56.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
constexpr int kPaletteSize = 8;

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = 0.0, hi = 1.0;

  void include(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (hi - lo < 1e-300) {
      lo -= 1.0;
      hi += 1.0;
      return;
    }
    const double margin = 0.05 * (hi - lo);
    lo -= margin;
    hi += margin;
  }
};

Range seed_range() {
  Range r;
  r.lo = 1e300;
  r.hi = -1e300;
  return r;
}

// 1-2-5 progression tick step for roughly `target` ticks
double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  double step;
  if (norm <= 1.5)
    step = 1.0;
  else if (norm <= 3.5)
    step = 2.0;
  else if (norm <= 7.5)
    step = 5.0;
  else
    step = 10.0;
  return step * mag;
}

struct Mapper {
  Range xr, yr;
  bool log_y = false;

  double mx(double x) const { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * (kWidth - kLeft - kRight); }
  double my(double y) const {
    const double v = log_y ? std::log10(y) : y;
    return kHeight - kBottom - (v - yr.lo) / (yr.hi - yr.lo) * (kHeight - kTop - kBottom);
  }
};

void emit_frame(std::string& out, const Mapper& map, const std::string& title,
                const std::string& xlabel, const std::string& ylabel) {
  out += "<rect x=\"" + px(kLeft) + "\" y=\"" + px(kTop) + "\" width=\"" +
         px(kWidth - kLeft - kRight) + "\" height=\"" + px(kHeight - kTop - kBottom) +
         "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  out += "<text x=\"" + px(kWidth / 2) +
         "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" + escape_xml(title) + "</text>\n";
  out += "<text x=\"" + px(kLeft + (kWidth - kLeft - kRight) / 2) + "\" y=\"" + px(kHeight - 14) +
         "\" text-anchor=\"middle\" font-size=\"13\">" + escape_xml(xlabel) + "</text>\n";
  out += "<text x=\"18\" y=\"" + px(kTop + (kHeight - kTop - kBottom) / 2) +
         "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 " +
         px(kTop + (kHeight - kTop - kBottom) / 2) + ")\">" + escape_xml(ylabel) + "</text>\n";

  // x ticks
  const double xstep = nice_step(map.xr.hi - map.xr.lo, 6);
  for (double t = std::ceil(map.xr.lo / xstep) * xstep; t <= map.xr.hi + 1e-9 * xstep;
       t += xstep) {
    const double gx = map.mx(t);
    out += "<line x1=\"" + px(gx) + "\" y1=\"" + px(kHeight - kBottom) + "\" x2=\"" + px(gx) +
           "\" y2=\"" + px(kHeight - kBottom + 5) + "\" stroke=\"#333333\"/>\n";
    out += "<text x=\"" + px(gx) + "\" y=\"" + px(kHeight - kBottom + 18) +
           "\" text-anchor=\"middle\" font-size=\"11\">" + tick_label(t + 0.0) + "</text>\n";
  }

  // y ticks: powers of ten in log mode, nice steps otherwise
  if (map.log_y) {
    for (int e = static_cast<int>(std::ceil(map.yr.lo)); e <= std::floor(map.yr.hi) + 1e-9; ++e) {
      const double gy = kHeight - kBottom -
                        (e - map.yr.lo) / (map.yr.hi - map.yr.lo) * (kHeight - kTop - kBottom);
      out += "<line x1=\"" + px(kLeft - 5) + "\" y1=\"" + px(gy) + "\" x2=\"" + px(kLeft) +
             "\" y2=\"" + px(gy) + "\" stroke=\"#333333\"/>\n";
      out += "<text x=\"" + px(kLeft - 8) + "\" y=\"" + px(gy + 4) +
             "\" text-anchor=\"end\" font-size=\"11\">1e" + std::to_string(e) + "</text>\n";
    }
  } else {
    const double ystep = nice_step(map.yr.hi - map.yr.lo, 6);
    for (double t = std::ceil(map.yr.lo / ystep) * ystep; t <= map.yr.hi + 1e-9 * ystep;
         t += ystep) {
      const double gy = map.my(t);
      out += "<line x1=\"" + px(kLeft - 5) + "\" y1=\"" + px(gy) + "\" x2=\"" + px(kLeft) +
             "\" y2=\"" + px(gy) + "\" stroke=\"#333333\"/>\n";
      out += "<text x=\"" + px(kLeft - 8) + "\" y=\"" + px(gy + 4) +
             "\" text-anchor=\"end\" font-size=\"11\">" + tick_label(t + 0.0) + "</text>\n";
    }
  }
}

std::string series_color(const Series& s, std::size_t index) {
  return s.color.empty() ? kPalette[index % kPaletteSize] : s.color;
}

void emit_legend(std::string& out, const std::vector<Series>& series) {
  double ly = kTop + 12.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series[i].label.empty()) continue;
    const std::string color = series_color(series[i], i);
    const double lx = kWidth - kRight - 150.0;
    out += "<line x1=\"" + px(lx) + "\" y1=\"" + px(ly - 4) + "\" x2=\"" + px(lx + 22) +
           "\" y2=\"" + px(ly - 4) + "\" stroke=\"" + color + "\" stroke-width=\"2\"" +
           (series[i].dashed ? " stroke-dasharray=\"6 4\"" : "") + "/>\n";
    out += "<text x=\"" + px(lx + 28) + "\" y=\"" + px(ly) + "\" font-size=\"11\">" +
           escape_xml(series[i].label) + "</text>\n";
    ly += 16.0;
  }
}

std::string svg_open() {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(kWidth) + "\" height=\"" +
         px(kHeight) + "\" viewBox=\"0 0 " + px(kWidth) + " " + px(kHeight) +
         "\" font-family=\"sans-serif\">\n<rect width=\"100%\" height=\"100%\" "
         "fill=\"#ffffff\"/>\n";
}

}  // namespace

std::string render_plot(const Plot& plot) {
  if (plot.series.empty()) throw std::invalid_argument("render_plot: no series");

  Mapper map;
  map.log_y = plot.log_y;
  map.xr = seed_range();
  map.yr = seed_range();
  bool any_point = false;
  for (const Series& s : plot.series) {
    if (s.x.size() != s.y.size() || (!s.yerr.empty() && s.yerr.size() != s.y.size()))
      throw std::invalid_argument("render_plot: series size mismatch");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double err = s.yerr.empty() ? 0.0 : s.yerr[i];
      if (plot.log_y) {
        if (s.y[i] <= 0.0) continue;
        map.xr.include(s.x[i]);
        map.yr.include(std::log10(s.y[i]));
        if (s.y[i] - err > 0.0) map.yr.include(std::log10(s.y[i] - err));
        if (s.y[i] + err > 0.0) map.yr.include(std::log10(s.y[i] + err));
      } else {
        map.xr.include(s.x[i]);
        map.yr.include(s.y[i] - err);
        map.yr.include(s.y[i] + err);
      }
      any_point = true;
    }
  }
  if (!any_point) {
    map.xr = Range{0.0, 1.0};
    map.yr = Range{0.0, 1.0};
  }
  map.xr.pad();
  map.yr.pad();

  std::string out = svg_open();
  emit_frame(out, map, plot.title, plot.xlabel, plot.ylabel);

  for (std::size_t si = 0; si < plot.series.size(); ++si) {
    const Series& s = plot.series[si];
    const std::string color = series_color(s, si);
    const std::string dash = s.dashed ? " stroke-dasharray=\"6 4\"" : "";

    if (!s.points_only) {
      std::string path;
      bool pen_down = false;
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (plot.log_y && s.y[i] <= 0.0) {
          pen_down = false;
          continue;
        }
        path += pen_down ? "L" : "M";
        path += px(map.mx(s.x[i])) + " " + px(map.my(s.y[i])) + " ";
        pen_down = true;
      }
      if (!path.empty())
        out += "<path d=\"" + path + "\" fill=\"none\" stroke=\"" + color +
               "\" stroke-width=\"1.5\"" + dash + "/>\n";
    }

    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (plot.log_y && s.y[i] <= 0.0) continue;
      const double gx = map.mx(s.x[i]);
      const double gy = map.my(s.y[i]);
      if (!s.yerr.empty() && s.yerr[i] > 0.0) {
        const double lo = s.y[i] - s.yerr[i];
        const double hi = s.y[i] + s.yerr[i];
        const double gylo = (plot.log_y && lo <= 0.0) ? kHeight - kBottom : map.my(lo);
        const double gyhi = map.my(hi);
        out += "<line x1=\"" + px(gx) + "\" y1=\"" + px(gylo) + "\" x2=\"" + px(gx) + "\" y2=\"" +
               px(gyhi) + "\" stroke=\"" + color + "\" stroke-width=\"1\"/>\n";
        out += "<line x1=\"" + px(gx - 3) + "\" y1=\"" + px(gyhi) + "\" x2=\"" + px(gx + 3) +
               "\" y2=\"" + px(gyhi) + "\" stroke=\"" + color + "\" stroke-width=\"1\"/>\n";
        out += "<line x1=\"" + px(gx - 3) + "\" y1=\"" + px(gylo) + "\" x2=\"" + px(gx + 3) +
               "\" y2=\"" + px(gylo) + "\" stroke=\"" + color + "\" stroke-width=\"1\"/>\n";
      }
      out += "<circle cx=\"" + px(gx) + "\" cy=\"" + px(gy) + "\" r=\"2.5\" fill=\"" + color +
             "\"/>\n";
    }
  }

  emit_legend(out, plot.series);
  out += "</svg>\n";
  return out;
}

std::string render_ellipse_plot(const EllipsePlot& plot) {
  if (plot.marks.empty()) throw std::invalid_argument("render_ellipse_plot: no marks");

  Mapper map;
  map.xr = seed_range();
  map.yr = seed_range();
  for (const EllipseMark& m : plot.marks) {
    // conservative bound: the 1-sigma ellipse lies inside the axis-aligned
    // box of half-widths sqrt(c00), sqrt(c11)
    const double hx = std::sqrt(std::max(0.0, m.c00));
    const double hy = std::sqrt(std::max(0.0, m.c11));
    map.xr.include(m.cx - hx);
    map.xr.include(m.cx + hx);
    map.yr.include(m.cy - hy);
    map.yr.include(m.cy + hy);
    if (m.has_ref) {
      map.xr.include(m.rx);
      map.yr.include(m.ry);
    }
  }
  map.xr.pad();
  map.yr.pad();

  std::string out = svg_open();
  emit_frame(out, map, plot.title, plot.xlabel, plot.ylabel);

  // axes through the origin when visible
  if (map.xr.lo < 0.0 && map.xr.hi > 0.0)
    out += "<line x1=\"" + px(map.mx(0)) + "\" y1=\"" + px(kTop) + "\" x2=\"" + px(map.mx(0)) +
           "\" y2=\"" + px(kHeight - kBottom) + "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
  if (map.yr.lo < 0.0 && map.yr.hi > 0.0)
    out += "<line x1=\"" + px(kLeft) + "\" y1=\"" + px(map.my(0)) + "\" x2=\"" +
           px(kWidth - kRight) + "\" y2=\"" + px(map.my(0)) +
           "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";

  for (std::size_t mi = 0; mi < plot.marks.size(); ++mi) {
    const EllipseMark& m = plot.marks[mi];
    const std::string color = m.color.empty() ? kPalette[mi % kPaletteSize] : m.color;
    const std::string dash = m.dashed ? " stroke-dasharray=\"5 3\"" : "";

    if (m.has_ref) {
      const double gx = map.mx(m.rx), gy = map.my(m.ry);
      out += "<line x1=\"" + px(gx - 4) + "\" y1=\"" + px(gy) + "\" x2=\"" + px(gx + 4) +
             "\" y2=\"" + px(gy) + "\" stroke=\"#888888\" stroke-width=\"1.5\"/>\n";
      out += "<line x1=\"" + px(gx) + "\" y1=\"" + px(gy - 4) + "\" x2=\"" + px(gx) + "\" y2=\"" +
             px(gy + 4) + "\" stroke=\"#888888\" stroke-width=\"1.5\"/>\n";
    }

    // closed-form eigendecomposition of the symmetric 2x2 covariance, then
    // sample the 1-sigma contour and map pointwise (the x/y pixel scales
    // differ, so a native <ellipse> with a rotate transform would distort)
    const double tr = m.c00 + m.c11;
    const double det_half = std::sqrt(std::max(0.0, (m.c00 - m.c11) * (m.c00 - m.c11) / 4.0 +
                                                        m.c01 * m.c01));
    const double l1 = std::max(0.0, tr / 2.0 + det_half);
    const double l2 = std::max(0.0, tr / 2.0 - det_half);
    const double angle = 0.5 * std::atan2(2.0 * m.c01, m.c00 - m.c11);
    const double ca = std::cos(angle), sa = std::sin(angle);
    const double r1 = std::sqrt(l1), r2 = std::sqrt(l2);

    if (r1 > 0.0) {
      std::string path;
      constexpr int kSegments = 64;
      for (int k = 0; k <= kSegments; ++k) {
        const double t = 2.0 * 3.14159265358979323846 * k / kSegments;
        const double ex = m.cx + r1 * std::cos(t) * ca - r2 * std::sin(t) * sa;
        const double ey = m.cy + r1 * std::cos(t) * sa + r2 * std::sin(t) * ca;
        path += (k == 0 ? "M" : "L");
        path += px(map.mx(ex)) + " " + px(map.my(ey)) + " ";
      }
      out += "<path d=\"" + path + "Z\" fill=\"" + color + "\" fill-opacity=\"0.15\" stroke=\"" +
             color + "\" stroke-width=\"1.2\"" + dash + "/>\n";
    }

    const double gx = map.mx(m.cx), gy = map.my(m.cy);
    out += "<circle cx=\"" + px(gx) + "\" cy=\"" + px(gy) + "\" r=\"2.5\" fill=\"" + color +
           "\"/>\n";
    if (!m.label.empty())
      out += "<text x=\"" + px(gx + 5) + "\" y=\"" + px(gy - 5) + "\" font-size=\"10\" fill=\"" +
             color + "\">" + escape_xml(m.label) + "</text>\n";
  }

  out += "</svg>\n";
  return out;
}

}  // namespace dqc1bench

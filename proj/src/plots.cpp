#include "plots.hpp"

#include <cmath>
#include <cstdio>

namespace dqc1bench::plots {

SweepSeries from_curve(const SweepCurve& curve) {
  SweepSeries s;
  s.n_mixed = curve.n_mixed;
  s.l = curve.l;
  s.cnots = curve.cnots;
  for (const SweepPoint& pt : curve.points) {
    s.theta.push_back(pt.theta);
    s.sx.push_back(pt.sx.mean);
    s.sxe.push_back(pt.sx.stderr_);
    s.sy.push_back(pt.sy.mean);
    s.sye.push_back(pt.sy.stderr_);
    s.sz.push_back(pt.sz.mean);
    s.sze.push_back(pt.sz.stderr_);
  }
  return s;
}

std::vector<double> ideal_re_of(const SweepSeries& s) {
  std::vector<double> out;
  out.reserve(s.theta.size());
  for (double th : s.theta)
    out.push_back(s.l == 0 ? 1.0 : std::pow(std::cos(th / 2.0), s.n_mixed));
  return out;
}

Plot sweep_plot(const SweepSeries& s) {
  char title[96];
  std::snprintf(title, sizeof title, "Trace sweep: n_mixed=%d, l=%d (%d CNOTs)", s.n_mixed, s.l,
                s.cnots);

  Plot p;
  p.title = title;
  p.xlabel = "theta (rad)";
  p.ylabel = "expectation value";

  Series ideal;
  ideal.label = "exact Re";
  ideal.x = s.theta;
  ideal.y = ideal_re_of(s);
  ideal.dashed = true;
  ideal.color = "#888888";
  p.series.push_back(ideal);

  Series sx;
  sx.label = "sigma_x";
  sx.x = s.theta;
  sx.y = s.sx;
  sx.yerr = s.sxe;
  p.series.push_back(sx);

  Series sy;
  sy.label = "sigma_y";
  sy.x = s.theta;
  sy.y = s.sy;
  sy.yerr = s.sye;
  p.series.push_back(sy);

  Series sz;
  sz.label = "sigma_z";
  sz.x = s.theta;
  sz.y = s.sz;
  sz.yerr = s.sze;
  p.series.push_back(sz);

  return p;
}

Plot visibility_plot(const std::vector<VisCurve>& curves, const FitResult* fit) {
  Plot p;
  p.title = "Visibility decay";
  p.xlabel = "CNOTs per payload";
  p.ylabel = "visibility";
  p.log_y = true;

  if (fit != nullptr && fit->tau > 0.0 && !curves.empty()) {
    char lab[64];
    std::snprintf(lab, sizeof lab, "fit tau=%.4g", fit->tau);
    Series f;
    f.label = lab;
    f.x = curves.front().cnots;
    for (double x : f.x) f.y.push_back(fit->a * std::exp(-x / fit->tau));
    f.dashed = true;
    f.color = "#888888";
    p.series.push_back(f);
  }

  for (const VisCurve& c : curves) {
    Series m;
    m.label = c.label;
    m.x = c.cnots;
    m.y = c.vis;
    m.dashed = c.dashed;
    p.series.push_back(m);
  }
  return p;
}

EllipsePlot knots_plane_plot(const std::vector<KnotMark>& marks) {
  EllipsePlot p;
  p.title = "Jones values in the complex plane";
  p.xlabel = "Re V";
  p.ylabel = "Im V";
  for (const KnotMark& m : marks) {
    EllipseMark e;
    e.label = m.label;
    e.cx = m.mean.real();
    e.cy = m.mean.imag();
    e.c00 = m.cov_mean[0];
    e.c01 = m.cov_mean[1];
    e.c11 = m.cov_mean[2];
    e.has_ref = true;
    e.rx = m.oracle.real();
    e.ry = m.oracle.imag();
    e.dashed = m.dashed;
    p.marks.push_back(e);
  }
  return p;
}

Plot distance_plot(const std::vector<DistSeries>& series, bool normalized) {
  Plot p;
  p.title = "Knot-pair distances";
  p.xlabel = "crossings";
  p.ylabel = normalized ? "distance / exact" : "distance";
  for (const DistSeries& s : series) {
    Series q;
    q.label = s.label;
    q.x = s.x;
    q.y = s.y;
    q.yerr = s.yerr;
    q.points_only = !s.is_reference;
    q.dashed = s.dashed || s.is_reference;
    if (s.is_reference) q.color = "#888888";
    p.series.push_back(q);
  }
  return p;
}

}  // namespace dqc1bench::plots

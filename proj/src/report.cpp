#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "dqc1bench/bench.hpp"
#include "dqc1bench/csv.hpp"
#include "dqc1bench/knots.hpp"
#include "dqc1bench/runner.hpp"
#include "dqc1bench/svg.hpp"
#include "plots.hpp"

namespace dqc1bench {

namespace fs = std::filesystem;

namespace {

void write_atomic(const fs::path& p, const std::string& bytes) {
  const fs::path tmp = p.string() + ".tmp";
  write_text_file(tmp.string(), bytes);
  std::error_code ec;
  fs::rename(tmp, p, ec);
  if (ec) throw IoError("cannot move " + tmp.string() + " into place: " + ec.message());
}

std::string md_num(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.4g", v);
  return b;
}

std::string md_cplx(const Cmplx& v) {
  char b[48];
  std::snprintf(b, sizeof b, "%.4f%+.4fi", v.real(), v.imag());
  return b;
}

// ---------- bench.csv ----------

struct BenchGroup {
  int n_mixed = 1, l = 0, cnots = 0;
  std::vector<double> theta, sx, sxe, sy, sye, sz, sze;
};

std::vector<BenchGroup> load_bench(const fs::path& path) {
  std::vector<BenchGroup> groups;
  try {
    const CsvTable t = CsvTable::parse(read_text_file(path.string()));
    const std::size_t cn = t.col("n_mixed"), cl = t.col("l"), cc = t.col("cnots");
    const std::size_t cth = t.col("theta");
    const std::size_t csx = t.col("sx_mean"), csxe = t.col("sx_err");
    const std::size_t csy = t.col("sy_mean"), csye = t.col("sy_err");
    const std::size_t csz = t.col("sz_mean"), csze = t.col("sz_err");

    std::map<std::tuple<int, int, int>, std::size_t> index;
    for (const auto& row : t.rows) {
      const int n_mixed = static_cast<int>(csv_to_double(row[cn]));
      const int l = static_cast<int>(csv_to_double(row[cl]));
      const int cnots = static_cast<int>(csv_to_double(row[cc]));
      const auto key = std::make_tuple(n_mixed, l, cnots);
      auto it = index.find(key);
      if (it == index.end()) {
        it = index.emplace(key, groups.size()).first;
        BenchGroup g;
        g.n_mixed = n_mixed;
        g.l = l;
        g.cnots = cnots;
        groups.push_back(g);
      }
      BenchGroup& g = groups[it->second];
      g.theta.push_back(csv_to_double(row[cth]));
      g.sx.push_back(csv_to_double(row[csx]));
      g.sxe.push_back(csv_to_double(row[csxe]));
      g.sy.push_back(csv_to_double(row[csy]));
      g.sye.push_back(csv_to_double(row[csye]));
      g.sz.push_back(csv_to_double(row[csz]));
      g.sze.push_back(csv_to_double(row[csze]));
    }
  } catch (const IoError&) {
    throw;
  } catch (const std::exception& e) {
    throw IoError("corrupt CSV " + path.string() + ": " + e.what());
  }
  std::stable_sort(groups.begin(), groups.end(),
                   [](const BenchGroup& a, const BenchGroup& b) { return a.cnots < b.cnots; });
  return groups;
}

double group_vis(const BenchGroup& g) { return *std::max_element(g.sx.begin(), g.sx.end()); }

double group_metric(const BenchGroup& g) {
  double m = 0.0;
  for (double v : g.sy) m = std::max(m, std::abs(v));
  return m;
}

plots::SweepSeries to_series(const BenchGroup& g) {
  plots::SweepSeries s;
  s.n_mixed = g.n_mixed;
  s.l = g.l;
  s.cnots = g.cnots;
  s.theta = g.theta;
  s.sx = g.sx;
  s.sxe = g.sxe;
  s.sy = g.sy;
  s.sye = g.sye;
  s.sz = g.sz;
  s.sze = g.sze;
  return s;
}

void bench_table_md(const std::vector<BenchGroup>& groups, std::string& md) {
  md += "| n_mixed | l | CNOTs | visibility | coherent metric |\n";
  md += "|---|---|---|---|---|\n";
  for (const BenchGroup& g : groups)
    md += "| " + std::to_string(g.n_mixed) + " | " + std::to_string(g.l) + " | " +
          std::to_string(g.cnots) + " | " + md_num(group_vis(g)) + " | " +
          md_num(group_metric(g)) + " |\n";
  md += "\n";
}

void report_bench(const fs::path& dir, const std::string& compare_dir, const fs::path& out,
                  std::string& md, std::vector<std::string>& svgs) {
  const std::vector<BenchGroup> groups = load_bench(dir / "bench.csv");
  std::vector<BenchGroup> cmp;
  if (!compare_dir.empty()) cmp = load_bench(fs::path(compare_dir) / "bench.csv");

  md += "## Sweep curves\n\n";
  bench_table_md(groups, md);
  if (!cmp.empty()) {
    md += "## Sweep curves (comparison bundle)\n\n";
    bench_table_md(cmp, md);
  }

  FitResult fit{};
  bool have_fit = false;
  if (groups.size() >= 3) {
    std::vector<double> cn, vis;
    for (const BenchGroup& g : groups) {
      cn.push_back(g.cnots);
      vis.push_back(group_vis(g));
    }
    try {
      fit = fit_exponential(cn, vis);
      have_fit = true;
      md += "Exponential fit: a = " + md_num(fit.a) + ", tau = " + md_num(fit.tau) +
            " CNOTs, R^2 = " + md_num(fit.r_squared) + " (" + std::to_string(fit.n_used) +
            " points, " + std::to_string(fit.n_dropped) + " dropped)\n\n";
    } catch (const std::invalid_argument& e) {
      md += std::string("Exponential fit failed: ") + e.what() + "\n\n";
    }
  }

  if (groups.size() == 1 && cmp.empty()) {
    write_atomic(out / "sweep_report.svg", render_plot(plots::sweep_plot(to_series(groups[0]))));
    svgs.push_back("sweep_report.svg");
    return;
  }

  std::vector<plots::VisCurve> curves;
  plots::VisCurve main;
  main.label = "measured";
  for (const BenchGroup& g : groups) {
    main.cnots.push_back(g.cnots);
    main.vis.push_back(group_vis(g));
  }
  curves.push_back(main);
  if (!cmp.empty()) {
    plots::VisCurve other;
    other.label = "comparison";
    other.dashed = true;
    for (const BenchGroup& g : cmp) {
      other.cnots.push_back(g.cnots);
      other.vis.push_back(group_vis(g));
    }
    curves.push_back(other);
  }
  write_atomic(out / "visibility_report.svg",
               render_plot(plots::visibility_plot(curves, have_fit ? &fit : nullptr)));
  svgs.push_back("visibility_report.svg");
}

// ---------- knots.csv ----------

struct KnotGroup {
  std::string pair, word;
  int crossings = 0;
  std::vector<Cmplx> vals;
  Cmplx mean = 0.0;
  std::array<double, 4> cov{};  // sample covariance of (Re, Im)
  Cmplx oracle = 0.0;
};

std::vector<KnotGroup> load_knots(const fs::path& path) {
  std::vector<KnotGroup> groups;
  try {
    const CsvTable t = CsvTable::parse(read_text_file(path.string()));
    const std::size_t cw = t.col("word"), ck = t.col("k"), cre = t.col("re"), cim = t.col("im");
    const std::size_t cqp = t.col("qubit_pair");

    std::map<std::pair<std::string, std::string>, std::size_t> index;
    for (const auto& row : t.rows) {
      const auto key = std::make_pair(row[cqp], row[cw]);
      auto it = index.find(key);
      if (it == index.end()) {
        it = index.emplace(key, groups.size()).first;
        KnotGroup g;
        g.pair = row[cqp];
        g.word = row[cw];
        g.crossings = static_cast<int>(csv_to_double(row[ck]));
        groups.push_back(g);
      }
      groups[it->second].vals.emplace_back(csv_to_double(row[cre]), csv_to_double(row[cim]));
    }
    for (KnotGroup& g : groups) {
      Cmplx s = 0.0;
      for (const Cmplx& v : g.vals) s += v;
      const double n = static_cast<double>(g.vals.size());
      g.mean = s / n;
      if (g.vals.size() > 1) {
        double c00 = 0.0, c01 = 0.0, c11 = 0.0;
        for (const Cmplx& v : g.vals) {
          const double dr = v.real() - g.mean.real();
          const double di = v.imag() - g.mean.imag();
          c00 += dr * dr;
          c01 += dr * di;
          c11 += di * di;
        }
        g.cov = {c00 / (n - 1.0), c01 / (n - 1.0), c01 / (n - 1.0), c11 / (n - 1.0)};
      }
      g.oracle = jones_oracle(BraidWord::parse(g.word));
    }
  } catch (const IoError&) {
    throw;
  } catch (const std::exception& e) {
    throw IoError("corrupt CSV " + path.string() + ": " + e.what());
  }
  return groups;
}

JonesEstimate to_estimate(const KnotGroup& g) {
  JonesEstimate e;
  e.value = g.oracle;
  e.trials = static_cast<int>(g.vals.size());
  e.mean = g.mean;
  e.cov = g.cov;
  e.qubit_pair = g.pair;
  return e;
}

std::vector<std::string> pair_labels(const std::vector<KnotGroup>& groups) {
  std::vector<std::string> labels;
  std::set<std::string> seen;
  for (const KnotGroup& g : groups)
    if (seen.insert(g.pair).second) labels.push_back(g.pair);
  return labels;
}

void knots_table_md(const std::vector<KnotGroup>& groups, bool multi, std::string& md) {
  md += "| pair | word | k | exact | mean | deviation |\n";
  md += "|---|---|---|---|---|---|\n";
  for (const KnotGroup& g : groups)
    md += "| " + g.pair + " | `" + (g.word.empty() ? "(id)" : g.word) + "` | " +
          std::to_string(g.crossings) + " | " + md_cplx(g.oracle) + " | " + md_cplx(g.mean) +
          " | " + md_num(std::abs(g.mean - g.oracle)) + " |\n";
  md += "\n";
  (void)multi;
}

void append_marks(const std::vector<KnotGroup>& groups, bool multi, bool dashed,
                  const std::string& prefix, std::vector<plots::KnotMark>& marks) {
  for (const KnotGroup& g : groups) {
    const double n = static_cast<double>(g.vals.size());
    plots::KnotMark m;
    m.label = prefix + (multi ? g.pair + ":" : "") + (g.word.empty() ? "(id)" : g.word);
    m.mean = g.mean;
    m.cov_mean = {g.cov[0] / n, g.cov[1] / n, g.cov[3] / n};
    m.oracle = g.oracle;
    m.dashed = dashed;
    marks.push_back(m);
  }
}

// Distances for one bundle over the default pair set, raw (unnormalized).
struct DistRows {
  std::vector<std::string> pair, a, b;
  std::vector<int> crossings;
  std::vector<double> exact, dist, err;
};

DistRows distances_of(const std::vector<KnotGroup>& groups) {
  DistRows rows;
  for (const std::string& label : pair_labels(groups)) {
    std::map<std::string, std::size_t> by_canon;
    for (std::size_t i = 0; i < groups.size(); ++i)
      if (groups[i].pair == label) {
        const std::string canon = BraidWord::parse(groups[i].word).str();
        if (by_canon.find(canon) == by_canon.end()) by_canon[canon] = i;
      }
    for (const auto& [ta, tb] : default_distance_pairs()) {
      const auto ia = by_canon.find(BraidWord::parse(ta).str());
      const auto ib = by_canon.find(BraidWord::parse(tb).str());
      if (ia == by_canon.end() || ib == by_canon.end()) continue;
      const KnotGroup& ga = groups[ia->second];
      const KnotGroup& gb = groups[ib->second];
      const DistanceEstimate de = knot_distance(to_estimate(ga), to_estimate(gb), false);
      rows.pair.push_back(label);
      rows.a.push_back(ta);
      rows.b.push_back(tb);
      rows.crossings.push_back(std::max(ga.crossings, gb.crossings));
      rows.exact.push_back(std::abs(ga.oracle - gb.oracle));
      rows.dist.push_back(de.distance);
      rows.err.push_back(de.err);
    }
  }
  return rows;
}

void dist_table_md(const DistRows& rows, std::string& md) {
  md += "| pair | a | b | crossings | exact | measured | err |\n";
  md += "|---|---|---|---|---|---|---|\n";
  for (std::size_t i = 0; i < rows.a.size(); ++i)
    md += "| " + rows.pair[i] + " | `" + rows.a[i] + "` | `" + rows.b[i] + "` | " +
          std::to_string(rows.crossings[i]) + " | " + md_num(rows.exact[i]) + " | " +
          md_num(rows.dist[i]) + " | " + md_num(rows.err[i]) + " |\n";
  md += "\n";
}

void append_dist_series(const DistRows& rows, bool dashed, const std::string& prefix,
                        std::vector<plots::DistSeries>& series) {
  std::vector<std::string> labels;
  std::set<std::string> seen;
  for (const std::string& p : rows.pair)
    if (seen.insert(p).second) labels.push_back(p);
  const bool multi = labels.size() > 1;
  for (const std::string& label : labels) {
    plots::DistSeries s;
    s.label = prefix + (multi ? label : "measured");
    s.dashed = dashed;
    for (std::size_t i = 0; i < rows.a.size(); ++i)
      if (rows.pair[i] == label) {
        s.x.push_back(rows.crossings[i]);
        s.y.push_back(rows.dist[i]);
        s.yerr.push_back(rows.err[i]);
      }
    series.push_back(s);
  }
}

void report_knots(const fs::path& dir, const std::string& compare_dir, const fs::path& out,
                  std::string& md, std::vector<std::string>& svgs) {
  const std::vector<KnotGroup> groups = load_knots(dir / "knots.csv");
  std::vector<KnotGroup> cmp;
  if (!compare_dir.empty()) cmp = load_knots(fs::path(compare_dir) / "knots.csv");
  const bool multi = pair_labels(groups).size() > 1;

  md += "## Word estimates\n\n";
  knots_table_md(groups, multi, md);
  if (!cmp.empty()) {
    md += "## Word estimates (comparison bundle)\n\n";
    knots_table_md(cmp, pair_labels(cmp).size() > 1, md);
  }

  std::vector<plots::KnotMark> marks;
  append_marks(groups, multi, false, "", marks);
  if (!cmp.empty()) append_marks(cmp, pair_labels(cmp).size() > 1, true, "cmp:", marks);
  write_atomic(out / "knots_plane_report.svg", render_ellipse_plot(plots::knots_plane_plot(marks)));
  svgs.push_back("knots_plane_report.svg");

  const DistRows rows = distances_of(groups);
  if (!rows.a.empty()) {
    md += "## Distances (default pair set, raw)\n\n";
    dist_table_md(rows, md);

    std::vector<plots::DistSeries> series;
    plots::DistSeries exact;
    exact.label = "exact";
    exact.is_reference = true;
    std::set<std::pair<std::string, std::string>> seen;
    for (std::size_t i = 0; i < rows.a.size(); ++i)
      if (seen.insert({rows.a[i], rows.b[i]}).second) {
        exact.x.push_back(rows.crossings[i]);
        exact.y.push_back(rows.exact[i]);
      }
    series.push_back(exact);
    append_dist_series(rows, false, "", series);
    if (!cmp.empty()) {
      const DistRows crows = distances_of(cmp);
      if (!crows.a.empty()) {
        md += "## Distances (comparison bundle)\n\n";
        dist_table_md(crows, md);
        append_dist_series(crows, true, "cmp:", series);
      }
    }
    write_atomic(out / "distances_report.svg",
                 render_plot(plots::distance_plot(series, false)));
    svgs.push_back("distances_report.svg");
  }
}

}  // namespace

void write_report(const std::string& bundle_dir, const std::string& compare_dir,
                  const std::string& out_dir) {
  const fs::path dir(bundle_dir);
  const fs::path out(out_dir.empty() ? bundle_dir : out_dir);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw IoError("cannot create " + out.string() + ": " + ec.message());

  const bool knots_kind = fs::exists(dir / "knots.csv");
  const bool bench_kind = fs::exists(dir / "bench.csv");
  if (!knots_kind && !bench_kind) throw IoError("no bench.csv or knots.csv in " + dir.string());

  std::string md;
  md += "# Result bundle report\n\n";
  md += "Source: `" + dir.string() + "`";
  if (!compare_dir.empty()) md += " compared against `" + compare_dir + "`";
  md += "\n\n";

  std::vector<std::string> svgs;
  if (knots_kind)
    report_knots(dir, compare_dir, out, md, svgs);
  else
    report_bench(dir, compare_dir, out, md, svgs);

  md += "## Plots\n\n";
  for (const std::string& s : svgs) md += "- `" + s + "`\n";

  write_atomic(out / "report.md", md);
}

}  // namespace dqc1bench

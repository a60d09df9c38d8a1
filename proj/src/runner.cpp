#include "dqc1bench/runner.hpp"

#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "dqc1bench/bench.hpp"
#include "dqc1bench/circuit.hpp"
#include "dqc1bench/csv.hpp"
#include "dqc1bench/knots.hpp"
#include "dqc1bench/matrix.hpp"
#include "dqc1bench/rng.hpp"
#include "dqc1bench/svg.hpp"
#include "plots.hpp"

namespace dqc1bench {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  if (f.bad()) throw IoError("read failed: " + path);
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write " + path);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  f.flush();
  if (!f) throw IoError("write failed: " + path);
}

namespace {

// Bundle files are staged in memory and land on disk in one directory rename.
struct Stage {
  std::vector<std::pair<std::string, std::string>> files;
  void add(std::string name, std::string bytes) {
    files.emplace_back(std::move(name), std::move(bytes));
  }
};

void commit_stage(const Stage& stage, const fs::path& out_dir) {
  std::error_code ec;
  const fs::path parent = out_dir.parent_path();
  if (!parent.empty()) {
    fs::create_directories(parent, ec);
    if (ec) throw IoError("cannot create " + parent.string() + ": " + ec.message());
  }
  const fs::path tmp = out_dir.string() + ".tmp";
  fs::remove_all(tmp, ec);  // stale leftovers from an interrupted run
  ec.clear();
  fs::create_directories(tmp, ec);
  if (ec) throw IoError("cannot create " + tmp.string() + ": " + ec.message());
  for (const auto& [name, bytes] : stage.files) write_text_file((tmp / name).string(), bytes);
  fs::remove_all(out_dir, ec);  // an existing bundle is replaced wholesale
  if (ec) throw IoError("cannot replace " + out_dir.string() + ": " + ec.message());
  ec.clear();
  fs::rename(tmp, out_dir, ec);
  if (ec) throw IoError("cannot move " + tmp.string() + " into place: " + ec.message());
}

std::string json_bytes(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json reim_json(double re, double im) {
  ordered_json j;
  j["re"] = re;
  j["im"] = im;
  return j;
}

ordered_json cplx_json(const Cmplx& v) { return reim_json(v.real(), v.imag()); }

ordered_json fit_json(const FitResult& f) {
  ordered_json j;
  j["a"] = f.a;
  j["tau"] = f.tau;
  j["r_squared"] = f.r_squared;
  j["n_used"] = f.n_used;
  j["n_dropped"] = f.n_dropped;
  j["decaying"] = f.decaying;
  return j;
}

std::uint64_t curve_seed(const ExperimentConfig& cfg, int l) {
  return child_seed(cfg.seed, fnv1a("l:" + std::to_string(l)));
}

CsvTable bench_table() {
  CsvTable t;
  t.header = {"n_mixed", "l",       "cnots",   "theta",  "sx_mean", "sx_err",
              "sy_mean", "sy_err",  "sz_mean", "sz_err", "seed",    "timestamp"};
  return t;
}

void append_curve(CsvTable& t, const SweepCurve& c, std::uint64_t cseed, std::int64_t ts) {
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    const SweepPoint& pt = c.points[i];
    t.rows.push_back({std::to_string(c.n_mixed), std::to_string(c.l), std::to_string(c.cnots),
                      fmt_double(pt.theta), fmt_double(pt.sx.mean), fmt_double(pt.sx.stderr_),
                      fmt_double(pt.sy.mean), fmt_double(pt.sy.stderr_), fmt_double(pt.sz.mean),
                      fmt_double(pt.sz.stderr_),
                      std::to_string(child_seed(cseed, static_cast<std::uint64_t>(i))),
                      std::to_string(ts)});
  }
}

void run_trace_sweep(const ExperimentConfig& cfg, Stage& stage, ResultBundle& rb,
                     ordered_json& summary, ordered_json* circuits) {
  const std::uint64_t cseed = curve_seed(cfg, cfg.l);
  const SweepCurve curve = theta_sweep(cfg.n_mixed, cfg.l, cfg.grid, cfg.noise, cfg.shots, cseed,
                                       cfg.timestamp, cfg.prep_strategy(), cfg.dqc_options());

  CsvTable t = bench_table();
  append_curve(t, curve, cseed, cfg.timestamp);
  stage.add("bench.csv", t.serialize());
  rb.csv_paths.push_back("bench.csv");

  stage.add("sweep.svg", render_plot(plots::sweep_plot(plots::from_curve(curve))));
  rb.svg_paths.push_back("sweep.svg");

  summary["shots"] = cfg.shots;
  summary["grid"] = cfg.grid;
  summary["n_mixed"] = cfg.n_mixed;
  summary["l"] = cfg.l;
  summary["cnots"] = curve.cnots;
  summary["visibility"] = visibility(curve);
  summary["coherent_error_metric"] = coherent_error_metric(curve);

  if (circuits != nullptr) {
    ordered_json payloads;
    const double pi = std::acos(-1.0);
    payloads["l=" + std::to_string(cfg.l)] = circuit_to_json(un_l_payload(pi, cfg.l, cfg.n_mixed));
    (*circuits)["payloads"] = payloads;
  }
}

void run_visibility(const ExperimentConfig& cfg, Stage& stage, ResultBundle& rb,
                    ordered_json& summary, ordered_json* circuits) {
  CsvTable t = bench_table();
  std::vector<double> cn, vis;
  ordered_json jcurves = ordered_json::array();
  ordered_json payloads;
  const double pi = std::acos(-1.0);

  for (int l : cfg.l_values) {
    const std::uint64_t cseed = curve_seed(cfg, l);
    const SweepCurve curve = theta_sweep(cfg.n_mixed, l, cfg.grid, cfg.noise, cfg.shots, cseed,
                                         cfg.timestamp, cfg.prep_strategy(), cfg.dqc_options());
    append_curve(t, curve, cseed, cfg.timestamp);

    const double v = visibility(curve);
    ordered_json jc;
    jc["l"] = l;
    jc["cnots"] = curve.cnots;
    jc["visibility"] = v;
    jc["coherent_error_metric"] = coherent_error_metric(curve);
    jcurves.push_back(jc);

    cn.push_back(curve.cnots);
    vis.push_back(v);
    if (circuits != nullptr)
      payloads["l=" + std::to_string(l)] = circuit_to_json(un_l_payload(pi, l, cfg.n_mixed));
  }

  stage.add("bench.csv", t.serialize());
  rb.csv_paths.push_back("bench.csv");

  summary["shots"] = cfg.shots;
  summary["grid"] = cfg.grid;
  summary["n_mixed"] = cfg.n_mixed;
  summary["curves"] = jcurves;

  FitResult fit{};
  bool have_fit = false;
  try {
    fit = fit_exponential(cn, vis);
    have_fit = true;
    summary["fit"] = fit_json(fit);
  } catch (const std::invalid_argument& e) {
    ordered_json jf;
    jf["error"] = e.what();
    summary["fit"] = jf;
  }

  plots::VisCurve pcurve;
  pcurve.label = "measured";
  pcurve.cnots = cn;
  pcurve.vis = vis;
  stage.add("visibility.svg",
            render_plot(plots::visibility_plot({pcurve}, have_fit ? &fit : nullptr)));
  rb.svg_paths.push_back("visibility.svg");

  if (circuits != nullptr) (*circuits)["payloads"] = payloads;
}

struct WordSet {
  std::vector<std::string> display;
  std::vector<BraidWord> words;
  std::map<std::string, std::size_t> by_canon;  // canonical text -> first index
};

WordSet assemble_words(const ExperimentConfig& cfg) {
  WordSet ws;
  for (const auto& [display, text] : cfg.word_list()) {
    BraidWord w = BraidWord::parse(text);
    const std::string canon = w.str();
    if (ws.by_canon.find(canon) == ws.by_canon.end()) ws.by_canon[canon] = ws.words.size();
    ws.display.push_back(display);
    ws.words.push_back(std::move(w));
  }
  // Distance pairs may reference words outside the configured list; run those
  // too so every reported distance has backing rows in the CSV.
  for (const auto& [a, b] : cfg.distance_pairs)
    for (const std::string& text : {a, b}) {
      BraidWord w = BraidWord::parse(text);
      const std::string canon = w.str();
      if (ws.by_canon.find(canon) == ws.by_canon.end()) {
        ws.by_canon[canon] = ws.words.size();
        ws.display.push_back(text);
        ws.words.push_back(std::move(w));
      }
    }
  return ws;
}

NoiseModel pair_model(const NoiseModel& base, const HardwarePair& hp) {
  NoiseModel m = base;
  if (hp.has_depol_2q) m.depol_2q = hp.depol_2q;
  if (hp.has_coherent_eps) m.coherent_eps = hp.coherent_eps;
  return m;
}

void run_knots(const ExperimentConfig& cfg, Stage& stage, ResultBundle& rb, ordered_json& summary,
               ordered_json* circuits) {
  const WordSet ws = assemble_words(cfg);
  const int nw = static_cast<int>(ws.words.size());
  const bool multi = cfg.qubit_pairs.size() > 1;

  CsvTable t;
  t.header = {"word", "k",  "writhe", "cnots_upper", "cnots_lower", "trial",
              "re",   "im", "seed",   "qubit_pair",  "timestamp"};

  std::vector<plots::KnotMark> marks;
  std::vector<plots::DistSeries> measured_series;
  plots::DistSeries exact_series;  // identical for every hardware pair
  exact_series.label = "exact";
  exact_series.is_reference = true;
  ordered_json jpairs = ordered_json::array();

  for (const HardwarePair& hp : cfg.qubit_pairs) {
    const NoiseModel m = pair_model(cfg.noise, hp);
    const std::uint64_t pseed = child_seed(cfg.seed, fnv1a(hp.label));

    std::vector<JonesEstimate> ests(ws.words.size());
    std::exception_ptr eptr = nullptr;
#pragma omp parallel for schedule(dynamic)
    for (int wi = 0; wi < nw; ++wi) {
      try {
        ests[wi] = estimate_jones(ws.words[wi], m, cfg.shots, cfg.trials, hp.label,
                                  child_seed(pseed, static_cast<std::uint64_t>(wi)), cfg.timestamp,
                                  cfg.prep_strategy(), cfg.dqc_options());
      } catch (...) {
#pragma omp critical
        {
          if (!eptr) eptr = std::current_exception();
        }
      }
    }
    if (eptr) std::rethrow_exception(eptr);

    ordered_json jwords = ordered_json::array();
    for (int wi = 0; wi < nw; ++wi) {
      const JonesEstimate& est = ests[wi];
      const BraidWord& w = ws.words[wi];
      const std::uint64_t wseed = child_seed(pseed, static_cast<std::uint64_t>(wi));

      for (int tr = 0; tr < cfg.trials; ++tr) {
        const Cmplx v = est.trial_values[static_cast<std::size_t>(tr)];
        t.rows.push_back({ws.display[wi], std::to_string(w.crossings()),
                          std::to_string(writhe(w)), std::to_string(est.cnots_upper),
                          std::to_string(est.cnots_lower), std::to_string(tr),
                          fmt_double(v.real()), fmt_double(v.imag()),
                          std::to_string(child_seed(wseed, static_cast<std::uint64_t>(tr))),
                          hp.label, std::to_string(cfg.timestamp)});
      }

      const double n = static_cast<double>(est.trials);
      ordered_json jw;
      jw["word"] = ws.display[wi];
      jw["canonical"] = w.str();
      jw["crossings"] = w.crossings();
      jw["writhe"] = writhe(w);
      jw["cnots_upper"] = est.cnots_upper;
      jw["cnots_lower"] = est.cnots_lower;
      jw["exact"] = cplx_json(est.value);
      jw["mean"] = cplx_json(est.mean);
      jw["cov"] = est.cov;
      jw["mean_stderr"] = reim_json(std::sqrt(est.cov[0] / n), std::sqrt(est.cov[3] / n));
      jwords.push_back(jw);

      plots::KnotMark mark;
      mark.label = (multi ? hp.label + ":" : "") + ws.display[wi];
      mark.mean = est.mean;
      mark.cov_mean = {est.cov[0] / n, est.cov[1] / n, est.cov[3] / n};
      mark.oracle = est.value;
      marks.push_back(mark);
    }

    ordered_json jdist = ordered_json::array();
    plots::DistSeries meas;
    meas.label = multi ? hp.label : "measured";
    for (const auto& [ta, tb] : cfg.distance_pairs) {
      const std::size_t ia = ws.by_canon.at(BraidWord::parse(ta).str());
      const std::size_t ib = ws.by_canon.at(BraidWord::parse(tb).str());
      DistanceEstimate de;
      try {
        de = knot_distance(ests[ia], ests[ib], cfg.normalize_distances);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid config key 'knots.pairs': ") + e.what());
      }
      const double exact_d = std::abs(ests[ia].value - ests[ib].value);
      const int crossings = std::max(ws.words[ia].crossings(), ws.words[ib].crossings());

      ordered_json jd;
      jd["a"] = ta;
      jd["b"] = tb;
      jd["crossings"] = crossings;
      jd["exact_distance"] = exact_d;
      jd["distance"] = de.distance;
      jd["err"] = de.err;
      jd["normalized"] = cfg.normalize_distances;
      jdist.push_back(jd);

      meas.x.push_back(crossings);
      meas.y.push_back(de.distance);
      meas.yerr.push_back(de.err);
      if (exact_series.x.size() < cfg.distance_pairs.size()) {
        exact_series.x.push_back(crossings);
        exact_series.y.push_back(cfg.normalize_distances ? 1.0 : exact_d);
      }
    }
    if (!meas.x.empty()) measured_series.push_back(meas);

    ordered_json jp;
    jp["qubit_pair"] = hp.label;
    jp["depol_2q"] = m.depol_2q;
    jp["coherent_eps"] = m.coherent_eps;
    jp["words"] = jwords;
    jp["distances"] = jdist;
    jpairs.push_back(jp);
  }

  stage.add("knots.csv", t.serialize());
  rb.csv_paths.push_back("knots.csv");

  summary["shots"] = cfg.shots;
  summary["trials"] = cfg.trials;
  summary["normalize_distances"] = cfg.normalize_distances;
  summary["pairs"] = jpairs;

  stage.add("knots_plane.svg", render_ellipse_plot(plots::knots_plane_plot(marks)));
  rb.svg_paths.push_back("knots_plane.svg");

  if (!measured_series.empty()) {
    std::vector<plots::DistSeries> dist_series;
    dist_series.push_back(exact_series);
    for (plots::DistSeries& s : measured_series) dist_series.push_back(std::move(s));
    stage.add("distances.svg",
              render_plot(plots::distance_plot(dist_series, cfg.normalize_distances)));
    rb.svg_paths.push_back("distances.svg");
  }

  if (circuits != nullptr) {
    ordered_json blocks;
    for (int wi = 0; wi < nw; ++wi) {
      const BlockCircuits bc = block_circuits(ws.words[wi]);
      ordered_json b;
      b["upper"] = circuit_to_json(bc.upper);
      b["lower"] = circuit_to_json(bc.lower);
      blocks[ws.display[wi]] = b;
    }
    (*circuits)["blocks"] = blocks;
  }
}

void run_oracle(const ExperimentConfig& cfg, ordered_json& summary, ordered_json* circuits) {
  const WordSet ws = assemble_words(cfg);

  ordered_json jwords = ordered_json::array();
  ordered_json blocks;
  for (std::size_t wi = 0; wi < ws.words.size(); ++wi) {
    const BraidWord& w = ws.words[wi];
    const BlockPair bp = braid_blocks(w);
    const Cmplx wtr = weighted_trace(trace(bp.upper), trace(bp.lower));
    const BlockCircuits bc = block_circuits(w);

    ordered_json jw;
    jw["word"] = ws.display[wi];
    jw["canonical"] = w.str();
    jw["crossings"] = w.crossings();
    jw["writhe"] = writhe(w);
    jw["weighted_trace"] = cplx_json(wtr);
    jw["value"] = cplx_json(jones_value(wtr, writhe(w)));
    jw["cnots_upper"] = cnot_count(bc.upper);
    jw["cnots_lower"] = cnot_count(bc.lower);
    jwords.push_back(jw);

    if (circuits != nullptr) {
      ordered_json b;
      b["upper"] = circuit_to_json(bc.upper);
      b["lower"] = circuit_to_json(bc.lower);
      blocks[ws.display[wi]] = b;
    }
  }

  ordered_json jdist = ordered_json::array();
  for (const auto& [ta, tb] : cfg.distance_pairs) {
    const BraidWord wa = BraidWord::parse(ta);
    const BraidWord wb = BraidWord::parse(tb);
    ordered_json jd;
    jd["a"] = ta;
    jd["b"] = tb;
    jd["crossings"] = std::max(wa.crossings(), wb.crossings());
    jd["distance"] = std::abs(jones_oracle(wa) - jones_oracle(wb));
    jdist.push_back(jd);
  }

  summary["words"] = jwords;
  summary["distances"] = jdist;
  if (circuits != nullptr) (*circuits)["blocks"] = blocks;
}

}  // namespace

ResultBundle run_suite(const ExperimentConfig& cfg, const std::string& out_dir,
                       bool dump_circuits) {
  ResultBundle rb;
  rb.version = kToolkitVersion;
  rb.out_dir = out_dir;

  ExperimentConfig eff = cfg;
  eff.out_dir = out_dir;

  Stage stage;
  ordered_json summary;
  summary["suite"] = eff.suite;
  summary["version"] = kToolkitVersion;
  summary["seed"] = eff.seed;
  summary["timestamp"] = eff.timestamp;

  ordered_json circuits;
  ordered_json* cptr = dump_circuits ? &circuits : nullptr;

  if (eff.suite == "trace-sweep")
    run_trace_sweep(eff, stage, rb, summary, cptr);
  else if (eff.suite == "visibility")
    run_visibility(eff, stage, rb, summary, cptr);
  else if (eff.suite == "knots")
    run_knots(eff, stage, rb, summary, cptr);
  else if (eff.suite == "oracle")
    run_oracle(eff, summary, cptr);
  else
    throw ConfigError("invalid config key 'suite': unknown suite '" + eff.suite + "'");

  stage.files.insert(stage.files.begin(), {"config_echo.json", json_bytes(echo_config(eff))});
  stage.add("summary.json", json_bytes(summary));
  if (dump_circuits) stage.add("circuits.json", json_bytes(circuits));

  commit_stage(stage, fs::path(out_dir));

  rb.summary_path = (fs::path(out_dir) / "summary.json").string();
  for (std::string& p : rb.csv_paths) p = (fs::path(out_dir) / p).string();
  for (std::string& p : rb.svg_paths) p = (fs::path(out_dir) / p).string();
  return rb;
}

}  // namespace dqc1bench

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "dqc1bench/config.hpp"
#include "dqc1bench/csv.hpp"
#include "dqc1bench/runner.hpp"
#include "dqc1bench/svg.hpp"

using namespace dqc1bench;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("dqc1bench-test-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

}  // namespace

TEST_CASE("fmt_double is deterministic and round-trips") {
  CHECK(fmt_double(0.0) == "0");
  CHECK(fmt_double(1.0) == "1");
  CHECK(fmt_double(-0.5) == "-0.5");
  CHECK(fmt_double(0.1) == "0.1");
  for (const double v : {3.141592653589793, -2.7182818e-8, 123456.789, 0.49267578125}) {
    CAPTURE(v);
    CHECK(csv_to_double(fmt_double(v)) == doctest::Approx(v).epsilon(1e-11));
    CHECK(fmt_double(v) == fmt_double(v));
  }
}

TEST_CASE("csv_to_double rejects junk") {
  CHECK(csv_to_double("2.5") == 2.5);
  CHECK(csv_to_double("-1e3") == -1000.0);
  CHECK_THROWS(csv_to_double(""));
  CHECK_THROWS(csv_to_double("abc"));
  CHECK_THROWS(csv_to_double("1.5x"));
}

TEST_CASE("CsvTable serialize then parse round-trips") {
  CsvTable t;
  t.header = {"a", "b", "c"};
  t.rows = {{"1", "2.5", "x"}, {"-3", "0", "y"}};
  const std::string text = t.serialize();
  CHECK(text == "a,b,c\n1,2.5,x\n-3,0,y\n");

  const CsvTable back = CsvTable::parse(text);
  CHECK(back.header == t.header);
  CHECK(back.rows == t.rows);
  CHECK(back.col("b") == 1);
  CHECK_THROWS(back.col("missing"));
}

TEST_CASE("CsvTable rejects ragged rows") {
  CsvTable t;
  t.header = {"a", "b"};
  t.rows = {{"1"}};
  CHECK_THROWS(t.serialize());
  CHECK_THROWS(CsvTable::parse("a,b\n1\n"));
  CHECK_THROWS(CsvTable::parse(""));
}

TEST_CASE("render_plot is deterministic and structurally sane") {
  Plot plot;
  plot.title = "decay";
  plot.xlabel = "cnots";
  plot.ylabel = "visibility";
  Series s;
  s.label = "l=1";
  s.x = {0.0, 1.0, 2.0};
  s.y = {1.0, 0.5, 0.25};
  s.yerr = {0.01, 0.02, 0.03};
  plot.series.push_back(s);

  const std::string svg = render_plot(plot);
  CHECK(svg == render_plot(plot));
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.rfind("</svg>") != std::string::npos);
  CHECK(svg.find("decay") != std::string::npos);
  CHECK(svg.find("visibility") != std::string::npos);
  CHECK(svg.find("l=1") != std::string::npos);

  // log scale drops nonpositive points instead of emitting NaN coordinates
  plot.log_y = true;
  plot.series[0].y[2] = 0.0;
  const std::string log_svg = render_plot(plot);
  CHECK(log_svg.find("nan") == std::string::npos);
  CHECK(log_svg.find("inf") == std::string::npos);
}

TEST_CASE("render_ellipse_plot covers the marks") {
  EllipsePlot plot;
  plot.title = "complex plane";
  EllipseMark m;
  m.label = "s12^2";
  m.cx = -0.3;
  m.cy = -0.95;
  m.c00 = 0.01;
  m.c01 = 0.002;
  m.c11 = 0.02;
  m.has_ref = true;
  m.rx = -0.31;
  m.ry = -0.96;
  plot.marks.push_back(m);

  const std::string svg = render_ellipse_plot(plot);
  CHECK(svg == render_ellipse_plot(plot));
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("s12^2") != std::string::npos);
  // the 1-sigma contour is a sampled path (pixel scales differ per axis),
  // filled translucently, with a solid dot at the mean
  CHECK(svg.find("fill-opacity") != std::string::npos);
  CHECK(svg.find("<path") != std::string::npos);
  CHECK(svg.find("<circle") != std::string::npos);
}

TEST_CASE("run_suite writes a complete oracle bundle") {
  TempDir tmp;
  nlohmann::json doc{{"suite", "oracle"}};
  const ExperimentConfig cfg = parse_config(doc);
  const ResultBundle rb = run_suite(cfg, (tmp.path / "oracle").string(), false);

  CHECK(fs::exists(rb.summary_path));
  CHECK(fs::exists(fs::path(rb.out_dir) / "config_echo.json"));
  const nlohmann::json summary = nlohmann::json::parse(slurp(rb.summary_path));
  CHECK(summary.at("suite") == "oracle");
  CHECK(summary.at("version") == kToolkitVersion);
  CHECK(summary.contains("words"));
  CHECK(summary.contains("distances"));

  // the echo parses back to the same effective config, with out_dir rewritten
  // to the bundle's actual location
  const nlohmann::json echo =
      nlohmann::json::parse(slurp(fs::path(rb.out_dir) / "config_echo.json"));
  nlohmann::json expect = echo_config(cfg);
  expect["out_dir"] = rb.out_dir;
  const nlohmann::json round_trip = echo_config(parse_config(echo));
  CHECK(round_trip == expect);
}

TEST_CASE("run_suite bundles are byte-identical across reruns") {
  TempDir tmp;
  nlohmann::json doc{{"suite", "knots"},
                     {"shots", 128},
                     {"trials", 2},
                     {"knots", {{"words", {"s12^2", "s23i"}},
                                {"pairs", nlohmann::json::array()}}}};
  const ExperimentConfig cfg = parse_config(doc);

  const ResultBundle a = run_suite(cfg, (tmp.path / "a").string(), false);
  const ResultBundle b = run_suite(cfg, (tmp.path / "b").string(), false);
  REQUIRE(!a.csv_paths.empty());
  for (std::size_t i = 0; i < a.csv_paths.size(); ++i)
    CHECK(slurp(a.csv_paths[i]) == slurp(b.csv_paths[i]));
  CHECK(slurp(a.summary_path) == slurp(b.summary_path));
  for (std::size_t i = 0; i < a.svg_paths.size(); ++i)
    CHECK(slurp(a.svg_paths[i]) == slurp(b.svg_paths[i]));

  // rerunning over an existing bundle replaces it atomically
  const ResultBundle c = run_suite(cfg, (tmp.path / "a").string(), false);
  CHECK(slurp(c.summary_path) == slurp(b.summary_path));
  CHECK(!fs::exists(tmp.path / "a.tmp"));
}

TEST_CASE("trace-sweep bundle carries the sweep CSV schema") {
  TempDir tmp;
  // the default model is hardware-like, so pin an explicitly ideal one
  nlohmann::json doc{{"suite", "trace-sweep"},
                     {"shots", 0},
                     {"grid", 5},
                     {"noise", {{"depol_1q", 1.0}, {"depol_2q", 1.0}, {"coherent_eps", 0.0}}}};
  const ExperimentConfig cfg = parse_config(doc);
  const ResultBundle rb = run_suite(cfg, (tmp.path / "sweep").string(), false);

  REQUIRE(rb.csv_paths.size() == 1);
  const CsvTable table = CsvTable::parse(slurp(rb.csv_paths[0]));
  for (const std::string col : {"n_mixed", "l", "cnots", "theta", "sx_mean", "sx_err",
                                "sy_mean", "sy_err", "sz_mean", "sz_err", "seed", "timestamp"})
    CHECK_NOTHROW(table.col(col));
  CHECK(table.rows.size() == 5);
  // noiseless infinite-shot sweep: sx at theta=0 is exactly 1
  CHECK(csv_to_double(table.rows[0][table.col("sx_mean")]) == doctest::Approx(1.0));
}

TEST_CASE("dump_circuits adds a circuits file") {
  TempDir tmp;
  nlohmann::json doc{{"suite", "trace-sweep"}, {"shots", 0}, {"grid", 3}};
  const ExperimentConfig cfg = parse_config(doc);
  const ResultBundle rb = run_suite(cfg, (tmp.path / "sweep").string(), true);
  const fs::path circuits = fs::path(rb.out_dir) / "circuits.json";
  REQUIRE(fs::exists(circuits));
  const nlohmann::json doc2 = nlohmann::json::parse(slurp(circuits));
  CHECK(!doc2.empty());
}

TEST_CASE("write_report renders tables and plots from a bundle") {
  TempDir tmp;
  nlohmann::json doc{{"suite", "knots"},
                     {"shots", 64},
                     {"trials", 2},
                     {"knots", {{"k_max", 3}}}};
  const ExperimentConfig cfg = parse_config(doc);
  const ResultBundle rb = run_suite(cfg, (tmp.path / "knots").string(), false);

  const fs::path report_dir = tmp.path / "report";
  fs::create_directories(report_dir);
  write_report(rb.out_dir, "", report_dir.string());
  const fs::path md = report_dir / "report.md";
  REQUIRE(fs::exists(md));
  const std::string text = slurp(md);
  CHECK(text.find("s12^2") != std::string::npos);
  CHECK(text.find("|") != std::string::npos);  // markdown tables

  int svgs = 0;
  for (const auto& entry : fs::directory_iterator(report_dir))
    if (entry.path().extension() == ".svg") ++svgs;
  CHECK(svgs >= 1);
}

TEST_CASE("write_report fails cleanly on a non-bundle directory") {
  TempDir tmp;
  fs::create_directories(tmp.path / "empty");
  CHECK_THROWS_AS(write_report((tmp.path / "empty").string(), "",
                               (tmp.path / "report").string()),
                  IoError);
}

TEST_CASE("read_text_file raises IoError for missing files") {
  TempDir tmp;
  CHECK_THROWS_AS(read_text_file((tmp.path / "nope.csv").string()), IoError);
  write_text_file((tmp.path / "x.txt").string(), "hello\n");
  CHECK(read_text_file((tmp.path / "x.txt").string()) == "hello\n");
}

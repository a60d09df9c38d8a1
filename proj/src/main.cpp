#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dqc1bench/config.hpp"
#include "dqc1bench/runner.hpp"

namespace {

struct RunArgs {
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
  std::int64_t now = 0;
  bool dump_circuit = false;
  bool infinite_shots = false;
};

struct ReportArgs {
  std::string bundle;
  std::string compare;
  std::string out;
};

void add_run_options(CLI::App* sub, RunArgs& a) {
  sub->add_option("--config", a.config, "experiment config (JSON)")->required();
  sub->add_option("--seed", a.seed, "override the config's base seed");
  sub->add_option("--out", a.out, "output bundle directory");
  sub->add_option("--now", a.now, "override the config's timestamp (unix seconds)");
  sub->add_flag("--dump-circuit", a.dump_circuit, "also write circuits.json into the bundle");
  sub->add_flag("--infinite-shots", a.infinite_shots,
                "exact expectation values instead of sampled shots");
}

int run_command(const std::string& suite, const CLI::App* sub, const RunArgs& a) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(dqc1bench::read_text_file(a.config));
  } catch (const nlohmann::json::parse_error& e) {
    throw dqc1bench::ConfigError(std::string("config is not valid JSON: ") + e.what());
  }

  dqc1bench::ExperimentConfig cfg = dqc1bench::parse_config(doc);
  if (cfg.suite != suite)
    throw dqc1bench::ConfigError("invalid config key 'suite': config says '" + cfg.suite +
                                 "' but the '" + suite + "' command was invoked");

  if (sub->count("--seed") > 0) cfg.seed = a.seed;
  if (sub->count("--now") > 0) cfg.timestamp = a.now;
  if (a.infinite_shots) cfg.shots = 0;

  // Output directory priority: --out, then the config, then the environment,
  // then the built-in default already in cfg.out_dir.
  std::string out_dir = cfg.out_dir;
  if (!a.out.empty()) {
    out_dir = a.out;
  } else if (!doc.contains("out_dir")) {
    if (const char* env = std::getenv("DQC1BENCH_OUT_DIR"); env != nullptr && *env != '\0')
      out_dir = env;
  }

  const auto t0 = std::chrono::steady_clock::now();
  dqc1bench::ResultBundle rb = dqc1bench::run_suite(cfg, out_dir, a.dump_circuit);
  rb.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::printf("bundle: %s\n", rb.out_dir.c_str());
  for (const std::string& p : rb.csv_paths) std::printf("  csv:     %s\n", p.c_str());
  for (const std::string& p : rb.svg_paths) std::printf("  svg:     %s\n", p.c_str());
  std::printf("  summary: %s\n", rb.summary_path.c_str());
  std::printf("%s suite done in %.2f s (v%s)\n", suite.c_str(), rb.duration_seconds,
              rb.version.c_str());
  return 0;
}

int report_command(const ReportArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  dqc1bench::write_report(a.bundle, a.compare, a.out);
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::string where = a.out.empty() ? a.bundle : a.out;
  std::printf("report: %s/report.md\n", where.c_str());
  std::printf("report done in %.2f s\n", dt);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noisy one-clean-qubit benchmark toolkit"};
  app.set_version_flag("--version", dqc1bench::kToolkitVersion);
  app.require_subcommand(1);

  RunArgs run_args;
  const std::vector<std::pair<std::string, std::string>> suites = {
      {"trace-sweep", "single theta sweep of the echo payload"},
      {"visibility", "visibility decay across payload depths"},
      {"knots", "knot-distinguishing protocol runs"},
      {"oracle", "exact invariant values, no simulation"},
  };
  for (const auto& [name, help] : suites) add_run_options(app.add_subcommand(name, help), run_args);

  ReportArgs rep_args;
  CLI::App* rep = app.add_subcommand("report", "rebuild plots and tables from a bundle's CSVs");
  rep->add_option("bundle", rep_args.bundle, "result bundle directory")->required();
  rep->add_option("--compare", rep_args.compare, "second bundle to overlay");
  rep->add_option("--out", rep_args.out, "where to write report files (default: the bundle)");

  CLI11_PARSE(app, argc, argv);

  const CLI::App* chosen = app.get_subcommands().front();
  try {
    if (chosen->get_name() == "report") return report_command(rep_args);
    return run_command(chosen->get_name(), chosen, run_args);
  } catch (const dqc1bench::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const dqc1bench::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

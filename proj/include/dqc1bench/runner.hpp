#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "dqc1bench/config.hpp"

namespace dqc1bench {

inline constexpr const char* kToolkitVersion = "0.1.0";

// Filesystem trouble (unreadable input, failed write). Mapped to exit code 3
// by the CLI, as opposed to ConfigError's exit 2.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ResultBundle {
  std::string out_dir;
  std::vector<std::string> csv_paths;
  std::string summary_path;
  std::vector<std::string> svg_paths;
  std::string version;
  // measured by the caller and reported on stdout only; keeping it out of
  // the written files preserves byte-identical reruns
  double duration_seconds = 0.0;
};

// Execute the configured suite and write the bundle atomically: everything
// is staged under out_dir + ".tmp", then the stage replaces out_dir in one
// rename. Every bundle contains config_echo.json and summary.json.
ResultBundle run_suite(const ExperimentConfig& cfg, const std::string& out_dir,
                       bool dump_circuits);

// Rebuild plots and a Markdown summary from a bundle's CSVs alone. compare_dir
// (optional, may be empty) overlays a second bundle of the same kind, drawn
// dashed. Report files are written into out_dir (defaults to bundle_dir).
void write_report(const std::string& bundle_dir, const std::string& compare_dir,
                  const std::string& out_dir);

// Whole-file helpers used by the runner and the CLI; both throw IoError.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& bytes);

}  // namespace dqc1bench

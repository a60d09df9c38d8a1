#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "dqc1bench/dqc1.hpp"

namespace dqc1bench {

// Invalid configuration: the message names the offending key. Mapped to
// exit code 2 by the CLI.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One hardware qubit pair for the knots suite: runs the word set under the
// base noise model with these overrides applied.
struct HardwarePair {
  std::string label = "Q0-Q1";
  bool has_depol_2q = false;
  double depol_2q = 0.0;
  bool has_coherent_eps = false;
  double coherent_eps = 0.0;
};

struct ExperimentConfig {
  std::string suite;  // trace-sweep | visibility | knots | oracle
  std::uint64_t seed = 42;
  std::uint64_t shots = 4096;
  int trials = 12;
  int grid = 25;
  std::int64_t timestamp = 0;
  std::string out_dir = "results";
  std::string prep;  // direct | bell | flip; default depends on suite
  std::string engine = "optimized";
  bool noisy_prep = false;
  int flip_samples = 8;
  double polarization = 1.0;
  NoiseModel noise;

  // sweep suites
  int n_mixed = 1;
  int l = 1;                  // trace-sweep
  std::vector<int> l_values;  // visibility; default 1..7

  // knots / oracle suites
  bool words_explicit = false;
  std::vector<std::string> words;  // literal word texts when explicit
  int k_max = 9;
  std::vector<std::string> generators = {"s12", "s23"};
  std::vector<std::pair<std::string, std::string>> distance_pairs;
  bool normalize_distances = false;
  std::vector<HardwarePair> qubit_pairs;

  PrepStrategy prep_strategy() const;
  kernels::Engine engine_kind() const;
  DqcOptions dqc_options() const;

  // The word list the knots/oracle suites run: (display text, parsed word).
  // Explicit `words` win; otherwise generators x k = 0..k_max.
  std::vector<std::pair<std::string, std::string>> word_list() const;
};

// Parse + validate a config document. Unknown keys anywhere are rejected
// with their full path; all range violations name the key.
ExperimentConfig parse_config(const nlohmann::json& doc);

// Effective config with every field explicit; parsing the echo reproduces
// the config exactly.
nlohmann::ordered_json echo_config(const ExperimentConfig& cfg);

// The distance pairs the knots and oracle suites fall back to when the config
// lists none; the report generator uses the same set.
const std::vector<std::pair<std::string, std::string>>& default_distance_pairs();

}  // namespace dqc1bench

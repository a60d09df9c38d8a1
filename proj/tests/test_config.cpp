#include <doctest.h>

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "dqc1bench/config.hpp"

using namespace dqc1bench;
using nlohmann::json;

namespace {

// parsing must fail with a ConfigError that names the offending key
void expect_bad_key(const json& doc, const std::string& key) {
  try {
    parse_config(doc);
    FAIL("expected ConfigError for key '", key, "'");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CAPTURE(msg);
    CHECK(msg.find("'" + key + "'") != std::string::npos);
  }
}

json minimal(const std::string& suite) { return json{{"suite", suite}}; }

}  // namespace

TEST_CASE("minimal configs parse with defaults") {
  const ExperimentConfig cfg = parse_config(minimal("trace-sweep"));
  CHECK(cfg.suite == "trace-sweep");
  CHECK(cfg.seed == 42);
  CHECK(cfg.shots == 4096);
  CHECK(cfg.trials == 12);
  CHECK(cfg.grid == 25);
  CHECK(cfg.prep == "direct");
  CHECK(cfg.engine == "optimized");
  CHECK(cfg.n_mixed == 1);
  CHECK(cfg.l == 1);
  CHECK(cfg.l_values == std::vector<int>{1, 2, 3, 4, 5, 6, 7});
  CHECK(cfg.distance_pairs.empty());  // only knots/oracle get the default set
  REQUIRE(cfg.qubit_pairs.size() == 1);
  CHECK(cfg.qubit_pairs[0].label == "Q0-Q1");

  const ExperimentConfig knots = parse_config(minimal("knots"));
  CHECK(knots.prep == "flip");
  CHECK(knots.distance_pairs == default_distance_pairs());
  CHECK(knots.k_max == 9);
  CHECK(knots.generators == std::vector<std::string>{"s12", "s23"});
}

TEST_CASE("suite is required and validated") {
  expect_bad_key(json::object(), "suite");
  expect_bad_key(minimal("spectroscopy"), "suite");
}

TEST_CASE("non-object root is rejected") {
  CHECK_THROWS_AS(parse_config(json::array()), ConfigError);
  CHECK_THROWS_AS(parse_config(json(3)), ConfigError);
}

TEST_CASE("unknown keys are rejected with their full path") {
  json doc = minimal("trace-sweep");
  doc["typo_key"] = 1;
  expect_bad_key(doc, "typo_key");

  doc = minimal("trace-sweep");
  doc["noise"] = {{"depol_3q", 0.5}};
  expect_bad_key(doc, "noise.depol_3q");

  doc = minimal("trace-sweep");
  doc["noise"] = {{"drift", {{"sigma", 0.1}}}};
  expect_bad_key(doc, "noise.drift.sigma");

  doc = minimal("trace-sweep");
  doc["noise"] = {{"pair_profile", {{"0-1", {{"alpha", 0.9}}}}}};
  expect_bad_key(doc, "noise.pair_profile.0-1.alpha");

  doc = minimal("trace-sweep");
  doc["sweep"] = {{"ell", 3}};
  expect_bad_key(doc, "sweep.ell");

  doc = minimal("knots");
  doc["knots"] = {{"kmax", 5}};
  expect_bad_key(doc, "knots.kmax");

  doc = minimal("knots");
  doc["knots"] = {{"qubit_pairs", {{{"label", "A"}, {"eps", 0.1}}}}};
  expect_bad_key(doc, "knots.qubit_pairs.eps");
}

TEST_CASE("range violations name the key") {
  json doc = minimal("trace-sweep");
  doc["trials"] = 0;
  expect_bad_key(doc, "trials");

  doc = minimal("trace-sweep");
  doc["grid"] = 1;
  expect_bad_key(doc, "grid");

  doc = minimal("trace-sweep");
  doc["polarization"] = 0.0;
  expect_bad_key(doc, "polarization");

  doc = minimal("trace-sweep");
  doc["flip_samples"] = 0;
  expect_bad_key(doc, "flip_samples");

  doc = minimal("trace-sweep");
  doc["seed"] = -3;
  expect_bad_key(doc, "seed");

  doc = minimal("trace-sweep");
  doc["noise"] = {{"depol_2q", 0.0}};
  expect_bad_key(doc, "noise.depol_2q");

  doc = minimal("trace-sweep");
  doc["noise"] = {{"depol_1q", 1.0001}};
  expect_bad_key(doc, "noise.depol_1q");

  doc = minimal("trace-sweep");
  doc["noise"] = {{"readout_flip", 0.5}};
  expect_bad_key(doc, "noise.readout_flip");

  doc = minimal("trace-sweep");
  doc["noise"] = {{"drift", {{"sigma_per_day", -0.1}}}};
  expect_bad_key(doc, "noise.drift.sigma_per_day");

  doc = minimal("trace-sweep");
  doc["sweep"] = {{"n_mixed", 2}};
  expect_bad_key(doc, "sweep.n_mixed");

  doc = minimal("trace-sweep");
  doc["sweep"] = {{"l", -1}};
  expect_bad_key(doc, "sweep.l");

  doc = minimal("knots");
  doc["knots"] = {{"k_max", -1}};
  expect_bad_key(doc, "knots.k_max");
}

TEST_CASE("type mismatches name the key") {
  json doc = minimal("trace-sweep");
  doc["shots"] = "many";
  expect_bad_key(doc, "shots");

  doc = minimal("trace-sweep");
  doc["noisy_prep"] = 1;
  expect_bad_key(doc, "noisy_prep");

  doc = minimal("trace-sweep");
  doc["noise"] = json::array();
  expect_bad_key(doc, "noise");
}

TEST_CASE("enum fields are validated") {
  json doc = minimal("trace-sweep");
  doc["prep"] = "warm";
  expect_bad_key(doc, "prep");

  doc = minimal("trace-sweep");
  doc["engine"] = "fast";
  expect_bad_key(doc, "engine");

  doc = minimal("trace-sweep");
  doc["noise"] = {{"coherent_model", "xy"}};
  expect_bad_key(doc, "noise.coherent_model");

  doc = minimal("trace-sweep");
  doc["noise"] = {{"depol_scope", "both"}};
  expect_bad_key(doc, "noise.depol_scope");
}

TEST_CASE("visibility suite requires at least three l values") {
  json doc = minimal("visibility");
  doc["sweep"] = {{"l_values", {1, 2}}};
  expect_bad_key(doc, "sweep.l_values");

  doc["sweep"] = {{"l_values", {1, 2, 4}}};
  CHECK(parse_config(doc).l_values == std::vector<int>{1, 2, 4});
}

TEST_CASE("braid words in configs are validated") {
  json doc = minimal("knots");
  doc["knots"] = {{"words", {"s12", "s31"}}};
  expect_bad_key(doc, "knots.words");

  doc["knots"] = {{"pairs", json::array({json::array({"s12", "s14"})})}};
  expect_bad_key(doc, "knots.pairs");

  doc["knots"] = {{"generators", {"s12", "q1"}}};
  expect_bad_key(doc, "knots.generators");
}

TEST_CASE("qubit pair labels are validated") {
  json doc = minimal("knots");
  doc["knots"] = {{"qubit_pairs", {{{"label", ""}}}}};
  expect_bad_key(doc, "knots.qubit_pairs.label");

  doc["knots"] = {{"qubit_pairs", {{{"label", "Q0,Q1"}}}}};
  expect_bad_key(doc, "knots.qubit_pairs.label");

  doc["knots"] = {{"qubit_pairs", {{{"label", "Q0-Q1"}, {"coherent_eps", 0.05}}}}};
  const ExperimentConfig cfg = parse_config(doc);
  REQUIRE(cfg.qubit_pairs.size() == 1);
  CHECK(cfg.qubit_pairs[0].has_coherent_eps);
  CHECK(!cfg.qubit_pairs[0].has_depol_2q);
  CHECK(cfg.qubit_pairs[0].coherent_eps == 0.05);
}

TEST_CASE("an explicit empty pair list disables distances") {
  json doc = minimal("knots");
  doc["knots"] = {{"pairs", json::array()}};
  CHECK(parse_config(doc).distance_pairs.empty());
}

TEST_CASE("word_list enumerates generators up to k_max unless words are explicit") {
  json doc = minimal("oracle");
  doc["knots"] = {{"k_max", 2}, {"generators", {"s12"}}};
  const auto list = parse_config(doc).word_list();
  REQUIRE(list.size() == 3);
  CHECK(list[0].first == "s12^0");
  CHECK(list[2].first == "s12^2");

  json explicit_doc = minimal("oracle");
  explicit_doc["knots"] = {{"words", {"s12.s23i.s12", "s23^3", "s23^3"}}};
  const auto words = parse_config(explicit_doc).word_list();
  REQUIRE(words.size() == 3);  // configured lists are run verbatim, duplicates included
  CHECK(words[0].first == "s12.s23i.s12");
}

TEST_CASE("noise block round-trips through parse") {
  json doc = minimal("knots");
  doc["seed"] = 7;
  doc["shots"] = 2048;
  doc["noise"] = {{"depol_1q", 0.999},
                  {"depol_2q", 0.95},
                  {"coherent_eps", 0.07},
                  {"readout_flip", 0.01},
                  {"coherent_model", "control_rz"},
                  {"depol_scope", "local"},
                  {"drift", {{"sigma_per_day", 0.004}, {"epoch", 1700000000}, {"seed", 3}}},
                  {"pair_profile", {{"1-2", {{"depol_2q", 0.9}}}}}};
  const ExperimentConfig cfg = parse_config(doc);
  CHECK(cfg.noise.depol_1q == 0.999);
  CHECK(cfg.noise.depol_2q == 0.95);
  CHECK(cfg.noise.coherent_eps == 0.07);
  CHECK(cfg.noise.readout_flip == 0.01);
  CHECK(cfg.noise.model == CoherentModel::ControlRz);
  CHECK(cfg.noise.scope == DepolScope::Local);
  CHECK(cfg.noise.drift.sigma_per_day == 0.004);
  CHECK(cfg.noise.drift.epoch == 1700000000);
  CHECK(cfg.noise.drift.seed == 3);
  REQUIRE(cfg.noise.pair_profile.count("1-2") == 1);
  // unset override fields inherit the base model at parse time
  CHECK(cfg.noise.pair_profile.at("1-2").depol_2q == 0.9);
  CHECK(cfg.noise.pair_profile.at("1-2").coherent_eps == 0.07);
}

TEST_CASE("echo_config round-trips exactly") {
  // exercise every section, including non-defaults
  json doc = minimal("knots");
  doc["seed"] = 1234;
  doc["shots"] = 1024;
  doc["trials"] = 4;
  doc["grid"] = 13;
  doc["timestamp"] = 1765432100;
  doc["out_dir"] = "bundles/run1";
  doc["prep"] = "bell";
  doc["engine"] = "reference";
  doc["noisy_prep"] = true;
  doc["flip_samples"] = 5;
  doc["polarization"] = 0.8;
  doc["noise"] = {{"depol_2q", 0.9},
                  {"coherent_model", "target_rx"},
                  {"pair_profile", {{"0-3", {{"coherent_eps", 0.2}}}}}};
  doc["sweep"] = {{"n_mixed", 3}, {"l_values", {0, 2, 4, 8}}};
  doc["knots"] = {{"words", {"s12^2", "s23i"}},
                  {"pairs", json::array({json::array({"s12^2", "s23i"})})},
                  {"normalize_distances", true},
                  {"qubit_pairs", {{{"label", "A"}, {"depol_2q", 0.93}},
                                   {{"label", "B"}, {"coherent_eps", 0.01}}}}};

  const ExperimentConfig cfg = parse_config(doc);
  const nlohmann::ordered_json echo = echo_config(cfg);
  const ExperimentConfig again = parse_config(echo);
  CHECK(echo_config(again) == echo);

  // spot checks that the echo carried the non-defaults
  CHECK(again.prep == "bell");
  CHECK(again.engine == "reference");
  CHECK(again.noisy_prep);
  CHECK(again.polarization == 0.8);
  CHECK(again.noise.model == CoherentModel::TargetRx);
  CHECK(again.words_explicit);
  CHECK(again.words == cfg.words);
  CHECK(again.distance_pairs == cfg.distance_pairs);
  CHECK(again.normalize_distances);
  REQUIRE(again.qubit_pairs.size() == 2);
  CHECK(again.qubit_pairs[1].label == "B");
  CHECK(again.qubit_pairs[1].has_coherent_eps);
  CHECK(!again.qubit_pairs[1].has_depol_2q);
}

TEST_CASE("echo of a default config also round-trips") {
  for (const std::string suite : {"trace-sweep", "visibility", "knots", "oracle"}) {
    const ExperimentConfig cfg = parse_config(minimal(suite));
    const nlohmann::ordered_json echo = echo_config(cfg);
    CAPTURE(suite);
    CHECK(echo_config(parse_config(echo)) == echo);
  }
}

TEST_CASE("prep and engine map to the simulator enums") {
  ExperimentConfig cfg = parse_config(minimal("trace-sweep"));
  CHECK(cfg.prep_strategy() == PrepStrategy::DirectMixed);
  CHECK(cfg.engine_kind() == kernels::Engine::Optimized);
  cfg.prep = "flip";
  cfg.engine = "reference";
  CHECK(cfg.prep_strategy() == PrepStrategy::FlipAverage);
  CHECK(cfg.engine_kind() == kernels::Engine::Reference);

  const DqcOptions opts = cfg.dqc_options();
  CHECK(opts.engine == kernels::Engine::Reference);
  CHECK(opts.flip_samples == cfg.flip_samples);
}

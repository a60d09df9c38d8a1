#include "dqc1bench/config.hpp"

#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "dqc1bench/knots.hpp"

namespace dqc1bench {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& key, const std::string& what) {
  throw ConfigError("invalid config key '" + key + "': " + what);
}

void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key()))
      throw ConfigError("unknown config key '" + (path.empty() ? item.key() : path + "." + item.key()) + "'");
  }
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

double get_number(const json& obj, const std::string& path, const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) bad(join(path, key), "expected a number");
  return v.get<double>();
}

std::int64_t get_int(const json& obj, const std::string& path, const std::string& key,
                     std::int64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) bad(join(path, key), "expected an integer");
  return v.get<std::int64_t>();
}

std::uint64_t get_u64(const json& obj, const std::string& path, const std::string& key,
                      std::uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    bad(join(path, key), "expected a nonnegative integer");
  return static_cast<std::uint64_t>(v.get<std::int64_t>());
}

bool get_bool(const json& obj, const std::string& path, const std::string& key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_boolean()) bad(join(path, key), "expected a boolean");
  return v.get<bool>();
}

std::string get_string(const json& obj, const std::string& path, const std::string& key,
                       const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) bad(join(path, key), "expected a string");
  return v.get<std::string>();
}

void parse_noise(const json& obj, NoiseModel& m) {
  check_keys(obj, "noise",
             {"depol_1q", "depol_2q", "coherent_eps", "readout_flip", "coherent_model",
              "depol_scope", "drift", "pair_profile"});

  m.depol_1q = get_number(obj, "noise", "depol_1q", m.depol_1q);
  if (!(m.depol_1q > 0.0 && m.depol_1q <= 1.0)) bad("noise.depol_1q", "must be in (0, 1]");
  m.depol_2q = get_number(obj, "noise", "depol_2q", m.depol_2q);
  if (!(m.depol_2q > 0.0 && m.depol_2q <= 1.0)) bad("noise.depol_2q", "must be in (0, 1]");
  m.coherent_eps = get_number(obj, "noise", "coherent_eps", m.coherent_eps);
  if (!std::isfinite(m.coherent_eps)) bad("noise.coherent_eps", "must be finite");
  m.readout_flip = get_number(obj, "noise", "readout_flip", m.readout_flip);
  if (!(m.readout_flip >= 0.0 && m.readout_flip < 0.5))
    bad("noise.readout_flip", "must be in [0, 0.5)");

  const std::string cm = get_string(obj, "noise", "coherent_model", "zz");
  if (cm == "zz")
    m.model = CoherentModel::ZZ;
  else if (cm == "control_rz")
    m.model = CoherentModel::ControlRz;
  else if (cm == "target_rx")
    m.model = CoherentModel::TargetRx;
  else
    bad("noise.coherent_model", "expected one of zz, control_rz, target_rx");

  const std::string scope = get_string(obj, "noise", "depol_scope", "global");
  if (scope == "global")
    m.scope = DepolScope::Global;
  else if (scope == "local")
    m.scope = DepolScope::Local;
  else
    bad("noise.depol_scope", "expected global or local");

  if (obj.contains("drift")) {
    const json& d = obj.at("drift");
    if (!d.is_object()) bad("noise.drift", "expected an object");
    check_keys(d, "noise.drift", {"sigma_per_day", "epoch", "seed"});
    m.drift.sigma_per_day = get_number(d, "noise.drift", "sigma_per_day", 0.0);
    if (!(m.drift.sigma_per_day >= 0.0)) bad("noise.drift.sigma_per_day", "must be >= 0");
    m.drift.epoch = get_int(d, "noise.drift", "epoch", 0);
    m.drift.seed = get_u64(d, "noise.drift", "seed", 0);
  }

  if (obj.contains("pair_profile")) {
    const json& p = obj.at("pair_profile");
    if (!p.is_object()) bad("noise.pair_profile", "expected an object");
    for (const auto& item : p.items()) {
      const std::string path = "noise.pair_profile." + item.key();
      if (!item.value().is_object()) bad(path, "expected an object");
      check_keys(item.value(), path, {"depol_2q", "coherent_eps"});
      PairOverride ov{m.depol_2q, m.coherent_eps};
      ov.depol_2q = get_number(item.value(), path, "depol_2q", ov.depol_2q);
      if (!(ov.depol_2q > 0.0 && ov.depol_2q <= 1.0)) bad(path + ".depol_2q", "must be in (0, 1]");
      ov.coherent_eps = get_number(item.value(), path, "coherent_eps", ov.coherent_eps);
      if (!std::isfinite(ov.coherent_eps)) bad(path + ".coherent_eps", "must be finite");
      m.pair_profile[item.key()] = ov;
    }
  }
}

void validate_word(const std::string& text, const std::string& key) {
  try {
    BraidWord::parse(text);
  } catch (const std::invalid_argument& e) {
    bad(key, e.what());
  }
}

}  // namespace

PrepStrategy ExperimentConfig::prep_strategy() const {
  if (prep == "direct") return PrepStrategy::DirectMixed;
  if (prep == "bell") return PrepStrategy::BellTrace;
  if (prep == "flip") return PrepStrategy::FlipAverage;
  throw ConfigError("invalid config key 'prep': expected one of direct, bell, flip");
}

kernels::Engine ExperimentConfig::engine_kind() const {
  if (engine == "optimized") return kernels::Engine::Optimized;
  if (engine == "reference") return kernels::Engine::Reference;
  throw ConfigError("invalid config key 'engine': expected optimized or reference");
}

DqcOptions ExperimentConfig::dqc_options() const {
  DqcOptions opts;
  opts.noisy_prep = noisy_prep;
  opts.flip_samples = flip_samples;
  opts.polarization = polarization;
  opts.engine = engine_kind();
  return opts;
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::word_list() const {
  std::vector<std::pair<std::string, std::string>> out;
  if (words_explicit) {
    for (const std::string& w : words) out.emplace_back(w, w);
    return out;
  }
  for (const std::string& gen : generators)
    for (int k = 0; k <= k_max; ++k) {
      const std::string text = gen + "^" + std::to_string(k);
      out.emplace_back(text, text);
    }
  return out;
}

ExperimentConfig parse_config(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("config root must be a JSON object");
  check_keys(doc, "",
             {"suite", "seed", "shots", "trials", "grid", "timestamp", "out_dir", "prep",
              "engine", "noisy_prep", "flip_samples", "polarization", "noise", "sweep", "knots"});

  ExperimentConfig cfg;
  cfg.suite = get_string(doc, "", "suite", "");
  if (cfg.suite != "trace-sweep" && cfg.suite != "visibility" && cfg.suite != "knots" &&
      cfg.suite != "oracle")
    bad("suite", "expected one of trace-sweep, visibility, knots, oracle");

  cfg.seed = get_u64(doc, "", "seed", cfg.seed);
  cfg.shots = get_u64(doc, "", "shots", cfg.shots);
  cfg.trials = static_cast<int>(get_int(doc, "", "trials", cfg.trials));
  if (cfg.trials < 1) bad("trials", "must be >= 1");
  cfg.grid = static_cast<int>(get_int(doc, "", "grid", cfg.grid));
  if (cfg.grid < 2) bad("grid", "must be >= 2");
  cfg.timestamp = get_int(doc, "", "timestamp", cfg.timestamp);
  cfg.out_dir = get_string(doc, "", "out_dir", cfg.out_dir);

  cfg.prep = get_string(doc, "", "prep", cfg.suite == "knots" ? "flip" : "direct");
  if (cfg.prep != "direct" && cfg.prep != "bell" && cfg.prep != "flip")
    bad("prep", "expected one of direct, bell, flip");
  cfg.engine = get_string(doc, "", "engine", cfg.engine);
  if (cfg.engine != "optimized" && cfg.engine != "reference")
    bad("engine", "expected optimized or reference");
  cfg.noisy_prep = get_bool(doc, "", "noisy_prep", cfg.noisy_prep);
  cfg.flip_samples = static_cast<int>(get_int(doc, "", "flip_samples", cfg.flip_samples));
  if (cfg.flip_samples < 1) bad("flip_samples", "must be >= 1");
  cfg.polarization = get_number(doc, "", "polarization", cfg.polarization);
  if (!(cfg.polarization > 0.0 && cfg.polarization <= 1.0))
    bad("polarization", "must be in (0, 1]");

  if (doc.contains("noise")) {
    if (!doc.at("noise").is_object()) bad("noise", "expected an object");
    parse_noise(doc.at("noise"), cfg.noise);
  }

  if (doc.contains("sweep")) {
    const json& s = doc.at("sweep");
    if (!s.is_object()) bad("sweep", "expected an object");
    check_keys(s, "sweep", {"n_mixed", "l", "l_values"});
    cfg.n_mixed = static_cast<int>(get_int(s, "sweep", "n_mixed", cfg.n_mixed));
    if (cfg.n_mixed != 1 && cfg.n_mixed != 3) bad("sweep.n_mixed", "presets support 1 or 3 only");
    cfg.l = static_cast<int>(get_int(s, "sweep", "l", cfg.l));
    if (cfg.l < 0) bad("sweep.l", "must be >= 0");
    if (s.contains("l_values")) {
      const json& lv = s.at("l_values");
      if (!lv.is_array() || lv.empty()) bad("sweep.l_values", "expected a nonempty array");
      for (const json& v : lv) {
        if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
          bad("sweep.l_values", "entries must be integers >= 0");
        cfg.l_values.push_back(static_cast<int>(v.get<std::int64_t>()));
      }
    }
  }
  if (cfg.l_values.empty())
    for (int l = 1; l <= 7; ++l) cfg.l_values.push_back(l);
  if (cfg.suite == "visibility" && cfg.l_values.size() < 3)
    bad("sweep.l_values", "the visibility suite needs at least 3 values to fit a decay");

  if (doc.contains("knots")) {
    const json& k = doc.at("knots");
    if (!k.is_object()) bad("knots", "expected an object");
    check_keys(k, "knots",
               {"words", "k_max", "generators", "pairs", "normalize_distances", "qubit_pairs"});

    if (k.contains("words")) {
      const json& w = k.at("words");
      if (!w.is_array() || w.empty()) bad("knots.words", "expected a nonempty array");
      cfg.words_explicit = true;
      for (const json& v : w) {
        if (!v.is_string()) bad("knots.words", "entries must be strings");
        validate_word(v.get<std::string>(), "knots.words");
        cfg.words.push_back(v.get<std::string>());
      }
    }
    cfg.k_max = static_cast<int>(get_int(k, "knots", "k_max", cfg.k_max));
    if (cfg.k_max < 0) bad("knots.k_max", "must be >= 0");
    if (k.contains("generators")) {
      const json& g = k.at("generators");
      if (!g.is_array() || g.empty()) bad("knots.generators", "expected a nonempty array");
      cfg.generators.clear();
      for (const json& v : g) {
        const std::string gen = v.is_string() ? v.get<std::string>() : "";
        if (gen != "s12" && gen != "s23" && gen != "s12i" && gen != "s23i")
          bad("knots.generators", "entries must be s12, s23, s12i or s23i");
        cfg.generators.push_back(gen);
      }
    }
    if (k.contains("pairs")) {
      const json& p = k.at("pairs");
      if (!p.is_array()) bad("knots.pairs", "expected an array");
      for (const json& v : p) {
        if (!v.is_array() || v.size() != 2 || !v[0].is_string() || !v[1].is_string())
          bad("knots.pairs", "entries must be [wordA, wordB] string pairs");
        validate_word(v[0].get<std::string>(), "knots.pairs");
        validate_word(v[1].get<std::string>(), "knots.pairs");
        cfg.distance_pairs.emplace_back(v[0].get<std::string>(), v[1].get<std::string>());
      }
    }
    cfg.normalize_distances = get_bool(k, "knots", "normalize_distances", false);
    if (k.contains("qubit_pairs")) {
      const json& qp = k.at("qubit_pairs");
      if (!qp.is_array() || qp.empty()) bad("knots.qubit_pairs", "expected a nonempty array");
      for (const json& v : qp) {
        if (!v.is_object()) bad("knots.qubit_pairs", "entries must be objects");
        check_keys(v, "knots.qubit_pairs", {"label", "depol_2q", "coherent_eps"});
        HardwarePair hp;
        hp.label = get_string(v, "knots.qubit_pairs", "label", "");
        if (hp.label.empty()) bad("knots.qubit_pairs.label", "must be a nonempty string");
        if (hp.label.find_first_of(",\"\n\r") != std::string::npos)
          bad("knots.qubit_pairs.label", "must not contain commas, quotes or newlines");
        if (v.contains("depol_2q")) {
          hp.has_depol_2q = true;
          hp.depol_2q = get_number(v, "knots.qubit_pairs", "depol_2q", 0.0);
          if (!(hp.depol_2q > 0.0 && hp.depol_2q <= 1.0))
            bad("knots.qubit_pairs.depol_2q", "must be in (0, 1]");
        }
        if (v.contains("coherent_eps")) {
          hp.has_coherent_eps = true;
          hp.coherent_eps = get_number(v, "knots.qubit_pairs", "coherent_eps", 0.0);
          if (!std::isfinite(hp.coherent_eps))
            bad("knots.qubit_pairs.coherent_eps", "must be finite");
        }
        cfg.qubit_pairs.push_back(hp);
      }
    }
  }
  if (cfg.qubit_pairs.empty()) cfg.qubit_pairs.push_back(HardwarePair{});
  // The default pair set applies only when the config does not mention pairs
  // at all; an explicit empty list means no distances.
  const bool pairs_given =
      doc.contains("knots") && doc.at("knots").is_object() && doc.at("knots").contains("pairs");
  if (!pairs_given && (cfg.suite == "knots" || cfg.suite == "oracle"))
    cfg.distance_pairs = default_distance_pairs();

  return cfg;
}

const std::vector<std::pair<std::string, std::string>>& default_distance_pairs() {
  static const std::vector<std::pair<std::string, std::string>> pairs = {{"s23^1", "s12^2"},
                                                                         {"s23^1", "s12^3"},
                                                                         {"s23^2", "s12^5"},
                                                                         {"s23^3", "s12^7"},
                                                                         {"s23^3", "s12^8"}};
  return pairs;
}

nlohmann::ordered_json echo_config(const ExperimentConfig& cfg) {
  ordered_json j;
  j["suite"] = cfg.suite;
  j["seed"] = cfg.seed;
  j["shots"] = cfg.shots;
  j["trials"] = cfg.trials;
  j["grid"] = cfg.grid;
  j["timestamp"] = cfg.timestamp;
  j["out_dir"] = cfg.out_dir;
  j["prep"] = cfg.prep;
  j["engine"] = cfg.engine;
  j["noisy_prep"] = cfg.noisy_prep;
  j["flip_samples"] = cfg.flip_samples;
  j["polarization"] = cfg.polarization;

  ordered_json noise;
  noise["depol_1q"] = cfg.noise.depol_1q;
  noise["depol_2q"] = cfg.noise.depol_2q;
  noise["coherent_eps"] = cfg.noise.coherent_eps;
  noise["readout_flip"] = cfg.noise.readout_flip;
  noise["coherent_model"] = cfg.noise.model == CoherentModel::ZZ          ? "zz"
                            : cfg.noise.model == CoherentModel::ControlRz ? "control_rz"
                                                                          : "target_rx";
  noise["depol_scope"] = cfg.noise.scope == DepolScope::Global ? "global" : "local";
  noise["drift"] = {{"sigma_per_day", cfg.noise.drift.sigma_per_day},
                    {"epoch", cfg.noise.drift.epoch},
                    {"seed", cfg.noise.drift.seed}};
  ordered_json profile = ordered_json::object();
  for (const auto& [key, ov] : cfg.noise.pair_profile)
    profile[key] = {{"depol_2q", ov.depol_2q}, {"coherent_eps", ov.coherent_eps}};
  noise["pair_profile"] = profile;
  j["noise"] = noise;

  ordered_json sweep;
  sweep["n_mixed"] = cfg.n_mixed;
  sweep["l"] = cfg.l;
  sweep["l_values"] = cfg.l_values;
  j["sweep"] = sweep;

  ordered_json knots;
  if (cfg.words_explicit) knots["words"] = cfg.words;
  knots["k_max"] = cfg.k_max;
  knots["generators"] = cfg.generators;
  ordered_json pairs = ordered_json::array();
  for (const auto& [a, b] : cfg.distance_pairs) pairs.push_back({a, b});
  knots["pairs"] = pairs;
  knots["normalize_distances"] = cfg.normalize_distances;
  ordered_json qp = ordered_json::array();
  for (const HardwarePair& hp : cfg.qubit_pairs) {
    ordered_json e;
    e["label"] = hp.label;
    if (hp.has_depol_2q) e["depol_2q"] = hp.depol_2q;
    if (hp.has_coherent_eps) e["coherent_eps"] = hp.coherent_eps;
    qp.push_back(e);
  }
  knots["qubit_pairs"] = qp;
  j["knots"] = knots;

  return j;
}

}  // namespace dqc1bench

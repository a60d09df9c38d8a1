#include "dqc1bench/knots.hpp"

#include <cmath>
#include <stdexcept>

#include "dqc1bench/rng.hpp"

namespace dqc1bench {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

const FibConstants& FibConstants::get() {
  static const FibConstants k = [] {
    FibConstants f;
    f.phi = (1.0 + std::sqrt(5.0)) / 2.0;
    f.a = std::polar(1.0, 3.0 * kPi / 5.0);
    f.b = std::polar(1.0, -4.0 * kPi / 5.0);
    f.c = f.b / (f.phi * f.phi) + f.a / f.phi;
    f.d = (f.b - f.a) / std::pow(f.phi, 1.5);
    f.e = f.b / f.phi + f.a / (f.phi * f.phi);
    return f;
  }();
  return k;
}

BraidWord BraidWord::parse(const std::string& text) {
  BraidWord word;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t dot = text.find('.', pos);
    if (dot == std::string::npos) dot = text.size();
    std::string token = text.substr(pos, dot - pos);
    pos = dot + 1;

    int power = 1;
    const std::size_t caret = token.find('^');
    if (caret != std::string::npos) {
      const std::string exp = token.substr(caret + 1);
      token = token.substr(0, caret);
      std::size_t used = 0;
      try {
        power = std::stoi(exp, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("braid word: bad exponent '" + exp + "'");
      }
      if (used != exp.size() || power < 0)
        throw std::invalid_argument("braid word: bad exponent '" + exp + "'");
    }

    int letter;
    if (token == "s12")
      letter = 1;
    else if (token == "s12i")
      letter = -1;
    else if (token == "s23")
      letter = 2;
    else if (token == "s23i")
      letter = -2;
    else
      throw std::invalid_argument("braid word: unknown token '" + token + "'");
    for (int i = 0; i < power; ++i) word.letters.push_back(letter);
  }
  return word;
}

std::string BraidWord::str() const {
  std::string out;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) out += '.';
    switch (letters[i]) {
      case 1: out += "s12"; break;
      case -1: out += "s12i"; break;
      case 2: out += "s23"; break;
      case -2: out += "s23i"; break;
      default: throw std::logic_error("braid word: corrupt letter");
    }
  }
  return out;
}

namespace {

CMatrix upper_block(int letter) {
  const FibConstants& k = FibConstants::get();
  CMatrix u(2, 2);
  if (std::abs(letter) == 1) {
    u(0, 0) = k.a;
    u(1, 1) = k.b;
  } else {
    u(0, 0) = k.e;
    u(0, 1) = k.d;
    u(1, 0) = k.d;
    u(1, 1) = k.c;
  }
  return letter > 0 ? u : adjoint(u);
}

CMatrix lower_block(int letter) {
  const FibConstants& k = FibConstants::get();
  CMatrix u = CMatrix::identity(2);
  u(0, 0) = letter > 0 ? k.a : std::conj(k.a);
  return u;
}

CMatrix letter_matrix(int letter) {
  CMatrix m = CMatrix::zero(4, 4);
  const CMatrix up = upper_block(letter);
  const CMatrix lo = lower_block(letter);
  m(0, 0) = up(0, 0);
  m(0, 1) = up(0, 1);
  m(1, 0) = up(1, 0);
  m(1, 1) = up(1, 1);
  m(2, 2) = lo(0, 0);
  m(3, 3) = lo(1, 1);
  return m;
}

}  // namespace

CMatrix braid_matrix(const BraidWord& word) {
  CMatrix m = CMatrix::identity(4);
  for (int letter : word.letters) m = matmul(letter_matrix(letter), m);
  return m;
}

BlockPair braid_blocks(const BraidWord& word) {
  const CMatrix m = braid_matrix(word);
  BlockPair pair;
  pair.upper(0, 0) = m(0, 0);
  pair.upper(0, 1) = m(0, 1);
  pair.upper(1, 0) = m(1, 0);
  pair.upper(1, 1) = m(1, 1);
  pair.lower(0, 0) = m(2, 2);
  pair.lower(1, 1) = m(3, 3);
  return pair;
}

int writhe(const BraidWord& word) {
  int w = 0;
  for (int letter : word.letters) w += letter > 0 ? 1 : -1;
  return w;
}

Cmplx weighted_trace(const Cmplx& tr_upper, const Cmplx& tr_lower) {
  return FibConstants::get().phi * tr_upper + tr_lower - 1.0;
}

Cmplx writhe_prefactor(int writhe) { return std::polar(1.0, -4.0 * kPi * writhe / 5.0); }

Cmplx jones_value(const Cmplx& wtr, int writhe) {
  return writhe_prefactor(writhe) * wtr / FibConstants::get().phi;
}

Cmplx jones_oracle(const BraidWord& word) {
  const BlockPair blocks = braid_blocks(word);
  const Cmplx tr_upper = blocks.upper(0, 0) + blocks.upper(1, 1);
  const Cmplx tr_lower = blocks.lower(0, 0) + blocks.lower(1, 1);
  return jones_value(weighted_trace(tr_upper, tr_lower), writhe(word));
}

BlockCircuits block_circuits(const BraidWord& word) {
  BlockCircuits pair{Circuit(2, word.str() + ":upper"), Circuit(2, word.str() + ":lower")};
  for (int letter : word.letters) {
    pair.upper.append(compile_controlled_2x2(upper_block(letter)));
    pair.lower.append(compile_controlled_2x2(lower_block(letter)));
  }
  return pair;
}

JonesEstimate estimate_jones(const BraidWord& word, const NoiseModel& model,
                             std::uint64_t shots_per_trial, int trials,
                             const std::string& qubit_pair, std::uint64_t seed, std::int64_t now,
                             PrepStrategy prep, const DqcOptions& opts) {
  if (trials < 1) throw std::invalid_argument("estimate_jones: trials must be >= 1");

  const BlockCircuits blocks = block_circuits(word);
  const int w = writhe(word);

  // each block drifts independently, but identically across trials: the walk
  // models the hardware pair wandering between calibration and run time
  NoiseModel model_u = model;
  model_u.drift.seed = child_seed(seed, fnv1a("drift-upper"));
  NoiseModel model_l = model;
  model_l.drift.seed = child_seed(seed, fnv1a("drift-lower"));

  JonesEstimate est;
  est.value = jones_oracle(word);
  est.trials = trials;
  est.shots_per_trial = shots_per_trial;
  est.cnots_upper = cnot_count(blocks.upper);
  est.cnots_lower = cnot_count(blocks.lower);
  est.qubit_pair = qubit_pair;
  est.timestamp = now;
  est.trial_values.reserve(trials);

  Cmplx sum = 0.0;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t tseed = child_seed(seed, static_cast<std::uint64_t>(t));
    const TraceEstimate eu = estimate_normalized_trace(
        blocks.upper, 1, prep, model_u, shots_per_trial, child_seed(tseed, fnv1a("upper")), now,
        opts);
    const TraceEstimate el = estimate_normalized_trace(
        blocks.lower, 1, prep, model_l, shots_per_trial, child_seed(tseed, fnv1a("lower")), now,
        opts);
    // measured values are normalized traces of 2x2 blocks; the weighted
    // combination wants the plain traces, hence the factor two
    const Cmplx tr_u = 2.0 * eu.value();
    const Cmplx tr_l = 2.0 * el.value();
    const Cmplx v = jones_value(weighted_trace(tr_u, tr_l), w);
    est.trial_values.push_back(v);
    sum += v;
  }
  est.mean = sum / static_cast<double>(trials);

  if (trials > 1) {
    double crr = 0.0, cri = 0.0, cii = 0.0;
    for (const Cmplx& v : est.trial_values) {
      const double dr = v.real() - est.mean.real();
      const double di = v.imag() - est.mean.imag();
      crr += dr * dr;
      cri += dr * di;
      cii += di * di;
    }
    const double denom = trials - 1.0;
    est.cov = {crr / denom, cri / denom, cri / denom, cii / denom};
  }
  return est;
}

DistanceEstimate knot_distance(const JonesEstimate& a, const JonesEstimate& b, bool normalize) {
  const Cmplx diff = a.mean - b.mean;
  const double dist = std::abs(diff);

  // covariance of the difference of the two means
  const double na = std::max(a.trials, 1);
  const double nb = std::max(b.trials, 1);
  const double c00 = a.cov[0] / na + b.cov[0] / nb;
  const double c01 = a.cov[1] / na + b.cov[1] / nb;
  const double c11 = a.cov[3] / na + b.cov[3] / nb;

  double var;
  if (dist > 1e-12) {
    // delta method: project the covariance along the difference direction
    const double ur = diff.real() / dist;
    const double ui = diff.imag() / dist;
    var = ur * ur * c00 + 2.0 * ur * ui * c01 + ui * ui * c11;
  } else {
    var = (c00 + c11) / 2.0;
  }

  DistanceEstimate out;
  out.distance = dist;
  out.err = std::sqrt(std::max(0.0, var));
  if (normalize) {
    const double ref = std::abs(a.value - b.value);
    if (ref <= 1e-12)
      throw std::invalid_argument(
          "knot_distance: normalization requested but the oracle distance is zero");
    out.distance /= ref;
    out.err /= ref;
  }
  return out;
}

}  // namespace dqc1bench

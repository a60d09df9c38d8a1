#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "dqc1bench/dqc1.hpp"

namespace dqc1bench {

// A three-strand braid word, leftmost letter applied first. Letters are
// +1 / -1 for the first crossing and its inverse, +2 / -2 for the second.
// An empty word is the identity braid.
struct BraidWord {
  std::vector<int> letters;

  // Accepts dot-separated tokens "s12", "s23", "s12i", "s23i" and the power
  // shorthand "s12^3" / "s23i^2". Examples: "s12.s23i.s12", "s23^2".
  // The empty string parses to the identity braid.
  static BraidWord parse(const std::string& text);
  std::string str() const;
  int crossings() const { return static_cast<int>(letters.size()); }
};

// Constants of the two-dimensional braiding representation used throughout:
// the golden ratio and the matrix entries of the elementary crossings.
struct FibConstants {
  double phi;
  Cmplx a, b, c, d, e;
  static const FibConstants& get();
};

// A braid word acts block-diagonally on four dimensions; both halves are
// carried as 2x2 unitaries (the lower one padded with the unused unit basis
// state) so each can run through the same controlled-circuit pipeline.
struct BlockPair {
  CMatrix upper{2, 2};
  CMatrix lower{2, 2};
};

// 4x4 matrix of the word, letters composed in application order.
CMatrix braid_matrix(const BraidWord& word);

// The two diagonal blocks of braid_matrix(word).
BlockPair braid_blocks(const BraidWord& word);

int writhe(const BraidWord& word);

// phi * tr_upper + tr_lower - 1 with UNNORMALIZED 2x2 block traces; the -1
// removes the unused basis state's unit contribution from the lower trace.
Cmplx weighted_trace(const Cmplx& tr_upper, const Cmplx& tr_lower);

// Kauffman writhe correction (-A)^{-3w} with A = exp(3 pi i / 5).
Cmplx writhe_prefactor(int writhe);

// prefactor(w) * wtr / phi
Cmplx jones_value(const Cmplx& wtr, int writhe);

// Exact invariant value of the word's trace closure.
Cmplx jones_oracle(const BraidWord& word);

// Controlled circuits for both blocks, one compiled segment per letter (no
// algebraic collapse: repeated crossings repeat their gates).
struct BlockCircuits {
  Circuit upper;
  Circuit lower;
};

BlockCircuits block_circuits(const BraidWord& word);

struct JonesEstimate {
  Cmplx value = 0.0;  // exact oracle value for reference
  int trials = 0;
  std::uint64_t shots_per_trial = 0;
  Cmplx mean = 0.0;
  std::array<double, 4> cov{};  // sample covariance of (Re, Im), row-major
  int cnots_upper = 0;
  int cnots_lower = 0;
  std::string qubit_pair;
  std::int64_t timestamp = 0;
  std::vector<Cmplx> trial_values;
};

// Repeated protocol runs of both blocks with per-trial seeds; each trial
// combines the two measured traces into one invariant sample. The two blocks
// use independent seeds and independent drift walks (they are separate
// physical experiments).
JonesEstimate estimate_jones(const BraidWord& word, const NoiseModel& model,
                             std::uint64_t shots_per_trial, int trials,
                             const std::string& qubit_pair, std::uint64_t seed, std::int64_t now,
                             PrepStrategy prep = PrepStrategy::FlipAverage,
                             const DqcOptions& opts = {});

struct DistanceEstimate {
  double distance = 0.0;
  double err = 0.0;
};

// |mean_a - mean_b| with a delta-method error bar from the trial covariances.
// With normalize set, both are divided by the pair's exact oracle distance
// |value_a - value_b| (which must be nonzero).
DistanceEstimate knot_distance(const JonesEstimate& a, const JonesEstimate& b,
                               bool normalize = false);

}  // namespace dqc1bench

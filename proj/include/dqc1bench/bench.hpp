#pragma once

#include <cstdint>
#include <vector>

#include "dqc1bench/dqc1.hpp"

namespace dqc1bench {

struct SweepPoint {
  double theta = 0.0;
  Cmplx ideal = 0.0;  // exact normalized trace of this point's payload
  ShotEstimate sx, sy, sz;
};

struct SweepCurve {
  int n_mixed = 0;
  int l = 0;
  int cnots = 0;  // CNOTs in one payload
  std::vector<SweepPoint> points;
};

struct FitResult {
  double a = 0.0;    // amplitude at x = 0
  double tau = 0.0;  // decay constant of a * exp(-x / tau)
  double r_squared = 0.0;
  int n_used = 0;
  int n_dropped = 0;      // nonpositive samples excluded from the log fit
  bool decaying = false;  // fitted slope was negative (tau > 0)
};

// Echo-structured payload: one controlled rotation by theta on every mixed
// qubit, padded with l-1 back-and-forth pairs. The net unitary equals the
// single rotation for every l >= 1, so the signal is l-independent while the
// gate count (and hence the accumulated noise) grows linearly in l. l = 0
// means no operation at all.
Circuit un_l_payload(double theta, int l, int n_mixed);

// Sweep theta over `grid` evenly spaced points on [0, 2pi], estimating the
// normalized trace at each with an independent child seed.
SweepCurve theta_sweep(int n_mixed, int l, int grid, const NoiseModel& model, std::uint64_t shots,
                       std::uint64_t seed, std::int64_t now,
                       PrepStrategy prep = PrepStrategy::DirectMixed, const DqcOptions& opts = {});

// Largest mean sigma_x over the grid: 1 noiselessly, alpha^cnots under pure
// depolarization.
double visibility(const SweepCurve& curve);

// Largest |mean sigma_y| over the grid: stays at the shot-noise floor without
// coherent errors, so its growth separates coherent from depolarizing damage.
double coherent_error_metric(const SweepCurve& curve);

// Least squares of ln y against x after dropping nonpositive y; R^2 is
// computed back in the original domain over the points used. Throws when
// fewer than 3 usable points remain.
FitResult fit_exponential(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace dqc1bench

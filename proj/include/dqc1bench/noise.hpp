#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>

#include "dqc1bench/circuit.hpp"
#include "dqc1bench/density_matrix.hpp"

namespace dqc1bench {

// Unitary error appended after every CNOT.
enum class CoherentModel { ZZ, ControlRz, TargetRx };

// Which qubits the depolarizing channel hits: the full register, or only the
// qubits the gate touched.
enum class DepolScope { Global, Local };

// Slow day-scale random walk of the coherent error angle.
struct DriftSpec {
  double sigma_per_day = 0.0;
  std::int64_t epoch = 0;  // unix seconds the walk starts from
  std::uint64_t seed = 0;
};

// Per-CNOT-pair overrides keyed "control-target" (e.g. "0-2").
struct PairOverride {
  double depol_2q;
  double coherent_eps;
};

struct NoiseModel {
  double depol_1q = std::exp(-1.0 / 250.0);
  double depol_2q = std::exp(-1.0 / 25.81);
  double coherent_eps = 0.02;
  double readout_flip = 0.0;
  CoherentModel model = CoherentModel::ZZ;
  DepolScope scope = DepolScope::Global;
  DriftSpec drift;
  std::map<std::string, PairOverride> pair_profile;

  static NoiseModel ideal();
};

// Effective (depol_2q, coherent_eps) for a CNOT on the given pair, before
// drift is added.
PairOverride resolve_pair(const NoiseModel& m, int control, int target);

// Base coherent angle plus the accumulated drift walk at time `now`.
// The walk advances one Gaussian step per whole day since drift.epoch and is
// reproducible from rng_seed alone. Throws if the walk is enabled and `now`
// precedes the epoch.
double drifted_eps(const NoiseModel& m, std::int64_t now, std::uint64_t rng_seed);

// rho -> alpha rho + (1 - alpha) I / dim
void depolarize_global(DensityMatrix& state, double alpha);

// Same contraction restricted to `qubits`: the rest of the register keeps its
// correlations, the listed qubits are replaced by the maximally mixed state
// with weight (1 - alpha).
void depolarize_local(DensityMatrix& state, double alpha, const std::vector<int>& qubits);

// Gate, then coherent error (CNOTs only), then depolarization.
void apply_noisy_gate(DensityMatrix& state, const Gate& g, const NoiseModel& m, std::int64_t now,
                      kernels::Engine engine = kernels::Engine::Optimized);

// Finite-shot estimate of a +/-1 observable mean.
struct ShotEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::uint64_t shots = 0;  // 0 means the infinite-shot limit

  ShotEstimate() = default;
  ShotEstimate(double mean_in, std::uint64_t shots_in);
};

// Sample `shots` single-shot readouts of an observable with true mean
// `true_mean`, each flipped with probability `flip`. shots == 0 returns the
// exact (still biased by the flip) infinite-shot mean with zero error bar.
ShotEstimate sample_shots(double true_mean, std::uint64_t shots, double flip, std::uint64_t seed);

}  // namespace dqc1bench

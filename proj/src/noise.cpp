#include "dqc1bench/noise.hpp"

#include <algorithm>
#include <stdexcept>

#include "dqc1bench/rng.hpp"

namespace dqc1bench {

NoiseModel NoiseModel::ideal() {
  NoiseModel m;
  m.depol_1q = 1.0;
  m.depol_2q = 1.0;
  m.coherent_eps = 0.0;
  m.readout_flip = 0.0;
  return m;
}

PairOverride resolve_pair(const NoiseModel& m, int control, int target) {
  const std::string key = std::to_string(control) + "-" + std::to_string(target);
  auto it = m.pair_profile.find(key);
  if (it != m.pair_profile.end()) return it->second;
  return {m.depol_2q, m.coherent_eps};
}

namespace {
double drift_delta(const DriftSpec& d, std::int64_t now, std::uint64_t rng_seed) {
  if (d.sigma_per_day == 0.0) return 0.0;
  if (now < d.epoch) throw std::invalid_argument("drifted_eps: now precedes the drift epoch");
  const std::int64_t days = (now - d.epoch) / 86400;
  Rng rng(child_seed(rng_seed, fnv1a("drift")));
  double delta = 0.0;
  for (std::int64_t i = 0; i < days; ++i) delta += d.sigma_per_day * rng.gaussian();
  return delta;
}
}  // namespace

double drifted_eps(const NoiseModel& m, std::int64_t now, std::uint64_t rng_seed) {
  return m.coherent_eps + drift_delta(m.drift, now, rng_seed);
}

void depolarize_global(DensityMatrix& state, double alpha) {
  if (alpha == 1.0) return;
  const std::size_t dim = state.dim();
  const double mix = (1.0 - alpha) / static_cast<double>(dim);
  for (Cmplx& z : state.mat.data) z *= alpha;
  for (std::size_t i = 0; i < dim; ++i) state.mat(i, i) += mix;
}

void depolarize_local(DensityMatrix& state, double alpha, const std::vector<int>& qubits) {
  if (alpha == 1.0) return;
  if (static_cast<int>(qubits.size()) == state.num_qubits) {
    // nothing survives the trace-out, so the channel is the global one
    depolarize_global(state, alpha);
    return;
  }
  DensityMatrix reduced = partial_trace(state, qubits);

  std::size_t gate_mask = 0;
  for (int q : qubits) gate_mask |= std::size_t{1} << (state.num_qubits - 1 - q);
  const std::size_t dim = state.dim();
  const double mix = (1.0 - alpha) / static_cast<double>(std::size_t{1} << qubits.size());

  // compress the kept (non-gate) bits of a register index into an index of
  // the reduced state, preserving significance order
  auto keep_index = [&](std::size_t i) {
    std::size_t out = 0;
    for (int b = state.num_qubits - 1; b >= 0; --b) {
      const std::size_t bit = std::size_t{1} << b;
      if (bit & gate_mask) continue;
      out = (out << 1) | ((i & bit) ? 1 : 0);
    }
    return out;
  };

  for (Cmplx& z : state.mat.data) z *= alpha;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      if ((i ^ j) & gate_mask) continue;
      state.mat(i, j) += mix * reduced.mat(keep_index(i), keep_index(j));
    }
}

namespace {
CMatrix coherent_error_2q(CoherentModel model, double eps) {
  const Cmplx em = std::polar(1.0, -eps / 2.0);
  const Cmplx ep = std::polar(1.0, eps / 2.0);
  switch (model) {
    case CoherentModel::ZZ: {
      CMatrix u = CMatrix::zero(4, 4);
      u(0, 0) = em;
      u(1, 1) = ep;
      u(2, 2) = ep;
      u(3, 3) = em;
      return u;
    }
    case CoherentModel::ControlRz: {
      // acts on the control only; embed as control (x) identity
      CMatrix u = CMatrix::zero(4, 4);
      u(0, 0) = em;
      u(1, 1) = em;
      u(2, 2) = ep;
      u(3, 3) = ep;
      return u;
    }
    case CoherentModel::TargetRx: {
      const double c = std::cos(eps / 2.0), s = std::sin(eps / 2.0);
      const Cmplx mis(0.0, -s);
      CMatrix u = CMatrix::zero(4, 4);
      u(0, 0) = c;
      u(0, 1) = mis;
      u(1, 0) = mis;
      u(1, 1) = c;
      u(2, 2) = c;
      u(2, 3) = mis;
      u(3, 2) = mis;
      u(3, 3) = c;
      return u;
    }
  }
  throw std::logic_error("unreachable coherent model");
}
}  // namespace

void apply_noisy_gate(DensityMatrix& state, const Gate& g, const NoiseModel& m, std::int64_t now,
                      kernels::Engine engine) {
  apply_gate(state, g, engine);
  if (g.is_cnot()) {
    const PairOverride eff = resolve_pair(m, g.q0, g.q1);
    const double eps = eff.coherent_eps + drift_delta(m.drift, now, m.drift.seed);
    if (eps != 0.0)
      kernels::apply_kq(state.mat, coherent_error_2q(m.model, eps), {g.q0, g.q1},
                        state.num_qubits, engine);
    if (m.scope == DepolScope::Global)
      depolarize_global(state, eff.depol_2q);
    else
      depolarize_local(state, eff.depol_2q, {g.q0, g.q1});
  } else {
    if (m.scope == DepolScope::Global)
      depolarize_global(state, m.depol_1q);
    else
      depolarize_local(state, m.depol_1q, {g.q0});
  }
}

ShotEstimate::ShotEstimate(double mean_in, std::uint64_t shots_in)
    : mean(std::clamp(mean_in, -1.0, 1.0)), shots(shots_in) {
  stderr_ = shots == 0 ? 0.0 : std::sqrt(std::max(0.0, 1.0 - mean * mean) / static_cast<double>(shots));
}

ShotEstimate sample_shots(double true_mean, std::uint64_t shots, double flip, std::uint64_t seed) {
  if (flip < 0.0 || flip > 1.0) throw std::invalid_argument("sample_shots: flip outside [0, 1]");
  const double biased = (1.0 - 2.0 * flip) * true_mean;
  if (shots == 0) {
    ShotEstimate e(biased, 0);
    return e;
  }
  const double p_plus = std::clamp((1.0 + biased) / 2.0, 0.0, 1.0);
  Rng rng(seed);
  std::uint64_t plus = 0;
  for (std::uint64_t s = 0; s < shots; ++s) plus += rng.bernoulli(p_plus) ? 1 : 0;
  const double mean = 2.0 * static_cast<double>(plus) / static_cast<double>(shots) - 1.0;
  return ShotEstimate(mean, shots);
}

}  // namespace dqc1bench

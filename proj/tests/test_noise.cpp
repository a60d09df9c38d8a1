#include <doctest.h>

#include <cmath>
#include <vector>

#include "dqc1bench/circuit.hpp"
#include "dqc1bench/density_matrix.hpp"
#include "dqc1bench/matrix.hpp"
#include "dqc1bench/noise.hpp"
#include "dqc1bench/rng.hpp"

using namespace dqc1bench;

namespace {

constexpr double kPi = 3.14159265358979324;
constexpr std::int64_t kDay = 86400;

DensityMatrix plus_state() {
  DensityMatrix state = DensityMatrix::pure_zero(1);
  apply_unitary_inplace(state, h_mat(), {0});
  return state;
}

}  // namespace

TEST_CASE("ideal model leaves states untouched") {
  const NoiseModel ideal = NoiseModel::ideal();
  CHECK(ideal.depol_1q == 1.0);
  CHECK(ideal.depol_2q == 1.0);
  CHECK(ideal.coherent_eps == 0.0);
  CHECK(ideal.readout_flip == 0.0);

  DensityMatrix state = plus_state();
  const DensityMatrix before = state;
  apply_noisy_gate(state, Gate::rz(0.3, 0), ideal, 0);
  DensityMatrix expect = before;
  apply_unitary_inplace(expect, rz_mat(0.3), {0});
  CHECK(max_abs_diff(state.mat, expect.mat) < 1e-14);
}

TEST_CASE("global depolarization contracts toward I/dim") {
  DensityMatrix state = plus_state();
  const double alpha = 0.8;
  depolarize_global(state, alpha);
  // diagonal: alpha/2 + (1-alpha)/2 = 1/2; off-diagonal: alpha/2
  CHECK(state.mat(0, 0).real() == doctest::Approx(0.5));
  CHECK(state.mat(0, 1).real() == doctest::Approx(alpha / 2.0));
  CHECK(expectation(state, PauliAxis::X, 0) == doctest::Approx(alpha));
}

TEST_CASE("k depolarized gates contract the signal by alpha^k") {
  NoiseModel model = NoiseModel::ideal();
  model.depol_1q = 0.9;
  DensityMatrix state = plus_state();
  for (int k = 0; k < 5; ++k) {
    apply_noisy_gate(state, Gate::rz(0.0, 0), model, 0);
    CHECK(expectation(state, PauliAxis::X, 0) == doctest::Approx(std::pow(0.9, k + 1)));
  }
}

TEST_CASE("local depolarization only touches the listed qubits") {
  // |+>|+>: depolarize qubit 1 only, qubit 0 keeps full coherence
  DensityMatrix state = DensityMatrix::pure_zero(2);
  apply_unitary_inplace(state, h_mat(), {0});
  apply_unitary_inplace(state, h_mat(), {1});
  depolarize_local(state, 0.7, {1});
  CHECK(expectation(state, PauliAxis::X, 0) == doctest::Approx(1.0));
  CHECK(expectation(state, PauliAxis::X, 1) == doctest::Approx(0.7));

  DensityMatrix both = DensityMatrix::pure_zero(2);
  apply_unitary_inplace(both, h_mat(), {0});
  apply_unitary_inplace(both, h_mat(), {1});
  depolarize_local(both, 0.7, {0, 1});
  CHECK(max_abs_diff(both.mat, [] {
          DensityMatrix g = DensityMatrix::pure_zero(2);
          apply_unitary_inplace(g, h_mat(), {0});
          apply_unitary_inplace(g, h_mat(), {1});
          depolarize_global(g, 0.7);
          return g.mat;
        }()) < 1e-14);
}

TEST_CASE("local scope on a CNOT hits only the gate pair") {
  NoiseModel model = NoiseModel::ideal();
  model.depol_2q = 0.5;
  model.scope = DepolScope::Local;

  DensityMatrix state = DensityMatrix::pure_zero(3);
  for (int q = 0; q < 3; ++q) apply_unitary_inplace(state, h_mat(), {q});
  apply_noisy_gate(state, Gate::cnot(0, 1), model, 0);
  // qubit 2 was not part of the gate
  CHECK(expectation(state, PauliAxis::X, 2) == doctest::Approx(1.0));

  model.scope = DepolScope::Global;
  DensityMatrix other = DensityMatrix::pure_zero(3);
  for (int q = 0; q < 3; ++q) apply_unitary_inplace(other, h_mat(), {q});
  apply_noisy_gate(other, Gate::cnot(0, 1), model, 0);
  CHECK(expectation(other, PauliAxis::X, 2) == doctest::Approx(0.5));
}

TEST_CASE("depolarization preserves trace and hermiticity") {
  DensityMatrix state = DensityMatrix::clean_plus_mixed(2);
  apply_unitary_inplace(state, h_mat(), {0});
  depolarize_global(state, 0.37);
  CHECK(trace_error(state) < 1e-14);
  CHECK(hermiticity_defect(state) < 1e-14);
  depolarize_local(state, 0.81, {1, 2});
  CHECK(trace_error(state) < 1e-14);
  CHECK(hermiticity_defect(state) < 1e-14);
}

TEST_CASE("coherent models attach the expected unitary after a CNOT") {
  // compare apply_noisy_gate (depol off) against CNOT followed by the
  // explicit error unitary; all models use the half-angle convention
  // exp(-i eps G / 2)
  const double eps = 0.13;
  const Cmplx em = std::exp(Cmplx(0.0, -eps / 2.0));
  const Cmplx ep = std::exp(Cmplx(0.0, eps / 2.0));

  struct Case {
    CoherentModel model;
    CMatrix err;
  };
  const std::vector<Case> cases = {
      // exp(-i eps Z Z): diag(e-, e+, e+, e-)
      {CoherentModel::ZZ, CMatrix(4, 4,
                                  {em, 0, 0, 0,  //
                                   0, ep, 0, 0,  //
                                   0, 0, ep, 0,  //
                                   0, 0, 0, em})},
      // phase kick on the control's |1> rows
      {CoherentModel::ControlRz, CMatrix(4, 4,
                                         {em, 0, 0, 0,  //
                                          0, em, 0, 0,  //
                                          0, 0, ep, 0,  //
                                          0, 0, 0, ep})},
  };

  for (const Case& c : cases) {
    NoiseModel model = NoiseModel::ideal();
    model.coherent_eps = eps;
    model.model = c.model;

    DensityMatrix state = DensityMatrix::pure_zero(2);
    apply_unitary_inplace(state, h_mat(), {0});
    apply_unitary_inplace(state, h_mat(), {1});
    DensityMatrix expect = state;

    apply_noisy_gate(state, Gate::cnot(0, 1), model, 0);
    apply_unitary_inplace(expect, kernels::cnot_matrix(0, 1, 2), {0, 1});
    apply_unitary_inplace(expect, c.err, {0, 1});
    CHECK(max_abs_diff(state.mat, expect.mat) < 1e-13);
  }

  // TargetRx is an Rx(eps) kick on the target: on |0> it tilts <Z> to cos(eps)
  NoiseModel rx = NoiseModel::ideal();
  rx.coherent_eps = eps;
  rx.model = CoherentModel::TargetRx;
  DensityMatrix state = DensityMatrix::pure_zero(2);
  apply_noisy_gate(state, Gate::cnot(1, 0), rx, 0);  // control |0>: CNOT is a no-op
  CHECK(expectation(state, PauliAxis::Z, 0) == doctest::Approx(std::cos(eps)));
  CHECK(expectation(state, PauliAxis::Z, 1) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("coherent error only fires on CNOTs") {
  NoiseModel model = NoiseModel::ideal();
  model.coherent_eps = 0.2;
  DensityMatrix state = plus_state();
  DensityMatrix expect = plus_state();
  apply_noisy_gate(state, Gate::ry(0.4, 0), model, 0);
  apply_unitary_inplace(expect, ry_mat(0.4), {0});
  CHECK(max_abs_diff(state.mat, expect.mat) < 1e-14);
}

TEST_CASE("pair overrides resolve by control-target key") {
  NoiseModel model;
  model.pair_profile["0-2"] = {0.5, 0.11};

  const PairOverride hit = resolve_pair(model, 0, 2);
  CHECK(hit.depol_2q == 0.5);
  CHECK(hit.coherent_eps == 0.11);

  const PairOverride miss = resolve_pair(model, 0, 1);
  CHECK(miss.depol_2q == model.depol_2q);
  CHECK(miss.coherent_eps == model.coherent_eps);
}

TEST_CASE("drift walk reproduces the frozen trajectory") {
  NoiseModel model;
  model.coherent_eps = 0.1;
  model.drift.sigma_per_day = 0.02;
  model.drift.epoch = 1000;
  const std::uint64_t seed = 99;

  const std::vector<double> expect = {0.1,
                                      0.092282490819132118,
                                      0.080387557621300204,
                                      0.083716595488226159,
                                      0.091482182924537775,
                                      0.078968897622222714};
  for (std::size_t day = 0; day < expect.size(); ++day) {
    const std::int64_t now = model.drift.epoch + static_cast<std::int64_t>(day) * kDay;
    CHECK(drifted_eps(model, now, seed) == doctest::Approx(expect[day]).epsilon(1e-12));
    // stable within the same day
    CHECK(drifted_eps(model, now + kDay / 2, seed) ==
          doctest::Approx(expect[day]).epsilon(1e-12));
  }
}

TEST_CASE("drift before the epoch throws, disabled drift does not") {
  NoiseModel model;
  model.drift.sigma_per_day = 0.01;
  model.drift.epoch = 5000;
  CHECK_THROWS(drifted_eps(model, 4999, 1));

  NoiseModel off;
  off.drift.sigma_per_day = 0.0;
  off.drift.epoch = 5000;
  CHECK(drifted_eps(off, 0, 1) == doctest::Approx(off.coherent_eps));
}

TEST_CASE("sample_shots matches the frozen draw") {
  const ShotEstimate est = sample_shots(0.5, 4096, 0.0, 5);
  // p(+1) = 0.75; seed 5 draws exactly 3057 ones out of 4096
  CHECK(est.mean == doctest::Approx(2.0 * 3057.0 / 4096.0 - 1.0).epsilon(1e-15));
  CHECK(est.shots == 4096);
  CHECK(est.stderr_ == doctest::Approx(std::sqrt((1.0 - est.mean * est.mean) / 4096.0)));
}

TEST_CASE("zero shots returns the exact mean") {
  const ShotEstimate est = sample_shots(0.3123, 0, 0.0, 9);
  CHECK(est.mean == 0.3123);
  CHECK(est.stderr_ == 0.0);
  CHECK(est.shots == 0);
}

TEST_CASE("readout flip biases the mean toward zero") {
  // flipping each shot with probability f maps the mean to (1-2f) m
  const ShotEstimate est = sample_shots(0.8, 0, 0.25, 3);
  CHECK(est.mean == doctest::Approx(0.5 * 0.8));

  // and the finite-shot draw concentrates near the biased mean
  const ShotEstimate sampled = sample_shots(0.8, 1 << 18, 0.25, 3);
  CHECK(sampled.mean == doctest::Approx(0.4).epsilon(0.02));
}

TEST_CASE("shot means are clamped to the physical range") {
  const ShotEstimate est = sample_shots(1.0, 128, 0.0, 2);
  CHECK(est.mean <= 1.0);
  CHECK(est.mean >= -1.0);
  CHECK(est.stderr_ == doctest::Approx(0.0));
}

TEST_CASE("shot noise scales like one over sqrt shots") {
  // standard deviation over seeds at two shot counts differing by 16x
  const double true_mean = 0.0;
  auto spread = [&](std::uint64_t shots) {
    double sum = 0.0, sq = 0.0;
    const int n = 300;
    for (int s = 0; s < n; ++s) {
      const double m = sample_shots(true_mean, shots, 0.0, 1000 + s).mean;
      sum += m;
      sq += m * m;
    }
    return std::sqrt(sq / n - (sum / n) * (sum / n));
  };
  const double sd_small = spread(1 << 8);
  const double sd_big = spread(1 << 12);
  CHECK(sd_small / sd_big == doctest::Approx(4.0).epsilon(0.25));
}

TEST_CASE("gate then coherent then depolarize ordering") {
  // with local depol on the pair and ZZ error, the combination on a known
  // input must equal the hand-applied sequence in that exact order
  NoiseModel model;
  model.depol_1q = 1.0;
  model.depol_2q = 0.9;
  model.coherent_eps = 0.21;
  model.scope = DepolScope::Local;

  DensityMatrix state = DensityMatrix::pure_zero(2);
  apply_unitary_inplace(state, h_mat(), {0});
  DensityMatrix expect = state;

  apply_noisy_gate(state, Gate::cnot(0, 1), model, 0);

  apply_unitary_inplace(expect, kernels::cnot_matrix(0, 1, 2), {0, 1});
  const Cmplx em = std::exp(Cmplx(0.0, -0.21 / 2.0));
  const Cmplx ep = std::exp(Cmplx(0.0, 0.21 / 2.0));
  apply_unitary_inplace(expect,
                        CMatrix(4, 4,
                                {em, 0, 0, 0,  //
                                 0, ep, 0, 0,  //
                                 0, 0, ep, 0,  //
                                 0, 0, 0, em}),
                        {0, 1});
  depolarize_local(expect, 0.9, {0, 1});
  CHECK(max_abs_diff(state.mat, expect.mat) < 1e-13);
}

TEST_CASE("pi over two is not a typo") {
  CHECK(kPi == doctest::Approx(std::acos(-1.0)).epsilon(1e-15));
}

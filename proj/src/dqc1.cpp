#include "dqc1bench/dqc1.hpp"

#include <stdexcept>

#include "dqc1bench/rng.hpp"

namespace dqc1bench {

Cmplx ideal_normalized_trace(const CMatrix& u) {
  if (u.rows != u.cols) throw std::invalid_argument("ideal_normalized_trace: non-square input");
  return trace(u) / static_cast<double>(u.rows);
}

Cmplx payload_normalized_trace(const Circuit& payload, int n_mixed) {
  if (n_mixed < 1) throw std::invalid_argument("payload_normalized_trace: n_mixed must be >= 1");
  const int n = 1 + n_mixed;
  if (payload.num_qubits > n)
    throw std::invalid_argument("payload_normalized_trace: payload does not fit the register");

  Circuit padded(n, payload.label);
  for (const Gate& g : payload.gates) padded.append(g);
  const CMatrix w = unitary_of(padded);

  // qubit 0 is the most significant bit: the top-left block A acts when the
  // clean qubit is 0, the bottom-right block B when it is 1
  const std::size_t d = std::size_t{1} << n_mixed;
  Cmplx acc = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) acc += w(d + i, d + j) * std::conj(w(i, j));
  return acc / static_cast<double>(d);
}

namespace {

// Run one readout axis and sample its shots. The circuit layout from
// build_dqc1_circuit is [H(0)] + payload + basis change; only the payload
// slice sees noise unless opts.noisy_prep is set.
ShotEstimate run_axis(const Circuit& payload, int n_mixed, PrepStrategy prep,
                      const NoiseModel& model, std::uint64_t shots, PauliAxis axis,
                      std::uint64_t axis_seed, std::int64_t now, const DqcOptions& opts) {
  const Circuit circuit = build_dqc1_circuit(payload, n_mixed, axis);
  const std::size_t payload_begin = 1;
  const std::size_t payload_end = 1 + payload.gates.size();

  auto run_gates = [&](DensityMatrix& state) {
    for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
      const bool in_payload = i >= payload_begin && i < payload_end;
      if (in_payload || opts.noisy_prep)
        apply_noisy_gate(state, circuit.gates[i], model, now, opts.engine);
      else
        apply_gate(state, circuit.gates[i], opts.engine);
    }
  };

  switch (prep) {
    case PrepStrategy::DirectMixed: {
      DensityMatrix state = DensityMatrix::clean_plus_mixed(n_mixed);
      run_gates(state);
      const double truth = opts.polarization * expectation(state, PauliAxis::Z, 0);
      return sample_shots(truth, shots, model.readout_flip, axis_seed);
    }

    case PrepStrategy::BellTrace: {
      DensityMatrix state = DensityMatrix::pure_zero(1 + 2 * n_mixed);
      std::vector<int> ancillas;
      for (int m = 1; m <= n_mixed; ++m) {
        const int anc = n_mixed + m;
        const Gate h = Gate::h(m);
        const Gate cx = Gate::cnot(m, anc);
        if (opts.noisy_prep) {
          apply_noisy_gate(state, h, model, now, opts.engine);
          apply_noisy_gate(state, cx, model, now, opts.engine);
        } else {
          apply_gate(state, h, opts.engine);
          apply_gate(state, cx, opts.engine);
        }
        ancillas.push_back(anc);
      }
      run_gates(state);
      DensityMatrix reduced = partial_trace(state, ancillas);
      const double truth = opts.polarization * expectation(reduced, PauliAxis::Z, 0);
      return sample_shots(truth, shots, model.readout_flip, axis_seed);
    }

    case PrepStrategy::FlipAverage: {
      // enumerate every flip pattern when feasible, otherwise subsample
      const std::size_t total = std::size_t{1} << n_mixed;
      std::vector<std::size_t> patterns;
      if (n_mixed <= 3) {
        for (std::size_t p = 0; p < total; ++p) patterns.push_back(p);
      } else {
        Rng pick(child_seed(axis_seed, fnv1a("flip-patterns")));
        for (int s = 0; s < opts.flip_samples; ++s)
          patterns.push_back(static_cast<std::size_t>(pick.next_u64() % total));
      }

      double acc = 0.0;
      for (std::size_t pi = 0; pi < patterns.size(); ++pi) {
        DensityMatrix state = DensityMatrix::pure_zero(1 + n_mixed);
        for (int m = 1; m <= n_mixed; ++m) {
          if (!(patterns[pi] >> (m - 1) & 1)) continue;
          const Gate x = Gate::x(m);
          if (opts.noisy_prep)
            apply_noisy_gate(state, x, model, now, opts.engine);
          else
            apply_gate(state, x, opts.engine);
        }
        run_gates(state);
        const double truth = opts.polarization * expectation(state, PauliAxis::Z, 0);
        acc += sample_shots(truth, shots, model.readout_flip, child_seed(axis_seed, 1000 + pi))
                   .mean;
      }
      const double mean = acc / static_cast<double>(patterns.size());
      return ShotEstimate(mean, shots == 0 ? 0 : shots * patterns.size());
    }
  }
  throw std::logic_error("unreachable prep strategy");
}

}  // namespace

TraceEstimate estimate_normalized_trace(const Circuit& payload, int n_mixed, PrepStrategy prep,
                                        const NoiseModel& model, std::uint64_t shots,
                                        std::uint64_t seed, std::int64_t now,
                                        const DqcOptions& opts) {
  TraceEstimate est;
  est.re = run_axis(payload, n_mixed, prep, model, shots, PauliAxis::X,
                    child_seed(seed, fnv1a("axis-x")), now, opts);
  est.im = run_axis(payload, n_mixed, prep, model, shots, PauliAxis::Y,
                    child_seed(seed, fnv1a("axis-y")), now, opts);
  est.z_diag = run_axis(payload, n_mixed, prep, model, shots, PauliAxis::Z,
                        child_seed(seed, fnv1a("axis-z")), now, opts);
  est.n_mixed = n_mixed;
  est.cnots = cnot_count(payload);
  est.timestamp = now;
  return est;
}

}  // namespace dqc1bench

#pragma once

#include <cstdint>

#include "dqc1bench/circuit.hpp"
#include "dqc1bench/noise.hpp"

namespace dqc1bench {

// How the maximally mixed register is realized before the trace circuit runs.
//  - DirectMixed: start from the exact product state |0><0| (x) (I/2)^N
//  - BellTrace:   entangle each mixed qubit with an ancilla and trace the
//                 ancillas out before readout (register grows to 1 + 2N)
//  - FlipAverage: average pure computational-basis runs over X-flip patterns
//                 of the mixed qubits
enum class PrepStrategy { DirectMixed, BellTrace, FlipAverage };

struct DqcOptions {
  bool noisy_prep = false;   // also run prep/readout gates through the noise model
  int flip_samples = 8;      // FlipAverage patterns sampled when 2^N is too many
  double polarization = 1.0; // initial clean-qubit polarization, a plain post-factor
  kernels::Engine engine = kernels::Engine::Optimized;
};

// One normalized-trace measurement: Re and Im quadratures plus the sigma_z
// diagnostic (identically zero for a valid payload, so it only carries shot
// and readout noise).
struct TraceEstimate {
  ShotEstimate re;
  ShotEstimate im;
  ShotEstimate z_diag;
  int n_mixed = 0;
  int cnots = 0;
  std::int64_t timestamp = 0;

  Cmplx value() const { return {re.mean, im.mean}; }
};

// tr(u) / dim: the exact quantity the protocol estimates for a plain
// controlled-u payload.
Cmplx ideal_normalized_trace(const CMatrix& u);

// Exact target for an arbitrary valid payload circuit: with the payload
// written as |0><0| (x) A + |1><1| (x) B on 1 + n_mixed qubits, the protocol
// reads out tr(B A^dag) / 2^N (equal to the plain normalized trace when the
// payload never touches qubit 0 outside CNOT controls).
Cmplx payload_normalized_trace(const Circuit& payload, int n_mixed);

// Run the one-clean-qubit protocol on the payload for all three readout axes,
// each with its own shot budget and sampling seed. Payload gates go through
// the noise model; state preparation and the basis change stay ideal unless
// opts.noisy_prep is set. shots == 0 is the infinite-shot limit.
TraceEstimate estimate_normalized_trace(const Circuit& payload, int n_mixed, PrepStrategy prep,
                                        const NoiseModel& model, std::uint64_t shots,
                                        std::uint64_t seed, std::int64_t now,
                                        const DqcOptions& opts = {});

}  // namespace dqc1bench

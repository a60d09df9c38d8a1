#pragma once

// Density-matrix state. Qubit 0 is the clean/control qubit by convention and
// occupies the most significant bit of the basis index, i.e. |01> on two
// qubits means qubit 0 in |0> and qubit 1 in |1>.

#include <vector>

#include "dqc1bench/kernels.hpp"
#include "dqc1bench/matrix.hpp"

namespace dqc1bench {

enum class PauliAxis { X, Y, Z };

struct DensityMatrix {
  int num_qubits = 0;
  CMatrix mat;

  DensityMatrix() = default;
  DensityMatrix(int n, CMatrix m);

  int dim() const { return 1 << num_qubits; }

  // |00...0><00...0|
  static DensityMatrix pure_zero(int num_qubits);
  // |0><0| on qubit 0, maximally mixed on the remaining n_mixed qubits
  static DensityMatrix clean_plus_mixed(int n_mixed);
};

// validity helpers (trace / Hermiticity are cheap; PSD needs an
// eigendecomposition and is exercised from the test suite only)
double hermiticity_defect(const DensityMatrix& state);
double trace_error(const DensityMatrix& state);

DensityMatrix apply_unitary(const DensityMatrix& state, const CMatrix& u,
                            const std::vector<int>& targets,
                            kernels::Engine engine = kernels::Engine::Optimized);
void apply_unitary_inplace(DensityMatrix& state, const CMatrix& u, const std::vector<int>& targets,
                           kernels::Engine engine = kernels::Engine::Optimized);

DensityMatrix partial_trace(const DensityMatrix& state, const std::vector<int>& discard);

double expectation(const DensityMatrix& state, PauliAxis axis, int qubit);

}  // namespace dqc1bench

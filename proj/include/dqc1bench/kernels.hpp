#pragma once

// Density-matrix update kernels. Two interchangeable engines:
//
//   Reference  - embeds the gate into the full 2^n x 2^n unitary and performs
//                two dense matrix multiplies. Slow but transparently correct;
//                kept as the oracle the optimized path is tested against.
//   Optimized  - in-place bitwise row/column pair updates (single-qubit gates),
//                index permutation (CNOT) and gather/scatter (general k-qubit
//                unitaries). OpenMP-parallel across independent rows/columns
//                once the matrix is large enough to pay for the fork.
//
// Both engines apply rho -> U_emb rho U_emb† for the gate embedded on the
// given targets with qubit 0 as the most significant bit.

#include <vector>

#include "dqc1bench/matrix.hpp"

namespace dqc1bench {
namespace kernels {

enum class Engine { Reference, Optimized };

// dimension at or above which the optimized engine goes parallel
inline constexpr int kParallelDim = 64;

// full 2^n x 2^n embedding of a k-qubit unitary on ordered targets (MSB-first)
CMatrix embed_unitary(const CMatrix& u, const std::vector<int>& targets, int num_qubits);
CMatrix cnot_matrix(int control, int target, int num_qubits);

void apply_1q(CMatrix& rho, const CMatrix& u, int qubit, int num_qubits, Engine engine);
void apply_cnot(CMatrix& rho, int control, int target, int num_qubits, Engine engine);
void apply_kq(CMatrix& rho, const CMatrix& u, const std::vector<int>& targets, int num_qubits,
              Engine engine);

}  // namespace kernels
}  // namespace dqc1bench

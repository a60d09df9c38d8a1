#pragma once

// Gate-level IR over the native set {H, X, Ry, Rz, CNOT}, a compiler from
// controlled 2x2 unitaries to that set, and CNOT accounting.
//
// Gate-matrix conventions (fixed for the whole toolkit):
//   Ry(theta) = [[cos t,  sin t], [-sin t, cos t]]
//   Rz(theta) = [[1, 0], [0, e^{i theta}]]
// The relative phase of Rz matters inside controlled blocks: a "global" phase
// on the target block is a physical relative phase once a control is attached,
// so compilation tracks it explicitly and realizes it as Rz on the control.

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "dqc1bench/density_matrix.hpp"
#include "dqc1bench/matrix.hpp"

namespace dqc1bench {

enum class GateKind { H, X, Ry, Rz, CNOT };

struct Gate {
  GateKind kind = GateKind::H;
  double theta = 0.0;  // Ry/Rz only
  int q0 = 0;          // target (1q) or control (CNOT)
  int q1 = -1;         // CNOT target

  static Gate h(int q) { return {GateKind::H, 0.0, q, -1}; }
  static Gate x(int q) { return {GateKind::X, 0.0, q, -1}; }
  static Gate ry(double theta, int q) { return {GateKind::Ry, theta, q, -1}; }
  static Gate rz(double theta, int q) { return {GateKind::Rz, theta, q, -1}; }
  static Gate cnot(int control, int target) { return {GateKind::CNOT, 0.0, control, target}; }

  bool is_cnot() const { return kind == GateKind::CNOT; }
};

struct Circuit {
  int num_qubits = 0;
  std::vector<Gate> gates;
  std::string label;

  Circuit() = default;
  explicit Circuit(int n, std::string lbl = "") : num_qubits(n), label(std::move(lbl)) {}

  void append(const Gate& g);
  void append(const Circuit& other);  // num_qubits must match
};

// 2x2 native gate matrices
CMatrix h_mat();
CMatrix x_mat();
CMatrix ry_mat(double theta);
CMatrix rz_mat(double theta);

int cnot_count(const Circuit& c);

// product of embedded gate matrices in application order
CMatrix unitary_of(const Circuit& c);

// apply one ideal gate to a density matrix
void apply_gate(DensityMatrix& state, const Gate& g,
                kernels::Engine engine = kernels::Engine::Optimized);

// Compile control-u (control qubit 0, target qubit 1) to the native set.
// budget_hint = 0 picks the default budgets: identity -> 0 CNOTs, diagonal
// -> 2, general -> 5 (the reference hardware-style budget). A nonzero hint
// asks for exactly that many CNOTs on non-diagonal input (minimum 2, e.g.
// budget_hint = 2 emits the tight two-CNOT ABC decomposition).
Circuit compile_controlled_2x2(const CMatrix& u, int budget_hint = 0);

// retarget a compiled 2-qubit block (qubits {0,1}) to (control 0, target t)
Circuit retarget_block(const Circuit& block, int target, int num_qubits);

// Wrap a controlled payload into a full protocol circuit: H on the clean
// qubit, the payload, then a basis change so a final Z readout measures the
// requested axis. The payload may touch qubit 0 only diagonally (Rz, or as
// CNOT control); anything else throws.
Circuit build_dqc1_circuit(const Circuit& payload, int n_mixed, PauliAxis meas_axis);

nlohmann::json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const nlohmann::json& j);

}  // namespace dqc1bench

#include <doctest.h>

#include <cmath>
#include <complex>
#include <nlohmann/json.hpp>
#include <vector>

#include "dqc1bench/circuit.hpp"
#include "dqc1bench/kernels.hpp"
#include "dqc1bench/matrix.hpp"
#include "dqc1bench/rng.hpp"

using namespace dqc1bench;

namespace {

constexpr double kPi = 3.14159265358979324;
const Cmplx kI{0.0, 1.0};

CMatrix random_su2(Rng& rng) {
  const double a = rng.uniform01() * 2.0 * kPi;
  const double b = rng.uniform01() * kPi;
  const double c = rng.uniform01() * 2.0 * kPi;
  CMatrix u(2, 2);
  u(0, 0) = std::exp(-kI * ((a + c) / 2.0)) * std::cos(b / 2.0);
  u(0, 1) = -std::exp(-kI * ((a - c) / 2.0)) * std::sin(b / 2.0);
  u(1, 0) = std::exp(kI * ((a - c) / 2.0)) * std::sin(b / 2.0);
  u(1, 1) = std::exp(kI * ((a + c) / 2.0)) * std::cos(b / 2.0);
  return u;
}

// explicit control-u on qubits (0 = control, 1 = target)
CMatrix controlled(const CMatrix& u) {
  CMatrix cu = CMatrix::identity(4);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) cu(2 + r, 2 + c) = u(r, c);
  return cu;
}

void check_compiles_to(const CMatrix& u, int budget_hint, double tol = 1e-8) {
  const Circuit block = compile_controlled_2x2(u, budget_hint);
  const CMatrix got = unitary_of(block);
  CAPTURE(budget_hint);
  CHECK(max_abs_diff_up_to_phase(got, controlled(u)) < tol);
}

}  // namespace

TEST_CASE("native gate matrices") {
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(max_abs_diff(h_mat(), CMatrix(2, 2, {s, s, s, -s})) < 1e-15);
  CHECK(max_abs_diff(x_mat(), CMatrix(2, 2, {0.0, 1.0, 1.0, 0.0})) < 1e-15);

  // Ry is the real rotation [[cos, sin], [-sin, cos]]
  const CMatrix ry = ry_mat(0.7);
  CHECK(ry(0, 0).real() == doctest::Approx(std::cos(0.7)));
  CHECK(ry(0, 1).real() == doctest::Approx(std::sin(0.7)));
  CHECK(ry(1, 0).real() == doctest::Approx(-std::sin(0.7)));
  CHECK(std::abs(ry(0, 0).imag()) < 1e-15);

  // Rz puts the full phase on |1>
  const CMatrix rz = rz_mat(0.9);
  CHECK(rz(0, 0) == Cmplx(1.0));
  CHECK(std::abs(rz(1, 1) - std::exp(kI * 0.9)) < 1e-15);
  CHECK(rz(0, 1) == Cmplx(0.0));
}

TEST_CASE("cnot_count counts only CNOTs") {
  Circuit c(3);
  c.append(Gate::h(0));
  c.append(Gate::cnot(0, 1));
  c.append(Gate::rz(0.2, 2));
  c.append(Gate::cnot(0, 2));
  c.append(Gate::x(1));
  CHECK(cnot_count(c) == 2);
}

TEST_CASE("unitary_of multiplies gates in application order") {
  Circuit c(1);
  c.append(Gate::h(0));
  c.append(Gate::x(0));
  // applying H then X means the matrix is X * H
  const CMatrix expect = matmul(x_mat(), h_mat());
  CHECK(max_abs_diff(unitary_of(c), expect) < 1e-15);
}

TEST_CASE("compile of the identity emits no gates") {
  const Circuit block = compile_controlled_2x2(CMatrix::identity(2));
  CHECK(block.gates.empty());
}

TEST_CASE("compile of a scalar phase is one Rz on the control") {
  const CMatrix u(2, 2, {std::exp(kI * 0.8), 0.0, 0.0, std::exp(kI * 0.8)});
  const Circuit block = compile_controlled_2x2(u);
  REQUIRE(block.gates.size() == 1);
  CHECK(block.gates[0].kind == GateKind::Rz);
  CHECK(block.gates[0].q0 == 0);
  CHECK(max_abs_diff_up_to_phase(unitary_of(block), controlled(u)) < 1e-12);
}

TEST_CASE("compile of a diagonal uses exactly two CNOTs") {
  const CMatrix u(2, 2, {std::exp(kI * 0.3), 0.0, 0.0, std::exp(kI * -1.1)});
  const Circuit block = compile_controlled_2x2(u);
  CHECK(cnot_count(block) == 2);
  CHECK(max_abs_diff_up_to_phase(unitary_of(block), controlled(u)) < 1e-12);
}

TEST_CASE("compile of a general unitary defaults to five CNOTs") {
  Rng rng(11);
  const CMatrix u = random_su2(rng);
  const Circuit block = compile_controlled_2x2(u);
  CHECK(cnot_count(block) == 5);
  CHECK(max_abs_diff_up_to_phase(unitary_of(block), controlled(u)) < 1e-8);
}

TEST_CASE("budget hints are honored exactly") {
  Rng rng(12);
  const CMatrix u = random_su2(rng);
  for (int hint = 2; hint <= 9; ++hint) {
    const Circuit block = compile_controlled_2x2(u, hint);
    CAPTURE(hint);
    CHECK(cnot_count(block) == hint);
    CHECK(max_abs_diff_up_to_phase(unitary_of(block), controlled(u)) < 1e-8);
  }
}

TEST_CASE("compile soundness over many random unitaries") {
  Rng rng(2024);
  for (int trial = 0; trial < 400; ++trial) {
    const CMatrix u = random_su2(rng);
    check_compiles_to(u, 0);
    check_compiles_to(u, 2);
  }
  // diagonals with assorted phases, including the near-identity corner
  for (int trial = 0; trial < 100; ++trial) {
    const double mu = (rng.uniform01() - 0.5) * 4.0 * kPi;
    const double la = (rng.uniform01() - 0.5) * 4.0 * kPi;
    const CMatrix u(2, 2, {std::exp(kI * mu), 0.0, 0.0, std::exp(kI * la)});
    check_compiles_to(u, 0, 1e-10);
  }
}

TEST_CASE("compiled blocks never put non-diagonal gates on the control") {
  Rng rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    const Circuit block = compile_controlled_2x2(random_su2(rng), 2 + trial % 6);
    for (const Gate& g : block.gates) {
      if (g.kind == GateKind::CNOT) {
        CHECK(g.q0 == 0);  // control stays on the clean qubit
      } else if (g.q0 == 0) {
        CHECK(g.kind == GateKind::Rz);
      }
    }
  }
}

TEST_CASE("retarget_block moves the target and keeps the unitary") {
  Rng rng(13);
  const CMatrix u = random_su2(rng);
  const Circuit block = compile_controlled_2x2(u, 2);
  const Circuit moved = retarget_block(block, 3, 4);
  CHECK(moved.num_qubits == 4);
  // control-u on (0, 3) of four qubits
  const CMatrix cu = controlled(u);
  const CMatrix expect = kernels::embed_unitary(cu, {0, 3}, 4);
  CHECK(max_abs_diff_up_to_phase(unitary_of(moved), expect) < 1e-8);
}

TEST_CASE("build_dqc1_circuit validates the payload") {
  Circuit ok(2);
  ok.append(Gate::rz(0.4, 0));
  ok.append(Gate::cnot(0, 1));
  CHECK_NOTHROW(build_dqc1_circuit(ok, 1, PauliAxis::X));

  Circuit bad_h(2);
  bad_h.append(Gate::h(0));
  CHECK_THROWS(build_dqc1_circuit(bad_h, 1, PauliAxis::X));

  Circuit bad_target(2);
  bad_target.append(Gate::cnot(1, 0));
  CHECK_THROWS(build_dqc1_circuit(bad_target, 1, PauliAxis::X));
}

TEST_CASE("build_dqc1_circuit starts with H and ends with the basis change") {
  Circuit payload(2);
  payload.append(Gate::cnot(0, 1));

  const Circuit on_x = build_dqc1_circuit(payload, 1, PauliAxis::X);
  REQUIRE(!on_x.gates.empty());
  CHECK(on_x.gates.front().kind == GateKind::H);
  CHECK(on_x.gates.front().q0 == 0);
  CHECK(on_x.gates.back().kind == GateKind::H);
  CHECK(on_x.gates.back().q0 == 0);

  // a Z readout needs no basis change, so the payload gate is last
  const Circuit on_z = build_dqc1_circuit(payload, 1, PauliAxis::Z);
  CHECK(on_z.gates.back().is_cnot());
  CHECK(on_z.gates.size() == on_x.gates.size() - 1);

  // the Y readout adds an extra rotation over the X one
  const Circuit on_y = build_dqc1_circuit(payload, 1, PauliAxis::Y);
  CHECK(on_y.gates.size() == on_x.gates.size() + 1);
}

TEST_CASE("circuit JSON round-trip") {
  Circuit c(3, "demo");
  c.append(Gate::h(0));
  c.append(Gate::ry(0.25, 1));
  c.append(Gate::rz(-1.5, 2));
  c.append(Gate::cnot(0, 2));
  c.append(Gate::x(1));

  const nlohmann::json j = circuit_to_json(c);
  const Circuit back = circuit_from_json(j);
  CHECK(back.num_qubits == 3);
  CHECK(back.label == "demo");
  REQUIRE(back.gates.size() == c.gates.size());
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    CHECK(back.gates[i].kind == c.gates[i].kind);
    CHECK(back.gates[i].theta == c.gates[i].theta);
    CHECK(back.gates[i].q0 == c.gates[i].q0);
    CHECK(back.gates[i].q1 == c.gates[i].q1);
  }
  CHECK(max_abs_diff(unitary_of(back), unitary_of(c)) < 1e-15);
}

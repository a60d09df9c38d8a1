#include "dqc1bench/circuit.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace dqc1bench {

namespace {
constexpr double kPi = 3.14159265358979323846;

void check_gate(const Gate& g, int num_qubits) {
  if (g.q0 < 0 || g.q0 >= num_qubits) throw std::invalid_argument("gate qubit out of range");
  if (g.is_cnot()) {
    if (g.q1 < 0 || g.q1 >= num_qubits) throw std::invalid_argument("gate qubit out of range");
    if (g.q0 == g.q1) throw std::invalid_argument("CNOT control equals target");
  }
  if (!std::isfinite(g.theta)) throw std::invalid_argument("gate angle is not finite");
}
}  // namespace

void Circuit::append(const Gate& g) {
  check_gate(g, num_qubits);
  gates.push_back(g);
}

void Circuit::append(const Circuit& other) {
  if (other.num_qubits != num_qubits)
    throw std::invalid_argument("Circuit::append: qubit count mismatch");
  for (const Gate& g : other.gates) append(g);
}

CMatrix h_mat() {
  const double s = 1.0 / std::sqrt(2.0);
  return CMatrix(2, 2, {s, s, s, -s});
}

CMatrix x_mat() { return CMatrix(2, 2, {0.0, 1.0, 1.0, 0.0}); }

CMatrix ry_mat(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return CMatrix(2, 2, {c, s, -s, c});
}

CMatrix rz_mat(double theta) {
  return CMatrix(2, 2, {1.0, 0.0, 0.0, std::polar(1.0, theta)});
}

int cnot_count(const Circuit& c) {
  int k = 0;
  for (const Gate& g : c.gates) k += g.is_cnot() ? 1 : 0;
  return k;
}

namespace {
CMatrix gate_matrix_full(const Gate& g, int num_qubits) {
  switch (g.kind) {
    case GateKind::H: return kernels::embed_unitary(h_mat(), {g.q0}, num_qubits);
    case GateKind::X: return kernels::embed_unitary(x_mat(), {g.q0}, num_qubits);
    case GateKind::Ry: return kernels::embed_unitary(ry_mat(g.theta), {g.q0}, num_qubits);
    case GateKind::Rz: return kernels::embed_unitary(rz_mat(g.theta), {g.q0}, num_qubits);
    case GateKind::CNOT: return kernels::cnot_matrix(g.q0, g.q1, num_qubits);
  }
  throw std::logic_error("unreachable gate kind");
}
}  // namespace

CMatrix unitary_of(const Circuit& c) {
  CMatrix u = CMatrix::identity(1 << c.num_qubits);
  for (const Gate& g : c.gates) u = matmul(gate_matrix_full(g, c.num_qubits), u);
  return u;
}

void apply_gate(DensityMatrix& state, const Gate& g, kernels::Engine engine) {
  switch (g.kind) {
    case GateKind::H: kernels::apply_1q(state.mat, h_mat(), g.q0, state.num_qubits, engine); break;
    case GateKind::X: kernels::apply_1q(state.mat, x_mat(), g.q0, state.num_qubits, engine); break;
    case GateKind::Ry:
      kernels::apply_1q(state.mat, ry_mat(g.theta), g.q0, state.num_qubits, engine);
      break;
    case GateKind::Rz:
      kernels::apply_1q(state.mat, rz_mat(g.theta), g.q0, state.num_qubits, engine);
      break;
    case GateKind::CNOT:
      kernels::apply_cnot(state.mat, g.q0, g.q1, state.num_qubits, engine);
      break;
  }
}

namespace {

// one CNOT rebuilt as an H-conjugated controlled-phase: exact, two CNOTs
void emit_dressed_cnot(Circuit& c) {
  c.append(Gate::h(1));
  c.append(Gate::rz(kPi / 2, 1));
  c.append(Gate::cnot(0, 1));
  c.append(Gate::rz(-kPi / 2, 1));
  c.append(Gate::cnot(0, 1));
  c.append(Gate::rz(kPi / 2, 0));
  c.append(Gate::h(1));
}

// CNOT pair refocused by target-side X gates: exact identity, two CNOTs.
// X stays off the control so padded payloads keep the clean qubit diagonal.
void emit_echo_pair(Circuit& c) {
  c.append(Gate::cnot(0, 1));
  c.append(Gate::x(1));
  c.append(Gate::cnot(0, 1));
  c.append(Gate::x(1));
}

// ZYZ Euler angles of V in SU(2):
//   V = diag(e^{-ib/2}, e^{ib/2}) . [[cos g/2, -sin g/2],[sin g/2, cos g/2]]
//     . diag(e^{-id/2}, e^{id/2})
struct Euler {
  double beta, gamma, delta;
};

Euler euler_zyz(const CMatrix& v) {
  const double gamma = 2.0 * std::atan2(std::abs(v(1, 0)), std::abs(v(0, 0)));
  const double bpd = std::abs(v(0, 0)) < 1e-12 ? 0.0 : -2.0 * std::arg(v(0, 0));
  const double bmd = std::abs(v(1, 0)) < 1e-12 ? 0.0 : 2.0 * std::arg(v(1, 0));
  return {(bpd + bmd) / 2.0, gamma, (bpd - bmd) / 2.0};
}

// Controlled-V via the ABC decomposition (A X B X C = V, A B C = I). The
// centered rotations map onto the native set with all conversion phases
// cancelling, so the result equals control-u exactly, not just up to phase.
// `budget` >= 2 sets the exact CNOT count: odd budgets dress the first CNOT,
// remaining pairs are appended as refocused echo blocks.
void emit_general(Circuit& c, const CMatrix& u, int budget) {
  const Cmplx det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
  const double alpha = std::arg(det) / 2.0;
  CMatrix v = u;
  const Cmplx unphase = std::polar(1.0, -alpha);
  for (Cmplx& z : v.data) z *= unphase;
  const Euler e = euler_zyz(v);

  int extra = budget - 2;
  const bool dress_first = (extra % 2) == 1;
  if (dress_first) --extra;

  c.append(Gate::rz((e.delta - e.beta) / 2.0, 1));  // C
  if (dress_first)
    emit_dressed_cnot(c);
  else
    c.append(Gate::cnot(0, 1));
  c.append(Gate::rz(-(e.delta + e.beta) / 2.0, 1));  // B
  c.append(Gate::ry(e.gamma / 4.0, 1));
  c.append(Gate::cnot(0, 1));
  c.append(Gate::ry(-e.gamma / 4.0, 1));  // A
  c.append(Gate::rz(e.beta, 1));
  c.append(Gate::rz(alpha, 0));  // controlled phase of det(u)
  for (int i = 0; i < extra / 2; ++i) emit_echo_pair(c);
}

}  // namespace

Circuit compile_controlled_2x2(const CMatrix& u, int budget_hint) {
  if (u.rows != 2 || u.cols != 2)
    throw std::invalid_argument("compile_controlled_2x2: input must be 2x2");
  if (!is_unitary(u, 1e-10))
    throw std::invalid_argument("compile_controlled_2x2: input is not unitary");

  Circuit c(2);
  const double off = std::max(std::abs(u(0, 1)), std::abs(u(1, 0)));
  const bool is_identity = max_abs_diff(u, CMatrix::identity(2)) <= 1e-12;

  if (is_identity) return c;

  if (off <= 1e-12) {
    const double mu0 = std::arg(u(0, 0));
    const double mu1 = std::arg(u(1, 1));
    if (std::abs(u(0, 0) - u(1, 1)) <= 1e-12) {
      c.append(Gate::rz(mu0, 0));  // scalar phase: pure control rotation
      return c;
    }
    // diag(e^{i mu0}, e^{i mu1}): controlled-phase core plus a control Rz
    // absorbing the symmetric part, exact with two CNOTs
    const double lambda = mu1 - mu0;
    c.append(Gate::rz(lambda / 2, 1));
    c.append(Gate::cnot(0, 1));
    c.append(Gate::rz(-lambda / 2, 1));
    c.append(Gate::cnot(0, 1));
    c.append(Gate::rz(mu0 + lambda / 2, 0));
    return c;
  }

  const int budget = budget_hint == 0 ? 5 : std::max(2, budget_hint);
  emit_general(c, u, budget);
  return c;
}

Circuit retarget_block(const Circuit& block, int target, int num_qubits) {
  if (block.num_qubits != 2)
    throw std::invalid_argument("retarget_block: block must be a 2-qubit circuit");
  if (target < 1 || target >= num_qubits)
    throw std::invalid_argument("retarget_block: target out of range");
  Circuit out(num_qubits, block.label);
  for (Gate g : block.gates) {
    if (g.is_cnot()) {
      g.q1 = g.q1 == 1 ? target : g.q1;
    } else {
      g.q0 = g.q0 == 1 ? target : g.q0;
    }
    out.append(g);
  }
  return out;
}

Circuit build_dqc1_circuit(const Circuit& payload, int n_mixed, PauliAxis meas_axis) {
  if (n_mixed < 1) throw std::invalid_argument("build_dqc1_circuit: n_mixed must be >= 1");
  const int n = 1 + n_mixed;
  if (payload.num_qubits > n)
    throw std::invalid_argument("build_dqc1_circuit: payload does not fit the register");

  for (const Gate& g : payload.gates) {
    // the payload must stay block diagonal in qubit 0: Rz on it and CNOTs
    // controlled by it are fine, anything else would corrupt the protocol
    if (g.is_cnot()) {
      if (g.q1 == 0) throw std::invalid_argument("payload uses qubit 0 as a CNOT target");
    } else if (g.q0 == 0 && g.kind != GateKind::Rz) {
      throw std::invalid_argument("payload applies a non-diagonal gate to qubit 0");
    }
  }

  Circuit c(n, payload.label);
  c.append(Gate::h(0));
  for (const Gate& g : payload.gates) c.append(g);
  switch (meas_axis) {
    case PauliAxis::X:
      c.append(Gate::h(0));
      break;
    case PauliAxis::Y:
      c.append(Gate::rz(-kPi / 2, 0));
      c.append(Gate::h(0));
      break;
    case PauliAxis::Z:
      break;
  }
  return c;
}

namespace {
const char* kind_name(GateKind k) {
  switch (k) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::Ry: return "Ry";
    case GateKind::Rz: return "Rz";
    case GateKind::CNOT: return "CNOT";
  }
  throw std::logic_error("unreachable gate kind");
}
}  // namespace

nlohmann::json circuit_to_json(const Circuit& c) {
  nlohmann::json gates = nlohmann::json::array();
  for (const Gate& g : c.gates) {
    nlohmann::json jg;
    jg["kind"] = kind_name(g.kind);
    if (g.kind == GateKind::Ry || g.kind == GateKind::Rz) jg["theta"] = g.theta;
    if (g.is_cnot())
      jg["targets"] = {g.q0, g.q1};
    else
      jg["targets"] = {g.q0};
    gates.push_back(jg);
  }
  nlohmann::json j;
  j["num_qubits"] = c.num_qubits;
  if (!c.label.empty()) j["label"] = c.label;
  j["gates"] = gates;
  return j;
}

Circuit circuit_from_json(const nlohmann::json& j) {
  Circuit c(j.at("num_qubits").get<int>(), j.value("label", ""));
  for (const auto& jg : j.at("gates")) {
    const std::string kind = jg.at("kind").get<std::string>();
    const auto& t = jg.at("targets");
    if (kind == "H")
      c.append(Gate::h(t.at(0).get<int>()));
    else if (kind == "X")
      c.append(Gate::x(t.at(0).get<int>()));
    else if (kind == "Ry")
      c.append(Gate::ry(jg.at("theta").get<double>(), t.at(0).get<int>()));
    else if (kind == "Rz")
      c.append(Gate::rz(jg.at("theta").get<double>(), t.at(0).get<int>()));
    else if (kind == "CNOT")
      c.append(Gate::cnot(t.at(0).get<int>(), t.at(1).get<int>()));
    else
      throw std::invalid_argument("circuit_from_json: unknown gate kind '" + kind + "'");
  }
  return c;
}

}  // namespace dqc1bench

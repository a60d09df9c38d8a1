#include "dqc1bench/density_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dqc1bench {

DensityMatrix::DensityMatrix(int n, CMatrix m) : num_qubits(n), mat(std::move(m)) {
  if (mat.rows != (1 << n) || mat.cols != (1 << n))
    throw std::invalid_argument("DensityMatrix: matrix dimension does not match qubit count");
}

DensityMatrix DensityMatrix::pure_zero(int num_qubits) {
  DensityMatrix s;
  s.num_qubits = num_qubits;
  s.mat = CMatrix(1 << num_qubits, 1 << num_qubits);
  s.mat(0, 0) = 1.0;
  return s;
}

DensityMatrix DensityMatrix::clean_plus_mixed(int n_mixed) {
  const int n = 1 + n_mixed;
  DensityMatrix s;
  s.num_qubits = n;
  s.mat = CMatrix(1 << n, 1 << n);
  const int sub = 1 << n_mixed;
  for (int i = 0; i < sub; ++i) s.mat(i, i) = 1.0 / sub;  // qubit 0 = MSB stays |0>
  return s;
}

double hermiticity_defect(const DensityMatrix& state) {
  return max_abs_diff(state.mat, adjoint(state.mat));
}

double trace_error(const DensityMatrix& state) { return std::abs(trace(state.mat) - Cmplx{1.0}); }

DensityMatrix apply_unitary(const DensityMatrix& state, const CMatrix& u,
                            const std::vector<int>& targets, kernels::Engine engine) {
  DensityMatrix out = state;
  apply_unitary_inplace(out, u, targets, engine);
  return out;
}

void apply_unitary_inplace(DensityMatrix& state, const CMatrix& u, const std::vector<int>& targets,
                           kernels::Engine engine) {
  if (!is_unitary(u, 1e-9)) throw std::invalid_argument("apply_unitary: matrix is not unitary");
  if (targets.size() == 1)
    kernels::apply_1q(state.mat, u, targets[0], state.num_qubits, engine);
  else
    kernels::apply_kq(state.mat, u, targets, state.num_qubits, engine);
}

DensityMatrix partial_trace(const DensityMatrix& state, const std::vector<int>& discard) {
  const int n = state.num_qubits;
  if (discard.empty()) throw std::invalid_argument("partial_trace: empty discard set");
  std::vector<bool> drop(n, false);
  for (int q : discard) {
    if (q < 0 || q >= n) throw std::invalid_argument("partial_trace: qubit index out of range");
    if (drop[q]) throw std::invalid_argument("partial_trace: repeated qubit index");
    drop[q] = true;
  }
  std::vector<int> keep;
  for (int q = 0; q < n; ++q)
    if (!drop[q]) keep.push_back(q);
  if (keep.empty()) throw std::invalid_argument("partial_trace: cannot discard every qubit");

  const int kn = static_cast<int>(keep.size());
  const int dn = n - kn;
  std::vector<int> keep_shift(kn), drop_shift(dn);
  for (int b = 0; b < kn; ++b) keep_shift[b] = n - 1 - keep[b];

  int di = 0;
  for (int q = 0; q < n; ++q)
    if (drop[q]) drop_shift[di++] = n - 1 - q;

  DensityMatrix out;
  out.num_qubits = kn;
  out.mat = CMatrix(1 << kn, 1 << kn);
  const int kdim = 1 << kn;
  const int ddim = 1 << dn;
  for (int i = 0; i < kdim; ++i) {
    int base_i = 0;
    for (int b = 0; b < kn; ++b) base_i |= ((i >> (kn - 1 - b)) & 1) << keep_shift[b];
    for (int j = 0; j < kdim; ++j) {
      int base_j = 0;
      for (int b = 0; b < kn; ++b) base_j |= ((j >> (kn - 1 - b)) & 1) << keep_shift[b];
      Cmplx acc{};
      for (int d = 0; d < ddim; ++d) {
        int extra = 0;
        for (int b = 0; b < dn; ++b) extra |= ((d >> (dn - 1 - b)) & 1) << drop_shift[b];
        acc += state.mat(base_i | extra, base_j | extra);
      }
      out.mat(i, j) = acc;
    }
  }
  return out;
}

double expectation(const DensityMatrix& state, PauliAxis axis, int qubit) {
  const int n = state.num_qubits;
  if (qubit < 0 || qubit >= n) throw std::invalid_argument("expectation: qubit index out of range");
  const int dim = 1 << n;
  const int bit = 1 << (n - 1 - qubit);
  const CMatrix& rho = state.mat;

  double value = 0.0;
  switch (axis) {
    case PauliAxis::Z:
      for (int i = 0; i < dim; ++i) value += ((i & bit) ? -1.0 : 1.0) * rho(i, i).real();
      break;
    case PauliAxis::X:
      // tr(rho X_q) = 2 Re sum over pairs rho(i0, i1)
      for (int i = 0; i < dim; ++i)
        if (!(i & bit)) value += 2.0 * rho(i, i | bit).real();
      break;
    case PauliAxis::Y:
      // tr(rho Y_q) = -2 Im sum over pairs rho(i0, i1)
      for (int i = 0; i < dim; ++i)
        if (!(i & bit)) value -= 2.0 * rho(i, i | bit).imag();
      break;
  }
  return value;
}

}  // namespace dqc1bench

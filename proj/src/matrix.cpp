#include "dqc1bench/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace dqc1bench {

CMatrix::CMatrix(int r, int c, std::initializer_list<Cmplx> vals) : CMatrix(r, c) {
  if (static_cast<std::size_t>(r) * c != vals.size())
    throw std::invalid_argument("CMatrix: initializer size mismatch");
  std::size_t i = 0;
  for (const Cmplx& v : vals) data[i++] = v;
}

CMatrix CMatrix::identity(int n) {
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matmul: dimension mismatch");
  CMatrix out(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i) {
    for (int k = 0; k < a.cols; ++k) {
      const Cmplx aik = a(i, k);
      if (aik == Cmplx{}) continue;
      for (int j = 0; j < b.cols; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

CMatrix adjoint(const CMatrix& a) {
  CMatrix out(a.cols, a.rows);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) out(j, i) = std::conj(a(i, j));
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows * b.rows, a.cols * b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) {
      const Cmplx aij = a(i, j);
      if (aij == Cmplx{}) continue;
      for (int k = 0; k < b.rows; ++k)
        for (int l = 0; l < b.cols; ++l) out(i * b.rows + k, j * b.cols + l) = aij * b(k, l);
    }
  return out;
}

Cmplx trace(const CMatrix& a) {
  if (a.rows != a.cols) throw std::invalid_argument("trace: non-square matrix");
  Cmplx t{};
  for (int i = 0; i < a.rows; ++i) t += a(i, i);
  return t;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i)
    m = std::max(m, std::abs(a.data[i] - b.data[i]));
  return m;
}

double unitarity_defect(const CMatrix& u) {
  return max_abs_diff(matmul(adjoint(u), u), CMatrix::identity(u.cols));
}

bool is_unitary(const CMatrix& u, double tol) {
  return u.rows == u.cols && unitarity_defect(u) <= tol;
}

double max_abs_diff_up_to_phase(const CMatrix& a, const CMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw std::invalid_argument("max_abs_diff_up_to_phase: shape mismatch");
  std::size_t ref = 0;
  double best = 0.0;
  for (std::size_t i = 0; i < b.data.size(); ++i)
    if (std::abs(b.data[i]) > best) {
      best = std::abs(b.data[i]);
      ref = i;
    }
  if (best == 0.0) return max_abs_diff(a, b);
  const Cmplx phase = (a.data[ref] / b.data[ref]);
  const double mag = std::abs(phase);
  const Cmplx unit = mag > 0 ? phase / mag : Cmplx{1.0, 0.0};
  double m = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i)
    m = std::max(m, std::abs(a.data[i] - b.data[i] * unit));
  return m;
}

}  // namespace dqc1bench

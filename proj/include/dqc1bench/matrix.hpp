#pragma once

// Dense complex matrices, row-major. Registers here never exceed 8 qubits
// (256 x 256), so a plain dense representation is both the simplest and the
// fastest option; no sparse or tensor-network machinery.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace dqc1bench {

using Cmplx = std::complex<double>;

struct CMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Cmplx> data;

  CMatrix() = default;
  CMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c) {}
  CMatrix(int r, int c, std::initializer_list<Cmplx> vals);

  Cmplx& operator()(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  const Cmplx& operator()(int r, int c) const {
    return data[static_cast<std::size_t>(r) * cols + c];
  }

  static CMatrix identity(int n);
  static CMatrix zero(int r, int c) { return CMatrix(r, c); }
};

CMatrix matmul(const CMatrix& a, const CMatrix& b);
CMatrix adjoint(const CMatrix& a);
CMatrix kron(const CMatrix& a, const CMatrix& b);
Cmplx trace(const CMatrix& a);

// max |a_ij - b_ij|
double max_abs_diff(const CMatrix& a, const CMatrix& b);
// max_ij |(U†U - I)_ij|
double unitarity_defect(const CMatrix& u);
bool is_unitary(const CMatrix& u, double tol = 1e-10);

// ||A - B e^{i phase}||_max minimized over the global phase (phase taken from
// the largest-magnitude entry of B)
double max_abs_diff_up_to_phase(const CMatrix& a, const CMatrix& b);

}  // namespace dqc1bench

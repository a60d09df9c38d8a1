#include "dqc1bench/kernels.hpp"

#include <algorithm>
#include <stdexcept>

namespace dqc1bench {
namespace kernels {

namespace {

void check_targets(const std::vector<int>& targets, int num_qubits) {
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 0 || targets[i] >= num_qubits)
      throw std::invalid_argument("kernels: target index out of range");
    for (std::size_t j = i + 1; j < targets.size(); ++j)
      if (targets[i] == targets[j])
        throw std::invalid_argument("kernels: repeated target index");
  }
}

}  // namespace

CMatrix embed_unitary(const CMatrix& u, const std::vector<int>& targets, int num_qubits) {
  const int k = static_cast<int>(targets.size());
  if (u.rows != (1 << k) || u.cols != (1 << k))
    throw std::invalid_argument("embed_unitary: gate dimension does not match target count");
  check_targets(targets, num_qubits);
  const int dim = 1 << num_qubits;
  const int sub = 1 << k;

  std::vector<int> shift(k);
  int target_mask = 0;
  for (int b = 0; b < k; ++b) {
    shift[b] = num_qubits - 1 - targets[b];
    target_mask |= 1 << shift[b];
  }

  CMatrix out(dim, dim);
  for (int i = 0; i < dim; ++i) {
    int si = 0;
    for (int b = 0; b < k; ++b) si |= ((i >> shift[b]) & 1) << (k - 1 - b);
    const int rest = i & ~target_mask;
    for (int sj = 0; sj < sub; ++sj) {
      int j = rest;
      for (int b = 0; b < k; ++b) j |= ((sj >> (k - 1 - b)) & 1) << shift[b];
      out(i, j) = u(si, sj);
    }
  }
  return out;
}

CMatrix cnot_matrix(int control, int target, int num_qubits) {
  if (control == target) throw std::invalid_argument("cnot_matrix: control equals target");
  check_targets({control, target}, num_qubits);
  const int dim = 1 << num_qubits;
  const int cbit = 1 << (num_qubits - 1 - control);
  const int tbit = 1 << (num_qubits - 1 - target);
  CMatrix out(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const int j = (i & cbit) ? (i ^ tbit) : i;
    out(j, i) = 1.0;
  }
  return out;
}

namespace {

void conjugate_reference(CMatrix& rho, const CMatrix& u_full) {
  rho = matmul(matmul(u_full, rho), adjoint(u_full));
}

void apply_1q_optimized(CMatrix& rho, const CMatrix& u, int qubit, int num_qubits) {
  const int dim = 1 << num_qubits;
  const int bit = 1 << (num_qubits - 1 - qubit);
  const Cmplx u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
  const int pairs = dim / 2;

  // rho <- U rho : mix row pairs; each iteration owns its two rows
#pragma omp parallel for if (dim >= kParallelDim)
  for (int p = 0; p < pairs; ++p) {
    const int base = (p / bit) * (bit << 1);
    const int i0 = base + (p % bit);
    const int i1 = i0 | bit;
    Cmplx* r0 = &rho.data[static_cast<std::size_t>(i0) * dim];
    Cmplx* r1 = &rho.data[static_cast<std::size_t>(i1) * dim];
    for (int j = 0; j < dim; ++j) {
      const Cmplx a = r0[j], b = r1[j];
      r0[j] = u00 * a + u01 * b;
      r1[j] = u10 * a + u11 * b;
    }
  }

  // rho <- rho U† : mix column pairs inside each row
#pragma omp parallel for if (dim >= kParallelDim)
  for (int i = 0; i < dim; ++i) {
    Cmplx* row = &rho.data[static_cast<std::size_t>(i) * dim];
    for (int p = 0; p < pairs; ++p) {
      const int base = (p / bit) * (bit << 1);
      const int j0 = base + (p % bit);
      const int j1 = j0 | bit;
      const Cmplx a = row[j0], b = row[j1];
      row[j0] = a * std::conj(u00) + b * std::conj(u01);
      row[j1] = a * std::conj(u10) + b * std::conj(u11);
    }
  }
}

void apply_cnot_optimized(CMatrix& rho, int control, int target, int num_qubits) {
  const int dim = 1 << num_qubits;
  const int cbit = 1 << (num_qubits - 1 - control);
  const int tbit = 1 << (num_qubits - 1 - target);

  // permutation is an involution: swap the affected row pairs, then columns
#pragma omp parallel for if (dim >= kParallelDim)
  for (int i = 0; i < dim; ++i) {
    if ((i & cbit) && !(i & tbit)) {
      Cmplx* a = &rho.data[static_cast<std::size_t>(i) * dim];
      Cmplx* b = &rho.data[static_cast<std::size_t>(i | tbit) * dim];
      std::swap_ranges(a, a + dim, b);
    }
  }
#pragma omp parallel for if (dim >= kParallelDim)
  for (int i = 0; i < dim; ++i) {
    Cmplx* row = &rho.data[static_cast<std::size_t>(i) * dim];
    for (int j = 0; j < dim; ++j)
      if ((j & cbit) && !(j & tbit)) std::swap(row[j], row[j | tbit]);
  }
}

void apply_kq_optimized(CMatrix& rho, const CMatrix& u, const std::vector<int>& targets,
                        int num_qubits) {
  const int k = static_cast<int>(targets.size());
  const int dim = 1 << num_qubits;
  const int sub = 1 << k;

  int target_mask = 0;
  std::vector<int> shift(k);
  for (int b = 0; b < k; ++b) {
    shift[b] = num_qubits - 1 - targets[b];
    target_mask |= 1 << shift[b];
  }
  std::vector<int> off(sub, 0);
  for (int s = 0; s < sub; ++s)
    for (int b = 0; b < k; ++b) off[s] |= ((s >> (k - 1 - b)) & 1) << shift[b];
  std::vector<int> bases;
  bases.reserve(dim >> k);
  for (int i = 0; i < dim; ++i)
    if ((i & target_mask) == 0) bases.push_back(i);

  // rho <- U rho : gather/scatter each sub-column per full column
#pragma omp parallel for if (dim >= kParallelDim)
  for (int j = 0; j < dim; ++j) {
    std::vector<Cmplx> v(sub), w(sub);
    for (int base : bases) {
      for (int s = 0; s < sub; ++s)
        v[s] = rho.data[static_cast<std::size_t>(base | off[s]) * dim + j];
      for (int sp = 0; sp < sub; ++sp) {
        Cmplx acc{};
        for (int s = 0; s < sub; ++s) acc += u(sp, s) * v[s];
        w[sp] = acc;
      }
      for (int s = 0; s < sub; ++s)
        rho.data[static_cast<std::size_t>(base | off[s]) * dim + j] = w[s];
    }
  }

  // rho <- rho U†
#pragma omp parallel for if (dim >= kParallelDim)
  for (int i = 0; i < dim; ++i) {
    Cmplx* row = &rho.data[static_cast<std::size_t>(i) * dim];
    std::vector<Cmplx> v(sub), w(sub);
    for (int base : bases) {
      for (int s = 0; s < sub; ++s) v[s] = row[base | off[s]];
      for (int sp = 0; sp < sub; ++sp) {
        Cmplx acc{};
        for (int s = 0; s < sub; ++s) acc += v[s] * std::conj(u(sp, s));
        w[sp] = acc;
      }
      for (int s = 0; s < sub; ++s) row[base | off[s]] = w[s];
    }
  }
}

}  // namespace

void apply_1q(CMatrix& rho, const CMatrix& u, int qubit, int num_qubits, Engine engine) {
  if (u.rows != 2 || u.cols != 2) throw std::invalid_argument("apply_1q: gate must be 2x2");
  check_targets({qubit}, num_qubits);
  if (engine == Engine::Reference)
    conjugate_reference(rho, embed_unitary(u, {qubit}, num_qubits));
  else
    apply_1q_optimized(rho, u, qubit, num_qubits);
}

void apply_cnot(CMatrix& rho, int control, int target, int num_qubits, Engine engine) {
  if (control == target) throw std::invalid_argument("apply_cnot: control equals target");
  check_targets({control, target}, num_qubits);
  if (engine == Engine::Reference)
    conjugate_reference(rho, cnot_matrix(control, target, num_qubits));
  else
    apply_cnot_optimized(rho, control, target, num_qubits);
}

void apply_kq(CMatrix& rho, const CMatrix& u, const std::vector<int>& targets, int num_qubits,
              Engine engine) {
  const int k = static_cast<int>(targets.size());
  if (u.rows != (1 << k) || u.cols != (1 << k))
    throw std::invalid_argument("apply_kq: gate dimension does not match target count");
  check_targets(targets, num_qubits);
  if (engine == Engine::Reference)
    conjugate_reference(rho, embed_unitary(u, targets, num_qubits));
  else
    apply_kq_optimized(rho, u, targets, num_qubits);
}

}  // namespace kernels
}  // namespace dqc1bench

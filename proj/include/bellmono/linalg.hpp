#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace bellmono {

using Complex = std::complex<double>;

// Dense row-major complex matrix. Everything in this project lives at
// dimension <= 27, so all operations are plain O(d^3) dense loops.
struct ComplexMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Complex> entries;  // row-major, entries.size() == rows*cols

  ComplexMatrix() = default;
  ComplexMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}
  ComplexMatrix(std::size_t r, std::size_t c, std::vector<Complex> e);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix from_rows(const std::vector<std::vector<Complex>>& data);

  Complex& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
  const Complex& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }

  bool is_square() const { return rows == cols; }
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix sub(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scale(const ComplexMatrix& m, Complex factor);
ComplexMatrix dagger(const ComplexMatrix& m);
ComplexMatrix conjugate(const ComplexMatrix& m);
Complex trace(const ComplexMatrix& m);

// Kronecker product; block (i*b.rows + k, j*b.cols + l) = a(i,j) * b(k,l).
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

// max_ij |a(i,j) - b(i,j)|
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
// max_ij |m(i,j) - conj(m(j,i))|
double hermiticity_defect(const ComplexMatrix& m);

// Real eigenvalues of a Hermitian matrix, ascending. Cyclic Jacobi
// rotations until the off-diagonal Frobenius norm drops below
// tol::jacobi_offdiag, capped at tol::jacobi_max_sweeps sweeps.
// Rejects non-square input and hermiticity defects above
// tol::hermiticity_input.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

// Determinant by LU with partial pivoting. Contract covers dim <= 4 only
// (the Chen criterion needs det of a 4x4); larger input is rejected.
Complex determinant(const ComplexMatrix& m);

// Normalized pure state over an explicit tensor-factor structure.
// Subsystem 0 is the leftmost factor, matching |ABC...> ket order.
struct StateVector {
  std::size_t dim = 0;
  std::vector<Complex> amplitudes;
  std::vector<std::size_t> subsystem_dims;

  StateVector(std::vector<Complex> amps, std::vector<std::size_t> dims);
  double norm() const;
};

// Hermitian, unit-trace, PSD-within-tolerance matrix with subsystem
// structure. All three invariants are enforced at construction.
struct DensityMatrix {
  std::size_t dim = 0;
  ComplexMatrix matrix;
  std::vector<std::size_t> subsystem_dims;

  DensityMatrix(ComplexMatrix m, std::vector<std::size_t> dims);
};

// |v><v| as a DensityMatrix carrying v's subsystem structure.
DensityMatrix outer(const StateVector& v);

// tr(rho^2)
double purity(const DensityMatrix& rho);

// Reduced density matrix over the subsystems listed in `keep` (original
// order preserved). `keep` must be a nonempty subset of valid subsystem
// indices without duplicates; the full set returns a copy.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::size_t>& keep);

}  // namespace bellmono

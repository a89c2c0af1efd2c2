#include "bellmono/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "bellmono/tolerances.hpp"

namespace bellmono {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

bool all_finite(const std::vector<Complex>& v) {
  for (const auto& z : v) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

std::size_t dims_product(const std::vector<std::size_t>& dims) {
  std::size_t p = 1;
  for (std::size_t d : dims) p *= d;
  return p;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t r, std::size_t c, std::vector<Complex> e)
    : rows(r), cols(c), entries(std::move(e)) {
  require(rows > 0 && cols > 0, "ComplexMatrix: dimensions must be positive");
  require(entries.size() == rows * cols, "ComplexMatrix: entry count != rows*cols");
  require(all_finite(entries), "ComplexMatrix: non-finite entry");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(const std::vector<std::vector<Complex>>& data) {
  require(!data.empty(), "from_rows: no rows");
  const std::size_t r = data.size();
  const std::size_t c = data[0].size();
  ComplexMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    require(data[i].size() == c, "from_rows: ragged rows");
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = data[i][j];
  }
  return m;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  require(a.cols == b.rows, "matmul: inner dimensions differ");
  ComplexMatrix out(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t k = 0; k < a.cols; ++k) {
      const Complex aik = a.at(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols; ++j) {
        out.at(i, j) += aik * b.at(k, j);
      }
    }
  }
  return out;
}

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
  require(a.rows == b.rows && a.cols == b.cols, "add: shape mismatch");
  ComplexMatrix out = a;
  for (std::size_t i = 0; i < out.entries.size(); ++i) out.entries[i] += b.entries[i];
  return out;
}

ComplexMatrix sub(const ComplexMatrix& a, const ComplexMatrix& b) {
  require(a.rows == b.rows && a.cols == b.cols, "sub: shape mismatch");
  ComplexMatrix out = a;
  for (std::size_t i = 0; i < out.entries.size(); ++i) out.entries[i] -= b.entries[i];
  return out;
}

ComplexMatrix scale(const ComplexMatrix& m, Complex factor) {
  ComplexMatrix out = m;
  for (auto& z : out.entries) z *= factor;
  return out;
}

ComplexMatrix dagger(const ComplexMatrix& m) {
  ComplexMatrix out(m.cols, m.rows);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) out.at(j, i) = std::conj(m.at(i, j));
  return out;
}

ComplexMatrix conjugate(const ComplexMatrix& m) {
  ComplexMatrix out = m;
  for (auto& z : out.entries) z = std::conj(z);
  return out;
}

Complex trace(const ComplexMatrix& m) {
  require(m.is_square(), "trace: matrix not square");
  Complex t = 0.0;
  for (std::size_t i = 0; i < m.rows; ++i) t += m.at(i, i);
  return t;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows * b.rows, a.cols * b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) {
      const Complex aij = a.at(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < b.rows; ++k)
        for (std::size_t l = 0; l < b.cols; ++l)
          out.at(i * b.rows + k, j * b.cols + l) = aij * b.at(k, l);
    }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require(a.rows == b.rows && a.cols == b.cols, "max_abs_diff: shape mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < a.entries.size(); ++i)
    d = std::max(d, std::abs(a.entries[i] - b.entries[i]));
  return d;
}

double hermiticity_defect(const ComplexMatrix& m) {
  require(m.is_square(), "hermiticity_defect: matrix not square");
  double d = 0.0;
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      d = std::max(d, std::abs(m.at(i, j) - std::conj(m.at(j, i))));
  return d;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  require(m.is_square(), "hermitian_eigenvalues: matrix not square");
  require(hermiticity_defect(m) <= tol::hermiticity_input,
          "hermitian_eigenvalues: input not Hermitian within tolerance");

  const std::size_t n = m.rows;
  // Work on the exactly-Hermitian part; kills round-off asymmetry.
  ComplexMatrix a = scale(add(m, dagger(m)), 0.5);

  auto off_norm = [&a, n]() {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a.at(i, j));
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < tol::jacobi_max_sweeps; ++sweep) {
    if (off_norm() < tol::jacobi_offdiag) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex g = a.at(p, q);
        const double absg = std::abs(g);
        if (absg < 1e-300) {
          a.at(p, q) = a.at(q, p) = 0.0;
          continue;
        }
        const Complex phase = g / absg;
        const double alpha = a.at(p, p).real();
        const double beta = a.at(q, q).real();
        const double tau = (beta - alpha) / (2.0 * absg);
        const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                      : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // Rotation in the (p,q) plane with the phase of a_pq folded in.
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const Complex akp = a.at(k, p);
          const Complex akq = a.at(k, q);
          a.at(k, p) = c * akp - s * std::conj(phase) * akq;
          a.at(k, q) = s * phase * akp + c * akq;
          a.at(p, k) = std::conj(a.at(k, p));
          a.at(q, k) = std::conj(a.at(k, q));
        }
        a.at(p, p) = alpha - t * absg;
        a.at(q, q) = beta + t * absg;
        a.at(p, q) = a.at(q, p) = 0.0;
      }
    }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a.at(i, i).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

Complex determinant(const ComplexMatrix& m) {
  require(m.is_square(), "determinant: matrix not square");
  require(m.rows <= 4, "determinant: dimension > 4 out of contract");
  const std::size_t n = m.rows;
  ComplexMatrix lu = m;
  double sign = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(lu.at(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double v = std::abs(lu.at(r, col));
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best == 0.0) return 0.0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu.at(col, j), lu.at(pivot, j));
      sign = -sign;
    }
    const Complex d = lu.at(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex f = lu.at(r, col) / d;
      for (std::size_t j = col; j < n; ++j) lu.at(r, j) -= f * lu.at(col, j);
    }
  }
  Complex det = sign;
  for (std::size_t i = 0; i < n; ++i) det *= lu.at(i, i);
  return det;
}

StateVector::StateVector(std::vector<Complex> amps, std::vector<std::size_t> dims)
    : dim(amps.size()), amplitudes(std::move(amps)), subsystem_dims(std::move(dims)) {
  require(dim > 0, "StateVector: empty amplitude vector");
  require(all_finite(amplitudes), "StateVector: non-finite amplitude");
  require(!subsystem_dims.empty() && dims_product(subsystem_dims) == dim,
          "StateVector: subsystem dims do not multiply to vector dimension");
  require(std::abs(norm() - 1.0) <= tol::unit_norm, "StateVector: norm != 1");
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amplitudes) s += std::norm(a);
  return std::sqrt(s);
}

DensityMatrix::DensityMatrix(ComplexMatrix m, std::vector<std::size_t> dims)
    : dim(m.rows), matrix(std::move(m)), subsystem_dims(std::move(dims)) {
  require(matrix.is_square(), "DensityMatrix: matrix not square");
  require(!subsystem_dims.empty() && dims_product(subsystem_dims) == dim,
          "DensityMatrix: subsystem dims do not multiply to matrix dimension");
  require(hermiticity_defect(matrix) <= tol::density_hermiticity,
          "DensityMatrix: not Hermitian within tolerance");
  require(std::abs(trace(matrix).real() - 1.0) <= tol::unit_trace &&
              std::abs(trace(matrix).imag()) <= tol::unit_trace,
          "DensityMatrix: trace != 1");
  const auto eig = hermitian_eigenvalues(matrix);
  require(eig.front() >= tol::psd_floor, "DensityMatrix: negative eigenvalue beyond floor");
}

DensityMatrix outer(const StateVector& v) {
  ComplexMatrix m(v.dim, v.dim);
  for (std::size_t i = 0; i < v.dim; ++i)
    for (std::size_t j = 0; j < v.dim; ++j)
      m.at(i, j) = v.amplitudes[i] * std::conj(v.amplitudes[j]);
  return DensityMatrix(std::move(m), v.subsystem_dims);
}

double purity(const DensityMatrix& rho) {
  // tr(rho^2) via the Frobenius norm; rho is Hermitian.
  double s = 0.0;
  for (const auto& z : rho.matrix.entries) s += std::norm(z);
  return s;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::size_t>& keep) {
  const auto& dims = rho.subsystem_dims;
  const std::size_t n_sub = dims.size();
  require(!keep.empty(), "partial_trace: empty keep set");
  std::vector<bool> kept(n_sub, false);
  for (std::size_t s : keep) {
    require(s < n_sub, "partial_trace: subsystem index out of range");
    require(!kept[s], "partial_trace: duplicate subsystem index");
    kept[s] = true;
  }

  std::vector<std::size_t> keep_sorted;
  std::vector<std::size_t> traced;
  for (std::size_t s = 0; s < n_sub; ++s) (kept[s] ? keep_sorted : traced).push_back(s);

  if (traced.empty()) return rho;

  // Row-major strides of each subsystem inside the full index.
  std::vector<std::size_t> stride(n_sub, 1);
  for (std::size_t s = n_sub; s-- > 1;) stride[s - 1] = stride[s] * dims[s];

  std::size_t keep_dim = 1, trace_dim = 1;
  for (std::size_t s : keep_sorted) keep_dim *= dims[s];
  for (std::size_t s : traced) trace_dim *= dims[s];

  auto embed = [&](std::size_t packed, const std::vector<std::size_t>& subs) {
    // Unpack a row-major index over `subs` into the full-space index.
    std::size_t full = 0;
    for (std::size_t k = subs.size(); k-- > 0;) {
      const std::size_t s = subs[k];
      full += (packed % dims[s]) * stride[s];
      packed /= dims[s];
    }
    return full;
  };

  std::vector<std::size_t> keep_offsets(keep_dim), trace_offsets(trace_dim);
  for (std::size_t i = 0; i < keep_dim; ++i) keep_offsets[i] = embed(i, keep_sorted);
  for (std::size_t t = 0; t < trace_dim; ++t) trace_offsets[t] = embed(t, traced);

  ComplexMatrix out(keep_dim, keep_dim);
  for (std::size_t i = 0; i < keep_dim; ++i)
    for (std::size_t j = 0; j < keep_dim; ++j) {
      Complex acc = 0.0;
      for (std::size_t t = 0; t < trace_dim; ++t)
        acc += rho.matrix.at(keep_offsets[i] + trace_offsets[t],
                             keep_offsets[j] + trace_offsets[t]);
      out.at(i, j) = acc;
    }

  std::vector<std::size_t> out_dims;
  for (std::size_t s : keep_sorted) out_dims.push_back(dims[s]);
  return DensityMatrix(std::move(out), std::move(out_dims));
}

}  // namespace bellmono

#include "bellmono/dicke.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "bellmono/tolerances.hpp"

namespace bellmono {

namespace {

int half_integer_to_two_j(double j, const char* who) {
  const double two_j = 2.0 * j;
  const double rounded = std::round(two_j);
  if (!(std::abs(two_j - rounded) < 1e-9))
    throw std::invalid_argument(std::string(who) + ": j must be a half-integer");
  return static_cast<int>(rounded);
}

Complex expectation(const std::vector<Complex>& c, const ComplexMatrix& op) {
  Complex acc = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    Complex row = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) row += op.at(i, k) * c[k];
    acc += std::conj(c[i]) * row;
  }
  return acc;
}

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

}  // namespace

DickeState::DickeState(double j, std::vector<Complex> coeffs)
    : two_j(half_integer_to_two_j(j, "DickeState")), coefficients(std::move(coeffs)) {
  if (two_j < 3) throw std::invalid_argument("DickeState: requires j >= 3/2 (N >= 3 qubits)");
  if (coefficients.size() != static_cast<std::size_t>(two_j + 1))
    throw std::invalid_argument("DickeState: expected 2j+1 coefficients");
  double norm_sq = 0.0;
  for (const auto& c : coefficients) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw std::invalid_argument("DickeState: non-finite coefficient");
    norm_sq += std::norm(c);
  }
  if (std::abs(norm_sq - 1.0) > 2.0 * tol::unit_norm)
    throw std::invalid_argument("DickeState: coefficients not normalized");
}

CollectiveSpinOps collective_ops(double j) {
  const int two_j = half_integer_to_two_j(j, "collective_ops");
  if (two_j < 1) throw std::invalid_argument("collective_ops: requires j >= 1/2");
  const std::size_t n = static_cast<std::size_t>(two_j) + 1;

  CollectiveSpinOps ops;
  ops.dim = n;
  ops.jz = ComplexMatrix(n, n);
  ops.jplus = ComplexMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double m = -j + static_cast<double>(i);
    ops.jz.at(i, i) = m;
    if (i + 1 < n) ops.jplus.at(i + 1, i) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  ops.jminus = dagger(ops.jplus);
  ops.jx = scale(add(ops.jplus, ops.jminus), 0.5);
  ops.jy = scale(sub(ops.jplus, ops.jminus), Complex{0.0, -0.5});
  return ops;
}

SymmetricRdm rdm_from_dicke(const DickeState& psi) {
  const auto ops = collective_ops(psi.j());
  const auto& c = psi.coefficients;
  const double n = static_cast<double>(psi.n_qubits());

  const double jz = expectation(c, ops.jz).real();
  const double jz2 = expectation(c, matmul(ops.jz, ops.jz)).real();
  const Complex jp = expectation(c, ops.jplus);
  const Complex anticomm =
      expectation(c, add(matmul(ops.jplus, ops.jz), matmul(ops.jz, ops.jplus)));
  const Complex jp2 = expectation(c, matmul(ops.jplus, ops.jplus));

  const double denom = n * (n - 1.0);
  SymmetricRdm el;
  el.v_plus = (n * n - 2.0 * n + 4.0 * jz2 + 4.0 * jz * (n - 1.0)) / (4.0 * denom);
  el.v_minus = (n * n - 2.0 * n + 4.0 * jz2 - 4.0 * jz * (n - 1.0)) / (4.0 * denom);
  el.x_plus = ((n - 1.0) * jp + anticomm) / (2.0 * denom);
  el.x_minus = ((n - 1.0) * jp - anticomm) / (2.0 * denom);
  el.w = (n * n - 4.0 * jz2) / (4.0 * denom);
  el.y = el.w;
  el.u = jp2 / denom;
  return el;
}

DensityMatrix assemble_rdm(const SymmetricRdm& el) {
  ComplexMatrix m(4, 4);
  m.at(0, 0) = el.v_plus;
  m.at(0, 1) = std::conj(el.x_plus);
  m.at(0, 2) = std::conj(el.x_plus);
  m.at(0, 3) = std::conj(el.u);
  m.at(1, 0) = el.x_plus;
  m.at(1, 1) = el.w;
  m.at(1, 2) = el.y;
  m.at(1, 3) = std::conj(el.x_minus);
  m.at(2, 0) = el.x_plus;
  m.at(2, 1) = el.y;
  m.at(2, 2) = el.w;
  m.at(2, 3) = std::conj(el.x_minus);
  m.at(3, 0) = el.u;
  m.at(3, 1) = el.x_minus;
  m.at(3, 2) = el.x_minus;
  m.at(3, 3) = el.v_minus;
  return DensityMatrix(std::move(m), {2, 2});
}

CorrelationTensor t_matrix_from_elements(const SymmetricRdm& el) {
  const Complex dx = el.x_plus - el.x_minus;
  CorrelationTensor ct;
  ct.t[0][0] = 2.0 * (el.w + el.u.real());
  ct.t[0][1] = 2.0 * el.u.imag();
  ct.t[0][2] = 2.0 * dx.real();
  ct.t[1][0] = 2.0 * el.u.imag();
  ct.t[1][1] = 2.0 * (el.w - el.u.real());
  ct.t[1][2] = 2.0 * dx.imag();
  ct.t[2][0] = 2.0 * dx.real();
  ct.t[2][1] = 2.0 * dx.imag();
  ct.t[2][2] = 1.0 - 4.0 * el.w;
  return ct;
}

std::vector<Complex> dicke_to_computational(const DickeState& psi) {
  const int n = psi.n_qubits();
  if (n > 12) throw std::invalid_argument("dicke_to_computational: N > 12 out of contract");
  const std::size_t dim = std::size_t{1} << n;
  std::vector<Complex> amps(dim);
  for (std::size_t idx = 0; idx < dim; ++idx) {
    // up-spin <-> bit 0, so the number of ups is n minus the popcount
    const int ups = n - std::popcount(idx);
    amps[idx] = psi.coefficients[ups] / std::sqrt(binomial(n, ups));
  }
  return amps;
}

DensityMatrix brute_force_rdm(const DickeState& psi) {
  const auto amps = dicke_to_computational(psi);
  const std::size_t rest = amps.size() >> 2;  // first two qubits are the top bits
  ComplexMatrix m(4, 4);
  for (std::size_t p = 0; p < 4; ++p)
    for (std::size_t q = 0; q < 4; ++q) {
      Complex acc = 0.0;
      for (std::size_t r = 0; r < rest; ++r)
        acc += amps[p * rest + r] * std::conj(amps[q * rest + r]);
      m.at(p, q) = acc;
    }
  return DensityMatrix(std::move(m), {2, 2});
}

Theorem1Result theorem1_check(const DickeState& psi) {
  const double chsh = chsh_value(assemble_rdm(rdm_from_dicke(psi))).value;
  return Theorem1Result{chsh, chsh <= 2.0 + tol::chsh_violation_eps};
}

EigenIdentityResult eigenidentity_check(const DickeState& psi) {
  const SymmetricRdm el = rdm_from_dicke(psi);
  const CorrelationTensor ct = t_matrix_from_elements(el);

  ComplexMatrix t(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t.at(i, j) = ct.t[i][j];
  const auto lam = hermitian_eigenvalues(t);

  EigenIdentityResult res;
  res.lhs = lam[0] * lam[1] + lam[1] * lam[2] + lam[0] * lam[2];
  const double dx2 = std::norm(el.x_plus - el.x_minus);
  res.rhs = 4.0 * (el.w - 3.0 * el.w * el.w - std::norm(el.u) - dx2);
  res.lambda_sum = lam[0] + lam[1] + lam[2];

  res.purity_pair = el.v_plus * el.v_plus + el.v_minus * el.v_minus + 2.0 * std::norm(el.u) +
                    4.0 * (std::norm(el.x_plus) + std::norm(el.x_minus) + el.w * el.w);
  const Complex x_sum = el.x_plus + el.x_minus;
  res.purity_single = (el.v_plus + el.w) * (el.v_plus + el.w) +
                      (el.v_minus + el.w) * (el.v_minus + el.w) + 2.0 * std::norm(x_sum);

  if (std::abs(res.lambda_sum - 1.0) > 1e-10)
    throw std::runtime_error("eigenidentity_check: T-matrix trace drifted from 1");
  if (res.lhs < -1e-10)
    throw std::runtime_error("eigenidentity_check: negative pairwise eigenvalue sum");
  return res;
}

DickeState random_dicke(double j, Rng& rng) {
  const int two_j = half_integer_to_two_j(j, "random_dicke");
  return DickeState(j, gaussian_unit_vector(static_cast<std::size_t>(two_j) + 1, rng));
}

}  // namespace bellmono

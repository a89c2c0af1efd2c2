#pragma once

#include <cmath>
#include <vector>

#include "bellmono/linalg.hpp"
#include "bellmono/rng.hpp"

namespace bellmono::testing {

inline ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  ComplexMatrix m(rows, cols);
  for (auto& z : m.entries) z = rng.complex_normal();
  return m;
}

inline ComplexMatrix random_hermitian(std::size_t n, Rng& rng) {
  const ComplexMatrix g = random_matrix(n, n, rng);
  return scale(add(g, dagger(g)), 0.5);
}

inline StateVector random_state(const std::vector<std::size_t>& dims, Rng& rng) {
  std::size_t dim = 1;
  for (std::size_t d : dims) dim *= d;
  return StateVector(gaussian_unit_vector(dim, rng), dims);
}

// Mixed 2-qubit state as the marginal of a Haar-random pure 4-qubit state
// (induced measure).
inline DensityMatrix random_two_qubit_mixed(Rng& rng) {
  const StateVector psi = random_state({2, 2, 2, 2}, rng);
  DensityMatrix reduced = partial_trace(outer(psi), {0, 1});
  return reduced;
}

inline StateVector bell_phi_plus() {
  const double s = 1.0 / std::sqrt(2.0);
  return StateVector({s, 0.0, 0.0, s}, {2, 2});
}

// p |Phi+><Phi+| + (1-p) I/4
inline DensityMatrix werner(double p) {
  const DensityMatrix bell = outer(bell_phi_plus());
  ComplexMatrix m = scale(bell.matrix, p);
  for (std::size_t i = 0; i < 4; ++i) m.at(i, i) += (1.0 - p) / 4.0;
  return DensityMatrix(std::move(m), {2, 2});
}

inline DensityMatrix maximally_mixed(std::size_t dim, std::vector<std::size_t> dims) {
  return DensityMatrix(scale(ComplexMatrix::identity(dim), 1.0 / static_cast<double>(dim)),
                       std::move(dims));
}

// (|00...0> + |11...1>)/sqrt(2) over n qudits of local dimension d
inline StateVector ghz(std::size_t n, std::size_t d) {
  std::size_t dim = 1;
  for (std::size_t i = 0; i < n; ++i) dim *= d;
  std::vector<Complex> amps(dim);
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  // diagonal kets |kk...k>
  for (std::size_t k = 0; k < d; ++k) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i) idx = idx * d + k;
    amps[idx] = s;
  }
  return StateVector(std::move(amps), std::vector<std::size_t>(n, d));
}

// (|00> + gamma |11> + |22>)/sqrt(2 + gamma^2)
inline StateVector qutrit_gamma_pair(double gamma) {
  std::vector<Complex> amps(9);
  const double norm = std::sqrt(2.0 + gamma * gamma);
  amps[0] = 1.0 / norm;
  amps[4] = gamma / norm;
  amps[8] = 1.0 / norm;
  return StateVector(std::move(amps), {3, 3});
}

}  // namespace bellmono::testing

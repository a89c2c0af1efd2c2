#pragma once

#include <array>
#include <cstdint>

#include "bellmono/linalg.hpp"

namespace bellmono {

// The 12 measurement phases: phi[k][j] for the A side, varphi[l][j] for
// the B side, k,l in {0,1} <-> settings 1,2 and j in {0,1,2}.
struct AngleSet {
  std::array<std::array<double, 3>, 2> phi{};
  std::array<std::array<double, 3>, 2> varphi{};

  // Reduce every angle into [0, 2*pi).
  AngleSet canonical() const;
};

struct MeasurementOperators {
  ComplexMatrix a1, a2, b1, b2;
};

// p[m][n][a][b] = P(A_m = a, B_n = b) for settings m,n in {0,1} and
// outcomes a,b in {0,1,2}.
struct OutcomeDistribution {
  std::array<std::array<std::array<std::array<double, 3>, 3>, 2>, 2> p{};
};

struct CglmpReport {
  double value = 0.0;
  AngleSet best_angles{};
  int restarts_used = 0;
  long evaluations = 0;
};

// 3-dimensional discrete Fourier transform, F[a][b] = exp(2 pi i ab/3)/sqrt(3).
const ComplexMatrix& fourier3();

// A_k = F U(phi_k), B_l = conj(F) U(varphi_l), with U(phi) the diagonal
// phase matrix diag(exp(-i phi(j))). All four outputs are unitary.
MeasurementOperators measurement_operators(const AngleSet& angles);

// All 36 joint outcome probabilities of a 2-qutrit state under the four
// setting pairs; projective measurement in the computational basis after
// the unitaries above. Entries are validated to be probabilities and to
// sum to 1 per setting pair.
OutcomeDistribution outcome_distribution(const DensityMatrix& rho, const AngleSet& angles);

// The three-outcome Bell combination: four coincidence sums minus four
// shifted-coincidence sums, with all outcome shifts taken mod 3.
double i3_value(const DensityMatrix& rho, const AngleSet& angles);
double i3_value(const OutcomeDistribution& dist);

// Multi-start maximization of i3_value over the 12 angles. Deterministic
// per (input, seed): restart r draws from derive_seed(seed, r) and ties
// keep the lowest restart index. The result is a lower-bound estimate of
// the CGLMP maximum within this measurement family.
CglmpReport cglmp_max(const DensityMatrix& rho, int restarts, std::uint64_t seed,
                      double tolerance = 1e-8);

}  // namespace bellmono

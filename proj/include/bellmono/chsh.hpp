#pragma once

#include <array>
#include <cstdint>

#include "bellmono/linalg.hpp"

namespace bellmono {

// Pauli matrix; index 1 = sigma_x, 2 = sigma_y, 3 = sigma_z.
const ComplexMatrix& pauli(int index);

// t[i][j] = tr(rho sigma_{i+1} x sigma_{j+1}); every entry lies in [-1, 1].
struct CorrelationTensor {
  std::array<std::array<double, 3>, 3> t{};
};

struct ChshReport {
  double value = 0.0;                          // CHSH correlation B(rho)
  bool violates = false;                       // value > 2, strict; callers apply eps
  std::array<double, 3> eigenvalues_u{};       // spectrum of U = T^t T, descending
};

// Bloch directions of the four dichotomic observables A = a.sigma etc.
struct MeasurementFrame {
  std::array<double, 3> a{}, a_prime{}, b{}, b_prime{};
};

struct ChenReport {
  bool extendible = false;
  double lhs = 0.0;  // tr(rho_B^2)
  double rhs = 0.0;  // tr(rho_AB^2) - 4 sqrt(det rho_AB)
};

enum class QubitVerdict {
  NoSymmetricExtension_BellViolation,
  Extendible_ChenCriterion,
  NotExtendible_ChenCriterion,
};

const char* to_string(QubitVerdict v);

struct ChshMonogamyResult {
  std::array<ChshReport, 3> values{};  // AB, BC, AC
  int violations = 0;                  // count of values above 2 + eps
};

// All nine Pauli-Pauli expectation values of a 2-qubit state.
CorrelationTensor correlation_tensor(const DensityMatrix& rho);

// Closed-form CHSH maximum 2 sqrt(u + v) from the two largest eigenvalues
// of U = T^t T.
ChshReport chsh_value(const DensityMatrix& rho);

// Multi-start maximization of tr(rho (AxB + AxB' + A'xB - A'xB')) over
// Bloch-parametrized frames. Deterministic per (input, seed); restart i
// draws its stream from derive_seed(seed, i). A lower bound on chsh_value
// up to optimizer tolerance.
double chsh_direct(const DensityMatrix& rho, int restarts, std::uint64_t seed);

// Best frame found by the same search; exposed for diagnostics.
MeasurementFrame chsh_direct_frame(const DensityMatrix& rho, int restarts, std::uint64_t seed,
                                   double* best_value = nullptr);

// Symmetric-extendibility test for 2-qubit states:
// tr(rho_B^2) >= tr(rho_AB^2) - 4 sqrt(det rho_AB), with rho_B = tr_A rho.
ChenReport chen_criterion(const DensityMatrix& rho);

// CHSH values of all three bipartite reduced states of a 3-qubit state.
ChshMonogamyResult chsh_monogamy_check(const DensityMatrix& rho);

QubitVerdict nonextendibility_verdict_qubit(const DensityMatrix& rho);

}  // namespace bellmono

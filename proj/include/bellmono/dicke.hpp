#pragma once

#include "bellmono/chsh.hpp"
#include "bellmono/linalg.hpp"
#include "bellmono/rng.hpp"

namespace bellmono {

// Symmetric N-qubit pure state written in the |j,m> basis, m = -j..j
// ascending, with j = N/2. Coefficient index i corresponds to m = -j + i,
// i.e. to i spins up (computational |0>).
struct DickeState {
  int two_j = 0;
  std::vector<Complex> coefficients;

  DickeState(double j, std::vector<Complex> coeffs);
  double j() const { return 0.5 * two_j; }
  int n_qubits() const { return two_j; }
};

// Angular momentum matrices in the |j,m> basis, m ascending (row 0 <-> m=-j).
struct CollectiveSpinOps {
  std::size_t dim = 0;
  ComplexMatrix jz, jplus, jminus, jx, jy;
};

// Matrix elements of the pair-exchange-symmetric 2-qubit reduced state in
// the basis {|00>,|01>,|10>,|11>}. y equals w for states reduced from a
// symmetric pure state.
struct SymmetricRdm {
  double v_plus = 0.0, v_minus = 0.0, w = 0.0, y = 0.0;
  Complex x_plus{}, x_minus{}, u{};
};

struct Theorem1Result {
  double chsh = 0.0;
  bool passed = false;  // chsh <= 2 + eps
};

// Sum of pairwise eigenvalue products of the correlation T-matrix, two
// ways, plus the unit-trace sum and the two purities entering the
// extendibility chain.
struct EigenIdentityResult {
  double lhs = 0.0;         // lambda1 lambda2 + lambda2 lambda3 + lambda1 lambda3
  double rhs = 0.0;         // 4 (w - 3w^2 - |u|^2 - |x+ - x-|^2)
  double lambda_sum = 0.0;  // must equal 1 (unit trace of T)
  double purity_single = 0.0;
  double purity_pair = 0.0;
};

// Ladder construction; rejects j that is not a non-negative half-integer
// or is below 1/2.
CollectiveSpinOps collective_ops(double j);

// Closed-form 2-qubit reduced state from collective expectation values
// <Jz>, <Jz^2>, <J+>, <[J+,Jz]_+>, <J+^2>.
SymmetricRdm rdm_from_dicke(const DickeState& psi);

// The 4x4 density matrix the element set describes.
DensityMatrix assemble_rdm(const SymmetricRdm& el);

// Correlation T-matrix assembled directly from the element set; an
// independent route to correlation_tensor(assemble_rdm(el)).
CorrelationTensor t_matrix_from_elements(const SymmetricRdm& el);

// Expansion of |j,m> into the 2^N computational basis: every string with
// (j+m) up-spins (up = |0>), weight binom(N, j+m)^{-1/2}, qubit 0 as the
// most significant position.
std::vector<Complex> dicke_to_computational(const DickeState& psi);

// Oracle route: expand to 2^N, trace down to the first two qubits.
// Capped at N = 12 (4096-dim expansion).
DensityMatrix brute_force_rdm(const DickeState& psi);

Theorem1Result theorem1_check(const DickeState& psi);

// Throws if the unit-trace sum or the non-negativity of lhs fails beyond
// 1e-10; both are guaranteed for valid inputs.
EigenIdentityResult eigenidentity_check(const DickeState& psi);

// Coefficients i.i.d. standard complex normal, then normalized: uniform
// on the sphere of the (2j+1)-dim symmetric subspace.
DickeState random_dicke(double j, Rng& rng);

}  // namespace bellmono

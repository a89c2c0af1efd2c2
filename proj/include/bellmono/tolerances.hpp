#pragma once

// Central numerical tolerances. Library code and tests both read these,
// so a bound changed here changes everywhere at once.
namespace bellmono::tol {

inline constexpr double hermiticity_input = 1e-10;    // eigensolver input gate
inline constexpr double density_hermiticity = 1e-12;  // max |M - M^dag|, elementwise
inline constexpr double unit_trace = 1e-12;
inline constexpr double psd_floor = -1e-10;           // smallest admissible eigenvalue
inline constexpr double unit_norm = 1e-12;
inline constexpr double jacobi_offdiag = 1e-13;       // off-diagonal Frobenius target
inline constexpr int jacobi_max_sweeps = 100;

inline constexpr double chsh_violation_eps = 1e-9;    // value > 2 + eps counts as violation
inline constexpr double cglmp_violation_eps = 1e-6;   // wider band: optimizer noise > 1e-9
inline constexpr double chen_slack = 1e-10;           // extendible iff lhs >= rhs - slack
inline constexpr double det_clamp = 1e-12;            // clamp band for det(rho) before sqrt

}  // namespace bellmono::tol

#include "bellmono/chsh.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "bellmono/neldermead.hpp"
#include "bellmono/rng.hpp"
#include "bellmono/tolerances.hpp"

namespace bellmono {

namespace {

void require_two_qubit(const DensityMatrix& rho, const char* who) {
  if (rho.dim != 4 || rho.subsystem_dims != std::vector<std::size_t>{2, 2})
    throw std::invalid_argument(std::string(who) + ": expected a 2x2-subsystem state of dim 4");
}

// n.sigma for a unit Bloch vector given by polar angles.
ComplexMatrix bloch_observable(double theta, double phi) {
  const double st = std::sin(theta), ct = std::cos(theta);
  ComplexMatrix m(2, 2);
  m.at(0, 0) = ct;
  m.at(0, 1) = Complex{st * std::cos(phi), -st * std::sin(phi)};
  m.at(1, 0) = Complex{st * std::cos(phi), st * std::sin(phi)};
  m.at(1, 1) = -ct;
  return m;
}

std::array<double, 3> bloch_vector(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

}  // namespace

const ComplexMatrix& pauli(int index) {
  static const ComplexMatrix sx = ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
  static const ComplexMatrix sy =
      ComplexMatrix::from_rows({{0.0, Complex{0.0, -1.0}}, {Complex{0.0, 1.0}, 0.0}});
  static const ComplexMatrix sz = ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}});
  switch (index) {
    case 1: return sx;
    case 2: return sy;
    case 3: return sz;
    default: throw std::invalid_argument("pauli: index must be 1, 2, or 3");
  }
}

CorrelationTensor correlation_tensor(const DensityMatrix& rho) {
  require_two_qubit(rho, "correlation_tensor");
  CorrelationTensor out;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      const Complex v = trace(matmul(rho.matrix, tensor(pauli(i), pauli(j))));
      out.t[i - 1][j - 1] = v.real();  // imaginary part is round-off for Hermitian rho
    }
  return out;
}

ChshReport chsh_value(const DensityMatrix& rho) {
  const CorrelationTensor ct = correlation_tensor(rho);
  ComplexMatrix u(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += ct.t[k][i] * ct.t[k][j];
      u.at(i, j) = s;
    }
  const auto eig = hermitian_eigenvalues(u);  // ascending
  ChshReport report;
  report.eigenvalues_u = {eig[2], eig[1], eig[0]};
  const double uv = std::max(0.0, eig[2] + eig[1]);
  report.value = 2.0 * std::sqrt(uv);
  report.violates = report.value > 2.0;
  return report;
}

MeasurementFrame chsh_direct_frame(const DensityMatrix& rho, int restarts, std::uint64_t seed,
                                   double* best_value) {
  require_two_qubit(rho, "chsh_direct");
  if (restarts < 1) throw std::invalid_argument("chsh_direct: restarts must be >= 1");

  // x = (theta, phi) for each of A, A', B, B'.
  auto objective = [&rho](std::span<const double> x) {
    const ComplexMatrix a = bloch_observable(x[0], x[1]);
    const ComplexMatrix ap = bloch_observable(x[2], x[3]);
    const ComplexMatrix b = bloch_observable(x[4], x[5]);
    const ComplexMatrix bp = bloch_observable(x[6], x[7]);
    const ComplexMatrix bell =
        sub(add(add(tensor(a, b), tensor(a, bp)), tensor(ap, b)), tensor(ap, bp));
    return -trace(matmul(rho.matrix, bell)).real();
  };

  NelderMeadOptions opts;
  opts.max_iterations = 2500;
  opts.tolerance = 1e-12;
  opts.initial_step = 0.7;

  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> best_x(8, 0.0);
  for (int r = 0; r < restarts; ++r) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    std::vector<double> start(8);
    for (int v = 0; v < 4; ++v) {
      start[2 * v] = rng.uniform(kPi);
      start[2 * v + 1] = rng.uniform(2.0 * kPi);
    }
    const auto res = nelder_mead_minimize(objective, std::move(start), opts);
    if (-res.value > best) {
      best = -res.value;
      best_x = res.x;
    }
  }

  if (best_value) *best_value = best;
  MeasurementFrame frame;
  frame.a = bloch_vector(best_x[0], best_x[1]);
  frame.a_prime = bloch_vector(best_x[2], best_x[3]);
  frame.b = bloch_vector(best_x[4], best_x[5]);
  frame.b_prime = bloch_vector(best_x[6], best_x[7]);
  return frame;
}

double chsh_direct(const DensityMatrix& rho, int restarts, std::uint64_t seed) {
  double best = 0.0;
  chsh_direct_frame(rho, restarts, seed, &best);
  return best;
}

ChenReport chen_criterion(const DensityMatrix& rho) {
  require_two_qubit(rho, "chen_criterion");
  const DensityMatrix rho_b = partial_trace(rho, {1});
  ChenReport report;
  report.lhs = purity(rho_b);
  double det = determinant(rho.matrix).real();
  if (det < -tol::det_clamp)
    throw std::invalid_argument("chen_criterion: det(rho) < 0 beyond clamp band");
  if (det < 0.0) det = 0.0;  // rank-deficient states land at exact zero up to round-off
  report.rhs = purity(rho) - 4.0 * std::sqrt(det);
  report.extendible = report.lhs >= report.rhs - tol::chen_slack;
  return report;
}

ChshMonogamyResult chsh_monogamy_check(const DensityMatrix& rho) {
  if (rho.dim != 8 || rho.subsystem_dims != std::vector<std::size_t>{2, 2, 2})
    throw std::invalid_argument("chsh_monogamy_check: expected a 3-qubit state of dim 8");
  ChshMonogamyResult out;
  out.values[0] = chsh_value(partial_trace(rho, {0, 1}));
  out.values[1] = chsh_value(partial_trace(rho, {1, 2}));
  out.values[2] = chsh_value(partial_trace(rho, {0, 2}));
  for (const auto& rep : out.values)
    if (rep.value > 2.0 + tol::chsh_violation_eps) ++out.violations;
  return out;
}

QubitVerdict nonextendibility_verdict_qubit(const DensityMatrix& rho) {
  if (chsh_value(rho).value > 2.0 + tol::chsh_violation_eps)
    return QubitVerdict::NoSymmetricExtension_BellViolation;
  return chen_criterion(rho).extendible ? QubitVerdict::Extendible_ChenCriterion
                                        : QubitVerdict::NotExtendible_ChenCriterion;
}

const char* to_string(QubitVerdict v) {
  switch (v) {
    case QubitVerdict::NoSymmetricExtension_BellViolation:
      return "NoSymmetricExtension_BellViolation";
    case QubitVerdict::Extendible_ChenCriterion: return "Extendible_ChenCriterion";
    case QubitVerdict::NotExtendible_ChenCriterion: return "NotExtendible_ChenCriterion";
  }
  return "UnknownVerdict";
}

}  // namespace bellmono

#include "bellmono/cglmp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "bellmono/neldermead.hpp"
#include "bellmono/rng.hpp"
#include "bellmono/tolerances.hpp"

namespace bellmono {

namespace {

void require_two_qutrit(const DensityMatrix& rho, const char* who) {
  if (rho.dim != 9 || rho.subsystem_dims != std::vector<std::size_t>{3, 3})
    throw std::invalid_argument(std::string(who) + ": expected a 3x3-subsystem state of dim 9");
}

double wrap_angle(double a) {
  const double two_pi = 2.0 * kPi;
  double r = std::fmod(a, two_pi);
  if (r < 0.0) r += two_pi;
  return r;
}

ComplexMatrix phase_diagonal(const std::array<double, 3>& phi) {
  ComplexMatrix u(3, 3);
  for (int j = 0; j < 3; ++j) u.at(j, j) = Complex{std::cos(phi[j]), -std::sin(phi[j])};
  return u;
}

// Raw probability table straight from the quadratic forms; validation is
// layered on top in outcome_distribution.
OutcomeDistribution joint_probabilities(const DensityMatrix& rho, const AngleSet& angles) {
  const MeasurementOperators ops = measurement_operators(angles);
  const ComplexMatrix* a_ops[2] = {&ops.a1, &ops.a2};
  const ComplexMatrix* b_ops[2] = {&ops.b1, &ops.b2};

  OutcomeDistribution dist;
  for (int n = 0; n < 2; ++n) {
    const ComplexMatrix& bn = *b_ops[n];
    for (int b = 0; b < 3; ++b) {
      // Contract the B side first: K[i][k] = sum_{j,l} B[b][j] conj(B[b][l]) rho[3i+j][3k+l]
      Complex k_mat[3][3];
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) {
          Complex acc = 0.0;
          for (int j = 0; j < 3; ++j)
            for (int l = 0; l < 3; ++l)
              acc += bn.at(b, j) * std::conj(bn.at(b, l)) * rho.matrix.at(3 * i + j, 3 * k + l);
          k_mat[i][k] = acc;
        }
      for (int m = 0; m < 2; ++m) {
        const ComplexMatrix& am = *a_ops[m];
        for (int a = 0; a < 3; ++a) {
          Complex acc = 0.0;
          for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k)
              acc += am.at(a, i) * std::conj(am.at(a, k)) * k_mat[i][k];
          dist.p[m][n][a][b] = acc.real();
        }
      }
    }
  }
  return dist;
}

}  // namespace

AngleSet AngleSet::canonical() const {
  AngleSet out = *this;
  for (auto& row : out.phi)
    for (double& a : row) a = wrap_angle(a);
  for (auto& row : out.varphi)
    for (double& a : row) a = wrap_angle(a);
  return out;
}

const ComplexMatrix& fourier3() {
  static const ComplexMatrix f = [] {
    ComplexMatrix m(3, 3);
    const double s = 1.0 / std::sqrt(3.0);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        const double arg = 2.0 * kPi * a * b / 3.0;
        m.at(a, b) = Complex{s * std::cos(arg), s * std::sin(arg)};
      }
    return m;
  }();
  return f;
}

MeasurementOperators measurement_operators(const AngleSet& angles) {
  const ComplexMatrix& f = fourier3();
  const ComplexMatrix f_conj = conjugate(f);
  return MeasurementOperators{
      matmul(f, phase_diagonal(angles.phi[0])),
      matmul(f, phase_diagonal(angles.phi[1])),
      matmul(f_conj, phase_diagonal(angles.varphi[0])),
      matmul(f_conj, phase_diagonal(angles.varphi[1])),
  };
}

OutcomeDistribution outcome_distribution(const DensityMatrix& rho, const AngleSet& angles) {
  require_two_qutrit(rho, "outcome_distribution");
  OutcomeDistribution dist = joint_probabilities(rho, angles);
  for (int m = 0; m < 2; ++m)
    for (int n = 0; n < 2; ++n) {
      double sum = 0.0;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          const double p = dist.p[m][n][a][b];
          if (p < -1e-12 || p > 1.0 + 1e-12)
            throw std::runtime_error("outcome_distribution: entry outside [0, 1]");
          sum += p;
        }
      if (std::abs(sum - 1.0) > 1e-10)
        throw std::runtime_error("outcome_distribution: probabilities do not sum to 1");
    }
  return dist;
}

double i3_value(const OutcomeDistribution& d) {
  double value = 0.0;
  for (int j = 0; j < 3; ++j) {
    const int j1 = (j + 1) % 3;
    value += d.p[0][0][j][j] + d.p[1][0][j][j1] + d.p[1][1][j][j] + d.p[0][1][j][j];
    value -= d.p[0][0][j][j1] + d.p[1][0][j][j] + d.p[1][1][j][j1] + d.p[0][1][j1][j];
  }
  return value;
}

double i3_value(const DensityMatrix& rho, const AngleSet& angles) {
  require_two_qutrit(rho, "i3_value");
  return i3_value(joint_probabilities(rho, angles));
}

CglmpReport cglmp_max(const DensityMatrix& rho, int restarts, std::uint64_t seed,
                      double tolerance) {
  require_two_qutrit(rho, "cglmp_max");
  if (restarts < 1) throw std::invalid_argument("cglmp_max: restarts must be >= 1");
  if (!(tolerance > 0.0)) throw std::invalid_argument("cglmp_max: tolerance must be > 0");

  auto unpack = [](std::span<const double> x) {
    AngleSet angles;
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 3; ++j) {
        angles.phi[k][j] = wrap_angle(x[3 * k + j]);
        angles.varphi[k][j] = wrap_angle(x[6 + 3 * k + j]);
      }
    return angles;
  };
  auto objective = [&rho, &unpack](std::span<const double> x) {
    return -i3_value(rho, unpack(x));
  };

  NelderMeadOptions opts;
  opts.max_iterations = 4000;
  opts.tolerance = tolerance;
  opts.initial_step = 0.8;

  CglmpReport report;
  report.value = -std::numeric_limits<double>::infinity();
  report.restarts_used = restarts;
  for (int r = 0; r < restarts; ++r) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    std::vector<double> start(12);
    for (double& a : start) a = rng.uniform(2.0 * kPi);
    const auto res = nelder_mead_minimize(objective, std::move(start), opts);
    report.evaluations += res.evaluations;
    if (-res.value > report.value) {
      report.value = -res.value;
      report.best_angles = unpack(res.x);
    }
  }
  return report;
}

}  // namespace bellmono

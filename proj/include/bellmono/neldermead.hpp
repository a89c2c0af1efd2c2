#pragma once

#include <functional>
#include <span>
#include <vector>

namespace bellmono {

struct NelderMeadOptions {
  int max_iterations = 4000;
  double tolerance = 1e-10;   // stop when |f_worst - f_best| <= tolerance
  double initial_step = 0.5;  // per-coordinate offset of the start simplex
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  long evaluations = 0;
};

// Downhill simplex minimization (reflection 1, expansion 2, contraction
// 0.5, shrink 0.5). Derivative-free; all objectives in this project are
// smooth trigonometric landscapes where this converges quickly.
NelderMeadResult nelder_mead_minimize(const std::function<double(std::span<const double>)>& f,
                                      std::vector<double> start,
                                      const NelderMeadOptions& options = {});

}  // namespace bellmono

#include "bellmono/neldermead.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bellmono {

NelderMeadResult nelder_mead_minimize(const std::function<double(std::span<const double>)>& f,
                                      std::vector<double> start,
                                      const NelderMeadOptions& options) {
  const std::size_t n = start.size();
  if (n == 0) throw std::invalid_argument("nelder_mead_minimize: empty start point");

  long evaluations = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evaluations;
    return f(std::span<const double>(x.data(), x.size()));
  };

  std::vector<std::vector<double>> x(n + 1, start);
  for (std::size_t i = 0; i < n; ++i) x[i + 1][i] += options.initial_step;
  std::vector<double> fx(n + 1);
  for (std::size_t v = 0; v <= n; ++v) fx[v] = eval(x[v]);

  auto order = [&]() {
    std::vector<std::size_t> idx(n + 1);
    for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
    std::vector<std::vector<double>> x2(n + 1);
    std::vector<double> f2(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      x2[i] = x[idx[i]];
      f2[i] = fx[idx[i]];
    }
    x.swap(x2);
    fx.swap(f2);
  };

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    order();
    if (std::abs(fx[n] - fx[0]) <= options.tolerance) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t i = 0; i < n; ++i) centroid[i] += x[v][i];
    for (double& c : centroid) c /= static_cast<double>(n);

    std::vector<double> xr(n);
    for (std::size_t i = 0; i < n; ++i) xr[i] = centroid[i] + (centroid[i] - x[n][i]);
    const double fr = eval(xr);

    if (fr < fx[0]) {
      std::vector<double> xe(n);
      for (std::size_t i = 0; i < n; ++i) xe[i] = centroid[i] + 2.0 * (xr[i] - centroid[i]);
      const double fe = eval(xe);
      if (fe < fr) {
        x[n] = std::move(xe);
        fx[n] = fe;
      } else {
        x[n] = std::move(xr);
        fx[n] = fr;
      }
    } else if (fr < fx[n - 1]) {
      x[n] = std::move(xr);
      fx[n] = fr;
    } else {
      const bool outside = fr < fx[n];
      std::vector<double> xc(n);
      if (outside) {
        for (std::size_t i = 0; i < n; ++i) xc[i] = centroid[i] + 0.5 * (xr[i] - centroid[i]);
      } else {
        for (std::size_t i = 0; i < n; ++i) xc[i] = centroid[i] + 0.5 * (x[n][i] - centroid[i]);
      }
      const double fc = eval(xc);
      if (fc < (outside ? fr : fx[n])) {
        x[n] = std::move(xc);
        fx[n] = fc;
      } else {
        for (std::size_t v = 1; v <= n; ++v) {
          for (std::size_t i = 0; i < n; ++i) x[v][i] = x[0][i] + 0.5 * (x[v][i] - x[0][i]);
          fx[v] = eval(x[v]);
        }
      }
    }
  }

  order();
  return NelderMeadResult{std::move(x[0]), fx[0], evaluations};
}

}  // namespace bellmono

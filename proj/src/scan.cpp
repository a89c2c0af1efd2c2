#include "bellmono/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "bellmono/rng.hpp"
#include "bellmono/tolerances.hpp"

namespace bellmono {

namespace {

// Runs work(0..n-1) on a small worker pool and calls emit(i) in strict
// index order as the completed prefix grows. The first exception thrown
// by a work item is rethrown in the caller after the pool drains.
void ordered_parallel_for(std::size_t n, const std::function<void(std::size_t)>& work,
                          const std::function<void(std::size_t)>& emit) {
  const unsigned threads = std::min<std::size_t>(scan_thread_count(), std::max<std::size_t>(n, 1));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::vector<char> done(n, 0);
  std::size_t flushed = 0;
  std::mutex flush_mutex;

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n || failed.load()) return;
      try {
        work(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(flush_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
        return;
      }
      std::lock_guard<std::mutex> lock(flush_mutex);
      done[i] = 1;
      while (flushed < n && done[flushed]) {
        if (emit) emit(flushed);
        ++flushed;
      }
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);
}

int classify_violations(double b_ab, double b_bc, double b_ac) {
  int count = 0;
  for (double b : {b_ab, b_bc, b_ac})
    if (b > 2.0 + tol::cglmp_violation_eps) ++count;
  return count;
}

double second_largest(double a, double b, double c) {
  double lo = std::min({a, b, c});
  double hi = std::max({a, b, c});
  return a + b + c - lo - hi;
}

std::size_t ket_index(int a, int b, int c) { return static_cast<std::size_t>(9 * a + 3 * b + c); }

}  // namespace

unsigned scan_thread_count() {
  if (const char* env = std::getenv("BELLMONO_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

StateVector random_3qutrit(std::uint64_t seed, std::size_t index) {
  Rng rng(derive_seed(seed, index));
  return StateVector(gaussian_unit_vector(27, rng), {3, 3, 3});
}

std::array<DensityMatrix, 3> rdm_triple(const StateVector& psi) {
  if (psi.dim != 27 || psi.subsystem_dims != std::vector<std::size_t>{3, 3, 3})
    throw std::invalid_argument("rdm_triple: expected a 3-qutrit pure state");
  const DensityMatrix rho = outer(psi);
  return {partial_trace(rho, {0, 1}), partial_trace(rho, {1, 2}), partial_trace(rho, {0, 2})};
}

ScanResult monogamy_scan(std::size_t n_states, std::uint64_t seed, int restarts,
                         const std::function<void(const ScanRecord&)>& on_record) {
  if (n_states < 1) throw std::invalid_argument("monogamy_scan: n_states must be >= 1");
  if (restarts < 1) throw std::invalid_argument("monogamy_scan: restarts must be >= 1");

  ScanResult result;
  result.records.resize(n_states);
  std::mutex counter_mutex;

  auto work = [&](std::size_t i) {
    const StateVector psi = random_3qutrit(seed, i);
    const auto rdms = rdm_triple(psi);
    const std::uint64_t state_stream = derive_seed(seed, i);
    double b[3];
    for (int k = 0; k < 3; ++k)
      b[k] = cglmp_max(rdms[k], restarts, derive_seed(state_stream, 1000 + k)).value;

    ScanRecord rec;
    rec.index = i;
    rec.seed = seed;
    rec.b_ab = b[0];
    rec.b_bc = b[1];
    rec.b_ac = b[2];
    rec.violations = classify_violations(b[0], b[1], b[2]);
    rec.double_violation = rec.violations >= 2;
    result.records[i] = rec;

    if (rec.double_violation) {
      std::lock_guard<std::mutex> lock(counter_mutex);
      result.counterexamples.push_back(Counterexample{i, seed, psi.amplitudes});
    }
  };
  auto emit = [&](std::size_t i) {
    if (on_record) on_record(result.records[i]);
  };
  ordered_parallel_for(n_states, work, on_record ? emit : std::function<void(std::size_t)>{});

  for (const auto& rec : result.records) {
    result.summary.max_second_largest =
        std::max(result.summary.max_second_largest, second_largest(rec.b_ab, rec.b_bc, rec.b_ac));
    if (rec.double_violation) ++result.summary.double_violations;
  }
  std::sort(result.counterexamples.begin(), result.counterexamples.end(),
            [](const Counterexample& a, const Counterexample& b) { return a.index < b.index; });
  return result;
}

StateVector gamma_state(const GammaFamily& family) {
  const double g = family.gamma;
  if (!std::isfinite(g)) throw std::invalid_argument("gamma_state: gamma must be finite");
  std::vector<Complex> amps(27, Complex{});

  using Ket = std::array<int, 3>;
  auto place = [&amps](std::initializer_list<Ket> kets, double coeff) {
    for (const Ket& k : kets) amps[ket_index(k[0], k[1], k[2])] += coeff;
  };

  if (family.family_id == GammaFamilyId::psi1) {
    place({{0, 0, 0}, {0, 0, 1}, {0, 0, 2}, {1, 1, 0}, {1, 1, 1}, {1, 1, 2}, {2, 2, 1},
           {2, 2, 2}},
          1.0);
    // |112> appears in both groups and picks up 1 + gamma
    place({{0, 1, 0}, {0, 2, 0}, {1, 1, 2}, {1, 0, 1}, {1, 2, 1}, {2, 1, 2}}, g);
  } else {
    const double c1_denom = 10.0 * g + 0.01;
    if (std::abs(c1_denom) < 1e-12)
      throw std::invalid_argument("gamma_state: psi2 has a c1 pole at gamma = -0.001");
    const double c1 = 1.0 / c1_denom;
    const double c2 = -3.0 * g * (g - 1.4) * std::exp(-g);
    const double c3 = g * (g - 1.0);
    place({{0, 0, 0}, {1, 1, 1}, {2, 2, 2}}, 1.0);
    place({{0, 0, 1}, {0, 0, 2}, {1, 1, 0}, {1, 1, 2}, {2, 2, 0}, {2, 2, 1}}, c1);
    place({{1, 0, 0}, {2, 0, 0}, {0, 1, 1}, {2, 1, 1}, {0, 2, 2}, {1, 2, 2}}, c2);
    place({{0, 1, 0}, {0, 2, 0}, {1, 0, 1}, {1, 2, 1}, {2, 0, 2}, {2, 1, 2}}, c3);
  }

  double norm_sq = 0.0;
  for (const auto& a : amps) norm_sq += std::norm(a);
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (auto& a : amps) a *= inv;
  return StateVector(std::move(amps), {3, 3, 3});
}

std::vector<SweepPoint> gamma_sweep(GammaFamilyId family, std::span<const double> gamma_grid,
                                    int restarts, std::uint64_t seed) {
  if (gamma_grid.empty()) throw std::invalid_argument("gamma_sweep: empty gamma grid");
  std::vector<SweepPoint> points(gamma_grid.size());
  auto work = [&](std::size_t i) {
    const StateVector psi = gamma_state(GammaFamily{family, gamma_grid[i]});
    const auto rdms = rdm_triple(psi);
    const std::uint64_t point_stream = derive_seed(seed, i);
    SweepPoint pt;
    pt.gamma = gamma_grid[i];
    pt.b_ab = cglmp_max(rdms[0], restarts, derive_seed(point_stream, 1000)).value;
    pt.b_bc = cglmp_max(rdms[1], restarts, derive_seed(point_stream, 1001)).value;
    pt.b_ac = cglmp_max(rdms[2], restarts, derive_seed(point_stream, 1002)).value;
    points[i] = pt;
  };
  ordered_parallel_for(gamma_grid.size(), work, {});
  return points;
}

QutritVerdict nonextendibility_verdict_qutrit(const DensityMatrix& rho, int restarts,
                                              std::uint64_t seed) {
  if (rho.dim != 9 || rho.subsystem_dims != std::vector<std::size_t>{3, 3})
    throw std::invalid_argument("nonextendibility_verdict_qutrit: expected a 2-qutrit state");
  const double value = cglmp_max(rho, restarts, seed).value;
  return value > 2.0 + tol::cglmp_violation_eps
             ? QutritVerdict::NoSymmetricExtension_ConjecturalBellViolation
             : QutritVerdict::Inconclusive;
}

const char* to_string(QutritVerdict v) {
  switch (v) {
    case QutritVerdict::NoSymmetricExtension_ConjecturalBellViolation:
      return "NoSymmetricExtension_ConjecturalBellViolation";
    case QutritVerdict::Inconclusive: return "Inconclusive";
  }
  return "UnknownVerdict";
}

const char* to_string(GammaFamilyId id) {
  return id == GammaFamilyId::psi1 ? "psi1" : "psi2";
}

GammaFamilyId gamma_family_from_string(const std::string& name) {
  if (name == "psi1") return GammaFamilyId::psi1;
  if (name == "psi2") return GammaFamilyId::psi2;
  throw std::invalid_argument("unknown gamma family: " + name);
}

}  // namespace bellmono

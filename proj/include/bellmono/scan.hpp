#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "bellmono/cglmp.hpp"
#include "bellmono/linalg.hpp"

namespace bellmono {

// Per-state result of the monogamy scan: CGLMP maxima of the three
// 2-qutrit reduced states plus the violation verdicts. (seed, index)
// reproduces the state exactly via random_3qutrit.
struct ScanRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  double b_ab = 0.0, b_bc = 0.0, b_ac = 0.0;
  int violations = 0;
  bool double_violation = false;
};

struct ScanSummary {
  double max_second_largest = 0.0;
  std::size_t double_violations = 0;
};

// A state breaking the monogamy pattern is the most important possible
// output of a scan; it is kept with full provenance, never dropped.
struct Counterexample {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::vector<Complex> amplitudes;
};

struct ScanResult {
  std::vector<ScanRecord> records;
  ScanSummary summary;
  std::vector<Counterexample> counterexamples;
};

enum class GammaFamilyId { psi1, psi2 };

struct GammaFamily {
  GammaFamilyId family_id = GammaFamilyId::psi1;
  double gamma = 0.0;
};

struct SweepPoint {
  double gamma = 0.0;
  double b_ab = 0.0, b_bc = 0.0, b_ac = 0.0;
};

enum class QutritVerdict {
  NoSymmetricExtension_ConjecturalBellViolation,
  Inconclusive,
};

const char* to_string(QutritVerdict v);
const char* to_string(GammaFamilyId id);
GammaFamilyId gamma_family_from_string(const std::string& name);

// 27 amplitudes i.i.d. standard complex normal from the stream
// derive_seed(seed, index), then normalized: uniform on the unit sphere.
StateVector random_3qutrit(std::uint64_t seed, std::size_t index);

// Reduced states over (A,B), (B,C), (A,C), in that order.
std::array<DensityMatrix, 3> rdm_triple(const StateVector& psi);

// CGLMP maxima of all three reduced states of `n_states` random 3-qutrit
// pure states. Work items run concurrently (thread count from the
// BELLMONO_THREADS environment variable, default: all cores) but every
// stream is derived from (seed, index), so results are
// schedule-independent. `on_record` is invoked in index order as a
// completed prefix becomes available, enabling incremental flushing.
ScanResult monogamy_scan(std::size_t n_states, std::uint64_t seed, int restarts,
                         const std::function<void(const ScanRecord&)>& on_record = nullptr);

// The two printed 3-qutrit families. Amplitudes are placed literally ket
// by ket, then the vector is renormalized numerically (the printed
// prefactors are not relied upon).
StateVector gamma_state(const GammaFamily& family);

// CGLMP maxima of the three reduced states at every grid value.
std::vector<SweepPoint> gamma_sweep(GammaFamilyId family, std::span<const double> gamma_grid,
                                    int restarts, std::uint64_t seed);

// Theorem-3-style verdict for a 2-qutrit state. CGLMP monogamy is
// conjectured, not proven, so a violation yields an explicitly
// conjectural verdict; anything else is inconclusive.
QutritVerdict nonextendibility_verdict_qutrit(const DensityMatrix& rho, int restarts,
                                              std::uint64_t seed);

// Number of worker threads scans will use.
unsigned scan_thread_count();

}  // namespace bellmono

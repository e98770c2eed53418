#ifndef EULERFV_KCONV_HPP
#define EULERFV_KCONV_HPP

#include <optional>
#include <string>
#include <vector>

#include "eulerfv/cases.hpp"
#include "eulerfv/solver.hpp"
#include "eulerfv/young.hpp"

namespace efv {

enum class Classification { strong_k, oscillatory, inconclusive };
std::string to_string(Classification c);

// Thresholds; nonpositive entries are replaced by scale-aware defaults:
//   eps_meas  = 1e-2 * phase-space data range
//   tau_dirac = 1e-3 * max |g| over the bank
//   tau_osc   = 1e-2 * max |g| over the bank
struct Thresholds {
  double eps_meas = -1.0;
  double tau_osc = -1.0;
  double tau_dirac = -1.0;
};

enum class StudyCase { smooth_periodic, riemann, two_state_synthetic };

struct StudyConfig {
  int dim = 1;
  std::array<int, 3> base_cells{32, 32, 32};
  int levels = 2;                      // meshes n, 2n, ..., 2^(L-1) n
  double t_end = 0.5;
  std::vector<double> snapshot_times;  // within [0, t_end]
  int probe_stride = 4;                // every k-th common cell is a probe
  std::array<double, 2> probe_window{-1.0, 1.0}; // restrict probes along axis 0
  Thresholds thresholds;
  int bump_grid = 3;                   // odd number of bump centers per phase axis

  GasLaw gas;
  SchemeParams scheme;
  StudyCase study_case = StudyCase::smooth_periodic;
  SmoothPeriodicParams smooth;
  std::optional<RiemannCase> riemann;
  TwoStatePair two_state;
};

// Fields restricted to the common grid for one level and one snapshot time.
struct CommonFields {
  Field rho;
  std::vector<Field> m;
};

// Running sums over the level sequence at fixed snapshot times/cells.
class CesaroAccumulator {
public:
  CesaroAccumulator(int dim, std::size_t cells, std::size_t bank_size);

  void add(const CommonFields& fields, const ObservableBank& bank, const GasLaw& gas);

  int count() const { return count_; }
  Field mean_rho() const;
  std::vector<Field> mean_m() const;
  Field mean_observable(std::size_t g) const;
  Field mean_kinetic() const;  // (1/N) sum of |m|^2/(2 rho)
  Field mean_internal() const; // (1/N) sum of P(rho)

private:
  int dim_;
  int count_ = 0;
  Field sum_rho_;
  std::vector<Field> sum_m_;
  std::vector<Field> sum_g_;
  Field sum_kin_, sum_int_;
};

// (1/N) sum of the input fields.
Field cesaro_mean(const std::vector<Field>& fields);

// Volume fraction of the common space-time grid where the phase-space
// distance |U_level - U_mean| exceeds eps.
double in_measure_fraction(const std::vector<CommonFields>& level_snaps,
                           const std::vector<CommonFields>& mean_snaps, double eps);

struct ProbeRef {
  std::size_t snapshot = 0;
  std::size_t cell = 0;
};

struct StudyDiagnostics {
  std::vector<double> mu_per_level;       // in-measure indicator per level
  double max_delta_g_full = 0.0;          // over probes and bank, full prefix
  double max_delta_g_prev = 0.0;          // same for the N-1 prefix
  Classification classification = Classification::inconclusive;
  Thresholds resolved;                    // thresholds actually used
};

Classification classify(const StudyDiagnostics& diag, const Thresholds& resolved);

struct LevelOutput {
  int cells = 0;
  std::vector<State> snapshots;            // on the level's own mesh
  Mesh mesh;
  std::vector<EnergyAuditRecord> ledger;
  double initial_energy = 0.0;
};

struct StudyResult {
  Mesh common_mesh;
  std::vector<double> snapshot_times;
  std::vector<LevelOutput> levels;
  // [level][snapshot] restricted fields
  std::vector<std::vector<CommonFields>> restricted;
  std::vector<CommonFields> cesaro;        // per snapshot
  ObservableBank bank;
  std::vector<ProbeRef> probes;
  std::vector<EmpiricalYoungMeasure> measures;    // one per probe
  std::vector<DefectEstimates> probe_defects;     // one per probe
  // [probe][g] oscillation indicator for the full prefix
  std::vector<std::vector<double>> delta_g;
  StudyDiagnostics diagnostics;
  double initial_energy = 0.0;
};

StudyResult run_study(const StudyConfig& config);

} // namespace efv

#endif

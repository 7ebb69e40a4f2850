#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "bdsep/criteria.hpp"
#include "bdsep/states.hpp"

namespace bdsep {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Composition = std::array<int, kBellCount>;

/// Grid with spacing 1/divisions on the simplex of Bell weights.
struct ScanConfig {
  int divisions = 10;
  double tol = kDefaultCriterionTol;
  bool closed_form_only = false;
  bool keep_records = false;

  /// Throws ConfigError unless step is in (0, 1] and 1/step is an integer.
  static ScanConfig from_step(double step);
  double step() const { return 1.0 / divisions; }
};

/// All compositions of n into six non-negative parts, lexicographic
/// ascending: (0,0,0,0,0,n), (0,0,0,0,1,n-1), ..., (n,0,0,0,0,0).
std::vector<Composition> simplex_compositions(int n);

/// Number of compositions of n into six parts, C(n+5, 5).
std::size_t composition_count(int n);

BDParams params_from_composition(const Composition& k, int n);

struct ScanRecord {
  Composition composition;
  BDParams params;
  std::array<double, 3> residuals;
  double min_pt_eig;
  double ccnr;
  StateClass state_class;
};

struct ExtremalRecord {
  StateClass state_class;
  std::string_view metric;  // "max_ccnr" or "min_pt_eig"
  ScanRecord record;
};

/// Closed-form versus numeric agreement over a scan.
struct OracleStats {
  bool checked = false;
  double max_ccnr_discrepancy = 0.0;
  double max_singular_value_discrepancy = 0.0;
  double max_pt_eig_discrepancy = 0.0;
  std::size_t ccnr_disagreements = 0;       // |closed - numeric| > 1e-9
  std::size_t ppt_sign_disagreements = 0;   // margin > 1e-8 but signs differ
  std::size_t class_disagreements = 0;
};

inline constexpr double kOracleAgreementTol = 1e-9;
inline constexpr double kSignMargin = 1e-8;

struct ScanResult {
  int divisions = 0;
  std::size_t total_points = 0;
  std::array<std::size_t, 4> counts{};  // indexed by StateClass
  std::vector<ExtremalRecord> extremal;
  std::vector<ScanRecord> records;  // empty unless keep_records
  OracleStats oracle;

  std::size_t count(StateClass c) const { return counts[static_cast<std::size_t>(c)]; }
};

/// Classifies a single grid point from the closed forms and, unless
/// closed_form_only, cross-checks it against the numeric criteria.
struct PointEvaluation {
  ScanRecord record;
  bool oracle_checked = false;
  double ccnr_numeric = 0.0;
  double min_pt_eig_numeric = 0.0;
  double singular_value_discrepancy = 0.0;
  StateClass numeric_class = StateClass::Separable;
};

PointEvaluation evaluate_grid_point(const Composition& k, const ScanConfig& config);

/// Reference implementation: one thread, canonical order.
ScanResult scan_bd_simplex_serial(const ScanConfig& config);

/// OpenMP over grid points; result is identical to the serial scan.
ScanResult scan_bd_simplex(const ScanConfig& config);

/// The 2x3 Bell-decomposable point exhibited as PPT-entangled but CCNR-blind.
BDParams counterexample_params();

struct ReproductionRecord {
  BDParams params;
  std::array<double, 3> ppt_residuals;
  double min_pt_eigenvalue;
  double ccnr_closed_form;
  double ccnr_numeric;
  bool reproduced;
};

/// reproduced iff some residual < -tol, both CCNR values <= 1 + tol and
/// they agree within kOracleAgreementTol.
ReproductionRecord evaluate_ccnr_blindness(const BDParams& params, double tol);
ReproductionRecord reproduce_counterexample(double tol = kDefaultCriterionTol);

enum class RefineObjective {
  /// Maximize -min(residuals) subject to CCNR closed form <= 1.
  MaxCcnrBlindViolation,
  /// Minimize the smallest eigenvalue of the partial transpose.
  MinPtEigenvalue,
};

struct RefineResult {
  BDParams params;
  /// -min residual for MaxCcnrBlindViolation, min PT eigenvalue for
  /// MinPtEigenvalue.
  double objective;
  int sweeps;
};

/// Pair-transfer coordinate search on the simplex. Each sweep tries moving
/// mass `step` between every ordered pair of coordinates and keeps strict
/// improvements; the step halves after a sweep without one. A start with
/// infeasible objective is returned unchanged.
RefineResult refine_extremum(const BDParams& start, RefineObjective objective, int iterations,
                             double initial_step = 0.05);

double refine_score(const BDParams& params, RefineObjective objective);

}  // namespace bdsep

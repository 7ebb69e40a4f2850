#include "bdsep/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace bdsep {

namespace {

template <typename Compositions>
ScanResult aggregate(const ScanConfig& config, const Compositions& compositions,
                     std::vector<PointEvaluation>& evaluations) {
  ScanResult result;
  result.divisions = config.divisions;
  result.total_points = compositions.size();
  result.oracle.checked = !config.closed_form_only;

  // Extremes per class; ties keep the earliest point in canonical order.
  std::array<std::optional<std::size_t>, 4> max_ccnr{};
  std::array<std::optional<std::size_t>, 4> min_pt{};

  for (std::size_t i = 0; i < evaluations.size(); ++i) {
    const auto& ev = evaluations[i];
    const auto cls = static_cast<std::size_t>(ev.record.state_class);
    ++result.counts[cls];
    if (!max_ccnr[cls] || ev.record.ccnr > evaluations[*max_ccnr[cls]].record.ccnr)
      max_ccnr[cls] = i;
    if (!min_pt[cls] || ev.record.min_pt_eig < evaluations[*min_pt[cls]].record.min_pt_eig)
      min_pt[cls] = i;

    if (ev.oracle_checked) {
      auto& o = result.oracle;
      const double dccnr = std::abs(ev.ccnr_numeric - ev.record.ccnr);
      o.max_ccnr_discrepancy = std::max(o.max_ccnr_discrepancy, dccnr);
      o.max_singular_value_discrepancy =
          std::max(o.max_singular_value_discrepancy, ev.singular_value_discrepancy);
      o.max_pt_eig_discrepancy = std::max(
          o.max_pt_eig_discrepancy, std::abs(ev.min_pt_eig_numeric - ev.record.min_pt_eig));
      if (dccnr > kOracleAgreementTol || ev.singular_value_discrepancy > kOracleAgreementTol)
        ++o.ccnr_disagreements;
      const double rmin = *std::min_element(ev.record.residuals.begin(),
                                            ev.record.residuals.end());
      if (std::abs(rmin) > kSignMargin && ((rmin < 0.0) != (ev.min_pt_eig_numeric < 0.0)))
        ++o.ppt_sign_disagreements;
      if (ev.numeric_class != ev.record.state_class) ++o.class_disagreements;
    }
  }

  for (std::size_t c = 0; c < 4; ++c) {
    if (max_ccnr[c])
      result.extremal.push_back(
          {static_cast<StateClass>(c), "max_ccnr", evaluations[*max_ccnr[c]].record});
    if (min_pt[c])
      result.extremal.push_back(
          {static_cast<StateClass>(c), "min_pt_eig", evaluations[*min_pt[c]].record});
  }

  if (config.keep_records) {
    result.records.reserve(evaluations.size());
    for (auto& ev : evaluations) result.records.push_back(std::move(ev.record));
  }
  return result;
}

}  // namespace

ScanConfig ScanConfig::from_step(double step) {
  if (!(step > 0.0 && step <= 1.0)) {
    throw ConfigError(fmt::format("scan step {} is not in (0, 1]", step));
  }
  const double inv = 1.0 / step;
  const double rounded = std::round(inv);
  if (std::abs(inv - rounded) > 1e-9 * rounded) {
    throw ConfigError(fmt::format("scan step {} is not a unit fraction 1/N", step));
  }
  ScanConfig config;
  config.divisions = static_cast<int>(rounded);
  return config;
}

std::size_t composition_count(int n) {
  if (n < 0) return 0;
  // C(n+5, 5) built incrementally; every partial product is an integer.
  std::size_t c = 1;
  for (std::size_t i = 1; i <= 5; ++i) c = c * (static_cast<std::size_t>(n) + i) / i;
  return c;
}

std::vector<Composition> simplex_compositions(int n) {
  if (n < 1) throw ConfigError(fmt::format("simplex_compositions: n = {} must be positive", n));
  std::vector<Composition> out;
  out.reserve(composition_count(n));
  Composition k{};
  for (k[0] = 0; k[0] <= n; ++k[0])
    for (k[1] = 0; k[1] <= n - k[0]; ++k[1])
      for (k[2] = 0; k[2] <= n - k[0] - k[1]; ++k[2])
        for (k[3] = 0; k[3] <= n - k[0] - k[1] - k[2]; ++k[3])
          for (k[4] = 0; k[4] <= n - k[0] - k[1] - k[2] - k[3]; ++k[4]) {
            k[5] = n - k[0] - k[1] - k[2] - k[3] - k[4];
            out.push_back(k);
          }
  return out;
}

BDParams params_from_composition(const Composition& k, int n) {
  std::array<double, kBellCount> p{};
  for (std::size_t i = 0; i < kBellCount; ++i)
    p[i] = static_cast<double>(k[i]) / static_cast<double>(n);
  return BDParams(p);
}

PointEvaluation evaluate_grid_point(const Composition& k, const ScanConfig& config) {
  const auto params = params_from_composition(k, config.divisions);
  const auto residuals = bd_ppt_residuals(params);
  const double min_pt = bd_pt_spectrum(params).front();
  const double ccnr = bd_ccnr_closed_form(params);
  const auto cls = class_from_verdicts(min_pt >= -config.tol, ccnr <= 1.0 + config.tol);

  PointEvaluation ev{{k, params, residuals, min_pt, ccnr, cls}};
  if (config.closed_form_only) return ev;

  const auto rho = bell_decomposable(params);
  const auto ppt = ppt_report(rho, config.tol);
  const auto ccnr_num = ccnr_report(rho, config.tol);
  const auto sv_closed = bd_realigned_singular_values(params);
  double sv_diff = 0.0;
  for (std::size_t i = 0; i < sv_closed.size(); ++i)
    sv_diff = std::max(sv_diff, std::abs(sv_closed[i] - ccnr_num.witness[i].value));

  ev.oracle_checked = true;
  ev.ccnr_numeric = ccnr_num.value;
  ev.min_pt_eig_numeric = ppt.value;
  ev.singular_value_discrepancy = sv_diff;
  ev.numeric_class = class_from_verdicts(ppt.satisfied, ccnr_num.satisfied);
  return ev;
}

ScanResult scan_bd_simplex_serial(const ScanConfig& config) {
  const auto grid = simplex_compositions(config.divisions);
  std::vector<PointEvaluation> evaluations;
  evaluations.reserve(grid.size());
  for (const auto& k : grid) evaluations.push_back(evaluate_grid_point(k, config));
  return aggregate(config, grid, evaluations);
}

ScanResult scan_bd_simplex(const ScanConfig& config) {
  const auto grid = simplex_compositions(config.divisions);
  std::vector<PointEvaluation> evaluations(grid.size());
  const auto n = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    evaluations[static_cast<std::size_t>(i)] =
        evaluate_grid_point(grid[static_cast<std::size_t>(i)], config);
  }
  return aggregate(config, grid, evaluations);
}

BDParams counterexample_params() { return BDParams({0.3, 0.0, 0.2, 0.1, 0.4, 0.0}); }

ReproductionRecord evaluate_ccnr_blindness(const BDParams& params, double tol) {
  const auto residuals = bd_ppt_residuals(params);
  const auto rho = bell_decomposable(params);
  const double min_pt = ppt_report(rho, tol).value;
  const double closed = bd_ccnr_closed_form(params);
  const double numeric = ccnr_report(rho, tol).value;

  const bool violates_ppt =
      std::any_of(residuals.begin(), residuals.end(), [&](double r) { return r < -tol; });
  const bool ccnr_holds = closed <= 1.0 + tol && numeric <= 1.0 + tol;
  const bool agree = std::abs(closed - numeric) <= kOracleAgreementTol;
  return {params, residuals, min_pt, closed, numeric, violates_ppt && ccnr_holds && agree};
}

ReproductionRecord reproduce_counterexample(double tol) {
  return evaluate_ccnr_blindness(counterexample_params(), tol);
}

double refine_score(const BDParams& params, RefineObjective objective) {
  switch (objective) {
    case RefineObjective::MaxCcnrBlindViolation: {
      if (bd_ccnr_closed_form(params) > 1.0) return -std::numeric_limits<double>::infinity();
      const auto r = bd_ppt_residuals(params);
      return -*std::min_element(r.begin(), r.end());
    }
    case RefineObjective::MinPtEigenvalue:
      return -bd_pt_spectrum(params).front();
  }
  return -std::numeric_limits<double>::infinity();
}

namespace {

double objective_from_score(double score, RefineObjective objective) {
  return objective == RefineObjective::MinPtEigenvalue ? -score : score;
}

}  // namespace

RefineResult refine_extremum(const BDParams& start, RefineObjective objective, int iterations,
                             double initial_step) {
  double best = refine_score(start, objective);
  if (iterations <= 0 || !std::isfinite(best)) {
    return {start, objective_from_score(best, objective), 0};
  }

  auto p = start.values();
  double step = initial_step;
  int sweeps = 0;
  for (; sweeps < iterations && step > 1e-15; ++sweeps) {
    bool improved = false;
    for (std::size_t from = 0; from < kBellCount; ++from) {
      for (std::size_t to = 0; to < kBellCount; ++to) {
        if (from == to || p[from] <= 0.0) continue;
        auto trial = p;
        const double moved = std::min(step, trial[from]);
        trial[from] -= moved;
        trial[to] += moved;
        // Transfers conserve the sum up to rounding; snap it back.
        const BDParams candidate = BDParams::normalized(trial, 1e-12);
        const double score = refine_score(candidate, objective);
        if (score > best) {
          best = score;
          p = candidate.values();
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return {BDParams(p), objective_from_score(best, objective), sweeps};
}

}  // namespace bdsep

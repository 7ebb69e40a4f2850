#include <algorithm>
#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "bdsep/io.hpp"
#include "bdsep/search.hpp"

namespace bdsep {
namespace {

ScanConfig config_for(int divisions, bool closed_form_only = false, bool keep_records = true) {
  ScanConfig c;
  c.divisions = divisions;
  c.closed_form_only = closed_form_only;
  c.keep_records = keep_records;
  return c;
}

std::string serialize(const ScanResult& r) {
  std::ostringstream os;
  os << scan_summary_json(r).dump(2) << '\n';
  write_scan_csv(os, r);
  return os.str();
}

const ScanRecord* find_record(const ScanResult& r, const Composition& k) {
  for (const auto& rec : r.records)
    if (rec.composition == k) return &rec;
  return nullptr;
}

TEST(ScanConfig, FromStep) {
  EXPECT_EQ(ScanConfig::from_step(0.1).divisions, 10);
  EXPECT_EQ(ScanConfig::from_step(1.0).divisions, 1);
  EXPECT_EQ(ScanConfig::from_step(1.0 / 7.0).divisions, 7);
  EXPECT_THROW(ScanConfig::from_step(0.3), ConfigError);
  EXPECT_THROW(ScanConfig::from_step(0.0), ConfigError);
  EXPECT_THROW(ScanConfig::from_step(1.5), ConfigError);
  EXPECT_THROW(ScanConfig::from_step(-0.5), ConfigError);
}

TEST(Compositions, CountsAndOrder) {
  EXPECT_EQ(composition_count(1), 6u);
  EXPECT_EQ(composition_count(10), 3003u);
  for (int n = 1; n <= 12; ++n) {
    const auto all = simplex_compositions(n);
    ASSERT_EQ(all.size(), composition_count(n));
    EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
    EXPECT_EQ(std::adjacent_find(all.begin(), all.end()), all.end());
    for (const auto& k : all) {
      int sum = 0;
      for (int v : k) sum += v;
      ASSERT_EQ(sum, n);
    }
  }
  const auto ten = simplex_compositions(10);
  EXPECT_EQ(ten.front(), (Composition{0, 0, 0, 0, 0, 10}));
  EXPECT_EQ(ten.back(), (Composition{10, 0, 0, 0, 0, 0}));
}

TEST(Compositions, GridPointIsBitExact) {
  const auto p = params_from_composition({3, 0, 2, 1, 4, 0}, 10);
  EXPECT_EQ(p, counterexample_params());
}

TEST(Scan, UnitStepVertices) {
  const auto r = scan_bd_simplex(config_for(1));
  EXPECT_EQ(r.total_points, 6u);
  EXPECT_EQ(r.count(StateClass::EntangledCcnrDetected), 6u);
  for (const auto& rec : r.records) EXPECT_NEAR(rec.ccnr, 2.0, 1e-15);
}

TEST(Scan, TenthGridCensus) {
  const auto r = scan_bd_simplex(config_for(10));
  EXPECT_EQ(r.total_points, 3003u);
  std::size_t total = 0;
  for (auto c : r.counts) total += c;
  EXPECT_EQ(total, r.total_points);
  EXPECT_GE(r.count(StateClass::EntangledCcnrBlind), 1u);
  EXPECT_GE(r.count(StateClass::Separable), 1u);
  EXPECT_EQ(r.count(StateClass::SeparableCcnrViolated), 0u);

  const auto* ce = find_record(r, {3, 0, 2, 1, 4, 0});
  ASSERT_NE(ce, nullptr);
  EXPECT_EQ(ce->state_class, StateClass::EntangledCcnrBlind);

  const auto* near_uniform = find_record(r, {2, 2, 2, 2, 1, 1});
  ASSERT_NE(near_uniform, nullptr);
  EXPECT_EQ(near_uniform->state_class, StateClass::Separable);
  EXPECT_NEAR(near_uniform->residuals[0], 0.16, 1e-15);
  EXPECT_NEAR(near_uniform->residuals[1], 0.08, 1e-15);
  EXPECT_NEAR(near_uniform->residuals[2], 0.08, 1e-15);

  for (const auto& rec : r.records) {
    double sum = 0.0;
    for (double v : rec.params.values()) sum += v;
    ASSERT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(Scan, OracleConcordance) {
  const auto r = scan_bd_simplex(config_for(10, false, false));
  ASSERT_TRUE(r.oracle.checked);
  EXPECT_EQ(r.oracle.ccnr_disagreements, 0u);
  EXPECT_EQ(r.oracle.ppt_sign_disagreements, 0u);
  EXPECT_LE(r.oracle.max_ccnr_discrepancy, kOracleAgreementTol);
  EXPECT_LE(r.oracle.max_singular_value_discrepancy, kOracleAgreementTol);
  EXPECT_TRUE(r.records.empty());
}

TEST(Scan, ClosedFormOnlySkipsOracle) {
  const auto full = scan_bd_simplex(config_for(6));
  const auto fast = scan_bd_simplex(config_for(6, true));
  EXPECT_FALSE(fast.oracle.checked);
  EXPECT_EQ(full.counts, fast.counts);
}

TEST(Scan, ParallelMatchesSerialReference) {
  for (int n : {1, 4, 10}) {
    const auto cfg = config_for(n);
    EXPECT_EQ(serialize(scan_bd_simplex(cfg)), serialize(scan_bd_simplex_serial(cfg))) << n;
  }
}

TEST(Scan, RepeatedRunsAreByteIdentical) {
  const auto cfg = config_for(10);
  EXPECT_EQ(serialize(scan_bd_simplex(cfg)), serialize(scan_bd_simplex(cfg)));
}

TEST(Scan, ExtremalRecords) {
  const auto r = scan_bd_simplex(config_for(10));
  bool saw_blind = false;
  for (const auto& e : r.extremal) {
    EXPECT_EQ(e.record.state_class, e.state_class);
    if (e.state_class == StateClass::EntangledCcnrBlind && e.metric == "max_ccnr") {
      saw_blind = true;
      EXPECT_LE(e.record.ccnr, 1.0 + 1e-9);
      for (const auto& rec : r.records)
        if (rec.state_class == StateClass::EntangledCcnrBlind) EXPECT_LE(rec.ccnr, e.record.ccnr);
    }
  }
  EXPECT_TRUE(saw_blind);
}

TEST(Reproduce, Counterexample) {
  const auto r = reproduce_counterexample(1e-9);
  EXPECT_TRUE(r.reproduced);
  EXPECT_NEAR(r.ppt_residuals[0], -0.07, 1e-12);
  EXPECT_NEAR(r.min_pt_eigenvalue, -0.05, 1e-10);
  EXPECT_NEAR(r.ccnr_closed_form, 2.0 * std::sqrt(0.065) + std::sqrt(0.1675) + std::sqrt(0.0025),
              1e-12);
  EXPECT_NEAR(r.ccnr_closed_form, r.ccnr_numeric, 1e-9);
}

TEST(Reproduce, PerturbedPointStillBlind) {
  const BDParams p({0.3, 0.0, 0.2, 0.1, 0.39, 0.01});
  const auto r = evaluate_ccnr_blindness(p, 1e-9);
  EXPECT_TRUE(r.reproduced);
  EXPECT_NEAR(r.ppt_residuals[0], 0.09 - 0.1444, 1e-12);
  EXPECT_LT(r.ccnr_closed_form, 1.0);
}

TEST(Reproduce, UniformIsNotBlind) {
  EXPECT_FALSE(evaluate_ccnr_blindness(BDParams::uniform(), 1e-9).reproduced);
}

TEST(Reproduce, LargeToleranceIsStricter) {
  // The margin is 0.07, so requiring a residual below -0.1 fails.
  EXPECT_FALSE(reproduce_counterexample(0.1).reproduced);
  EXPECT_TRUE(reproduce_counterexample(0.069).reproduced);
}

TEST(Refine, FromCounterexampleImprovesViolation) {
  const auto start = counterexample_params();
  EXPECT_NEAR(refine_score(start, RefineObjective::MaxCcnrBlindViolation), 0.07, 1e-12);
  double previous = 0.07 - 1e-12;
  for (int iters : {1, 5, 20, 80}) {
    const auto r = refine_extremum(start, RefineObjective::MaxCcnrBlindViolation, iters);
    EXPECT_GE(r.objective, previous);
    EXPECT_LE(bd_ccnr_closed_form(r.params), 1.0);
    const auto res = bd_ppt_residuals(r.params);
    EXPECT_NEAR(-*std::min_element(res.begin(), res.end()), r.objective, 1e-15);
    previous = r.objective;
  }
  EXPECT_GT(previous, 0.07);
}

TEST(Refine, MinPtEigenvalueFromUniform) {
  const auto r = refine_extremum(BDParams::uniform(), RefineObjective::MinPtEigenvalue, 50);
  EXPECT_LE(r.objective, 1.0 / 6.0);
  // The global minimum -1/2 sits at the vertices.
  EXPECT_NEAR(r.objective, -0.5, 1e-9);
  EXPECT_NEAR(bd_pt_spectrum(r.params).front(), r.objective, 1e-15);
}

TEST(Refine, ZeroIterationsReturnsStart) {
  const auto start = counterexample_params();
  const auto r = refine_extremum(start, RefineObjective::MaxCcnrBlindViolation, 0);
  EXPECT_EQ(r.params, start);
  EXPECT_EQ(r.sweeps, 0);
  EXPECT_NEAR(r.objective, 0.07, 1e-12);
}

TEST(Refine, InfeasibleStartReturnsStart) {
  const BDParams vertex({1.0, 0.0, 0.0, 0.0, 0.0, 0.0});  // CCNR value 2
  const auto r = refine_extremum(vertex, RefineObjective::MaxCcnrBlindViolation, 10);
  EXPECT_EQ(r.params, vertex);
  EXPECT_TRUE(std::isinf(r.objective));
}

}  // namespace
}  // namespace bdsep

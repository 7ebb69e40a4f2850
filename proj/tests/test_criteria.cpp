#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "bdsep/criteria.hpp"
#include "bdsep/states.hpp"
#include "test_support.hpp"

namespace bdsep {
namespace {

const BDParams kCounterexample({0.3, 0.0, 0.2, 0.1, 0.4, 0.0});
const BDParams kVertex({1.0, 0.0, 0.0, 0.0, 0.0, 0.0});

double min_of(const std::array<double, 3>& r) { return *std::min_element(r.begin(), r.end()); }

TEST(PartialTranspose, ProductState) {
  const auto sigma = random_density(2, 1, 1).matrix();
  const auto tau = random_density(3, 1, 2).matrix();
  const BipartiteDensity rho(2, 3, kron(sigma, tau));
  EXPECT_LT(max_abs_diff(partial_transpose(rho, Side::A), kron(sigma.transpose(), tau)), 1e-16);
  EXPECT_LT(max_abs_diff(partial_transpose(rho, Side::B), kron(sigma, tau.transpose())), 1e-16);
  EXPECT_GE(eigvals_hermitian(partial_transpose(rho)).front(), -1e-14);
}

TEST(PartialTranspose, InvolutionIsExact) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto rho = random_density(2 + seed % 2, 2 + seed % 3, seed);
    for (auto side : {Side::A, Side::B}) {
      const auto twice = partial_transpose(
          partial_transpose(rho.matrix(), rho.dim_a(), rho.dim_b(), side), rho.dim_a(),
          rho.dim_b(), side);
      EXPECT_EQ(twice, rho.matrix());
    }
  }
}

TEST(PartialTranspose, IndexRule) {
  const auto rho = random_density(2, 3, 77);
  const auto pt = partial_transpose(rho, Side::A);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 3; ++l)
          EXPECT_EQ(pt(i * 3 + j, k * 3 + l), rho.element(k, j, i, l));
}

TEST(PartialTranspose, HermitianUnitTrace) {
  const auto pt = partial_transpose(random_density(2, 3, 78));
  EXPECT_LT(pt.hermiticity_deviation(), 1e-15);
  EXPECT_NEAR(pt.trace().real(), 1.0, 1e-12);
}

TEST(PartialTranspose, CounterexampleMinimumEigenvalue) {
  // One 2x2 block of the PT is [[0.15, 0.2], [0.2, 0.15]]: eigenvalues 0.15 -+ 0.2.
  const double block_min = 0.15 - 0.2;
  const auto ev = eigvals_hermitian(partial_transpose(bell_decomposable(kCounterexample)));
  EXPECT_NEAR(ev.front(), block_min, 1e-12);
  EXPECT_NEAR(ev.front(), -0.05, 1e-10);
}

TEST(PartialTranspose, SidesShareSpectrum) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto rho = random_density(2, 3, 1000 + seed);
    const auto a = eigvals_hermitian(partial_transpose(rho, Side::A));
    const auto b = eigvals_hermitian(partial_transpose(rho, Side::B));
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-12);
  }
}

TEST(PptReport, MaximallyMixed) {
  const auto r = ppt_report(maximally_mixed(2, 3));
  EXPECT_EQ(r.criterion, Criterion::PPT);
  EXPECT_TRUE(r.satisfied);
  EXPECT_NEAR(r.value, 1.0 / 6.0, 1e-15);
  EXPECT_FALSE(r.boundary());
  EXPECT_EQ(r.witness.size(), 7u);  // six PT eigenvalues and the boundary flag
}

TEST(PptReport, Counterexample) {
  const auto r = ppt_report(bell_decomposable(kCounterexample));
  EXPECT_FALSE(r.satisfied);
  EXPECT_NEAR(r.value, -0.05, 1e-10);
}

TEST(PptReport, BoundaryCountsAsSatisfied) {
  // (p1+p2)(p3+p4) = (p5-p6)^2 = 1/16, exactly representable.
  const BDParams edge({0.125, 0.125, 0.125, 0.125, 0.375, 0.125});
  EXPECT_EQ(bd_ppt_residuals(edge)[0], 0.0);
  const auto r = ppt_report(bell_decomposable(edge));
  EXPECT_TRUE(r.satisfied);
  EXPECT_TRUE(r.boundary());
}

TEST(PptResiduals, Examples) {
  const auto ce = bd_ppt_residuals(kCounterexample);
  EXPECT_NEAR(ce[0], 0.09 - 0.16, 1e-12);
  EXPECT_NEAR(ce[0], -0.07, 1e-12);
  EXPECT_NEAR(ce[1], 0.03, 1e-12);
  EXPECT_NEAR(ce[2], 0.11, 1e-12);

  for (double r : bd_ppt_residuals(BDParams::uniform())) EXPECT_NEAR(r, 1.0 / 9.0, 1e-15);

  EXPECT_DOUBLE_EQ(bd_ppt_residuals(kVertex)[1], -1.0);
}

TEST(PptResiduals, SignAgreesWithNumericSpectrum) {
  Rng rng(201);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto p = random_bd_params(rng);
    const double rmin = min_of(bd_ppt_residuals(p));
    const double emin = ppt_report(bell_decomposable(p)).value;
    if (std::abs(rmin) > 1e-8) {
      ASSERT_EQ(rmin < 0.0, emin < 0.0) << "trial " << trial;
    }
    // Each block has largest eigenvalue <= 1/2, so |min eig| >= |residual|/2 when negative.
    if (rmin < 0.0) ASSERT_LE(emin, 0.5 * rmin + 1e-12);
    if (emin >= 0.0) ASSERT_GE(rmin, -1e-12);
  }
}

TEST(PtSpectrum, ClosedFormMatchesNumeric) {
  Rng rng(202);
  for (int trial = 0; trial < 500; ++trial) {
    const auto p = random_bd_params(rng);
    const auto closed = bd_pt_spectrum(p);
    const auto numeric = eigvals_hermitian(partial_transpose(bell_decomposable(p)));
    for (std::size_t i = 0; i < 6; ++i) ASSERT_NEAR(closed[i], numeric[i], 1e-12);
  }
  EXPECT_NEAR(bd_pt_spectrum(kCounterexample).front(), -0.05, 1e-15);
}

TEST(Realign, BasisProjector) {
  ComplexMatrix m(6, 6);
  m(0, 0) = 1.0;
  const auto u = realign(BipartiteDensity(2, 3, m));
  ASSERT_EQ(u.rows(), 4u);
  ASSERT_EQ(u.cols(), 9u);
  int nonzero = 0;
  for (const auto& z : u.entries()) nonzero += z != Complex{} ? 1 : 0;
  EXPECT_EQ(nonzero, 1);
  EXPECT_EQ(u(0, 0), Complex(1.0));
  EXPECT_NEAR(trace_norm(u), 1.0, 1e-15);
}

TEST(Realign, ProductIsRankOne) {
  const auto sigma = random_density(2, 1, 3).matrix();
  const auto tau = random_density(3, 1, 4).matrix();
  const auto sv = singular_values(realign(kron(sigma, tau), 2, 3));
  EXPECT_GT(sv[0], 0.1);
  for (std::size_t i = 1; i < sv.size(); ++i) EXPECT_LT(sv[i], 1e-14);
  // The single singular value is ||sigma||_F ||tau||_F.
  EXPECT_NEAR(sv[0], sigma.frobenius_norm() * tau.frobenius_norm(), 1e-14);
}

TEST(Realign, PreservesFrobeniusNorm) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto rho = random_density(2 + seed % 2, 2 + seed % 3, seed);
    EXPECT_NEAR(realign(rho).frobenius_norm(), rho.matrix().frobenius_norm(), 1e-15);
  }
}

TEST(Realign, BellDecomposablePattern) {
  const auto& p = kCounterexample;
  const auto u = realign(bell_decomposable(p));
  // Rows: (i,k) -> 2i+k; columns: (j,l) -> 3j+l (zero-based).
  const double sx = 0.5 * (p[0] + p[1]), sy = 0.5 * (p[2] + p[3]), sz = 0.5 * (p[4] + p[5]);
  const double dx = 0.5 * (p[0] - p[1]), dy = 0.5 * (p[2] - p[3]), dz = 0.5 * (p[4] - p[5]);
  ComplexMatrix expected(4, 9);
  expected(0, 0) = sx;  // <11|rho|11>
  expected(0, 4) = sy;  // <12|rho|12>
  expected(0, 8) = sz;  // <13|rho|13>
  expected(3, 4) = sx;  // <22|rho|22>
  expected(3, 8) = sy;  // <23|rho|23>
  expected(3, 0) = sz;  // <21|rho|21>
  expected(1, 1) = dx;  // <11|rho|22>
  expected(1, 5) = dy;  // <12|rho|23>
  expected(1, 6) = dz;  // <13|rho|21>
  expected(2, 3) = dx;  // <22|rho|11>
  expected(2, 7) = dy;  // <23|rho|12>
  expected(2, 2) = dz;  // <21|rho|13>
  EXPECT_LT(max_abs_diff(u, expected), 1e-15);
}

TEST(CcnrReport, MaximallyMixed) {
  const auto r = ccnr_report(maximally_mixed(2, 3));
  EXPECT_EQ(r.criterion, Criterion::CCNR);
  EXPECT_TRUE(r.satisfied);
  EXPECT_NEAR(r.value, 1.0 / std::sqrt(6.0), 1e-15);
}

TEST(CcnrReport, PureBellStateValueTwo) {
  const auto r = ccnr_report(bell_decomposable(kVertex));
  EXPECT_FALSE(r.satisfied);
  EXPECT_NEAR(r.value, 2.0, 1e-14);
}

TEST(CcnrReport, CounterexampleSatisfied) {
  const auto r = ccnr_report(bell_decomposable(kCounterexample));
  EXPECT_TRUE(r.satisfied);
  EXPECT_NEAR(r.value, 0.969170, 5e-7);
  // Independent SVD of the same realigned matrix.
  const auto ref = testing::eigen_singular_values(realign(bell_decomposable(kCounterexample)));
  double sum = 0.0;
  for (double s : ref) sum += s;
  EXPECT_NEAR(r.value, sum, 1e-12);
}

TEST(Abc, Examples) {
  const auto u = bd_abc(BDParams::uniform());
  EXPECT_NEAR(u.a, 0.0, 1e-16);
  EXPECT_NEAR(u.b, 1.0 / 12.0, 1e-16);
  EXPECT_NEAR(u.c, 1.0 / 12.0, 1e-16);

  const auto v = bd_abc(kVertex);
  EXPECT_DOUBLE_EQ(v.a, 0.25);
  EXPECT_DOUBLE_EQ(v.b, 0.25);
  EXPECT_DOUBLE_EQ(v.c, 0.0);

  const auto ce = bd_abc(kCounterexample);
  EXPECT_NEAR(ce.a, 0.065, 1e-15);
  EXPECT_NEAR(ce.b, 0.085, 1e-15);
  EXPECT_NEAR(ce.c, 0.0825, 1e-15);
}

TEST(Abc, BDominatesCOnSimplex) {
  Rng rng(301);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto p = random_bd_params(rng);
    const auto abc = bd_abc(p);
    ASSERT_GE(abc.a, 0.0);
    ASSERT_GE(abc.c, 0.0);
    ASSERT_GE(bd_b_minus_c(p), 0.0);
    ASSERT_NEAR(bd_b_minus_c(p), abc.b - abc.c, 1e-15);
  }
}

TEST(CcnrClosedForm, Examples) {
  EXPECT_NEAR(bd_ccnr_closed_form(BDParams::uniform()), std::sqrt(1.0 / 6.0), 1e-15);
  EXPECT_NEAR(bd_ccnr_closed_form(kVertex), 2.0, 1e-15);
  const double ce = bd_ccnr_closed_form(kCounterexample);
  EXPECT_NEAR(ce, 2.0 * std::sqrt(0.065) + std::sqrt(0.1675) + std::sqrt(0.0025), 1e-12);
  EXPECT_LE(ce, 1.0);
}

TEST(CcnrClosedForm, AgreesWithNumericRealignment) {
  Rng rng(302);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto p = random_bd_params(rng);
    const auto rho = bell_decomposable(p);
    const auto report = ccnr_report(rho);
    ASSERT_NEAR(bd_ccnr_closed_form(p), report.value, 1e-9);
    const auto closed_sv = bd_realigned_singular_values(p);
    for (std::size_t i = 0; i < 4; ++i) ASSERT_NEAR(closed_sv[i], report.witness[i].value, 1e-9);
  }
}

TEST(Classify, Examples) {
  const auto mixed = classify_2x3(maximally_mixed(2, 3));
  EXPECT_TRUE(mixed.separable);
  EXPECT_FALSE(mixed.ccnr_blind);
  EXPECT_EQ(mixed.state_class, StateClass::Separable);

  const auto ce = classify_2x3(bell_decomposable(kCounterexample));
  EXPECT_FALSE(ce.separable);
  EXPECT_TRUE(ce.ccnr.satisfied);
  EXPECT_TRUE(ce.ccnr_blind);
  EXPECT_EQ(ce.state_class, StateClass::EntangledCcnrBlind);

  const auto vertex = classify_2x3(bell_decomposable(kVertex));
  EXPECT_FALSE(vertex.separable);
  EXPECT_FALSE(vertex.ccnr.satisfied);
  EXPECT_FALSE(vertex.ccnr_blind);
  EXPECT_EQ(vertex.state_class, StateClass::EntangledCcnrDetected);
}

TEST(Classify, SupportedDimensions) {
  EXPECT_NO_THROW(classify_2x3(random_density(2, 2, 1)));
  EXPECT_NO_THROW(classify_2x3(random_density(3, 2, 1)));
  EXPECT_THROW(classify_2x3(random_density(3, 3, 1)), DimensionError);
  EXPECT_THROW(classify_2x3(random_density(2, 4, 1)), DimensionError);
}

TEST(Criteria, CcnrViolationImpliesNpt) {
  Rng rng(401);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto p = random_bd_params(rng);
    if (bd_ccnr_closed_form(p) > 1.0 + 1e-9) {
      ASSERT_LT(bd_pt_spectrum(p).front(), -1e-9) << "trial " << trial;
    }
  }
}

TEST(Criteria, LocalUnitaryInvariance) {
  Rng rng(402);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rho = trial % 2 == 0 ? bell_decomposable(random_bd_params(rng))
                                    : random_density(2, 3, 5000 + trial);
    const auto u = kron(random_unitary(2, rng), random_unitary(3, rng));
    ComplexMatrix rotated = u * rho.matrix() * u.adjoint();
    for (std::size_t r = 0; r < 6; ++r) {  // symmetrize rounding
      rotated(r, r) = rotated(r, r).real();
      for (std::size_t c = r + 1; c < 6; ++c) rotated(c, r) = std::conj(rotated(r, c));
    }
    const BipartiteDensity moved(2, 3, rotated);
    EXPECT_NEAR(ppt_report(moved).value, ppt_report(rho).value, 1e-9);
    EXPECT_NEAR(ccnr_report(moved).value, ccnr_report(rho).value, 1e-9);
  }
}

TEST(Criteria, HigherDimensionalSmoke) {
  const auto rho = random_density(3, 3, 17);
  const auto ppt = ppt_report(rho);
  const auto ccnr = ccnr_report(rho);
  EXPECT_EQ(ppt.witness.size(), 10u);
  EXPECT_EQ(ccnr.witness.size(), 10u);
  EXPECT_GT(ccnr.value, 0.0);
}

}  // namespace
}  // namespace bdsep

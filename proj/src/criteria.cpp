#include "bdsep/criteria.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace bdsep {

namespace {

void add_boundary_flag(CriterionReport& report, double threshold) {
  report.witness.push_back(
      {"boundary", std::abs(report.value - threshold) <= report.tolerance ? 1.0 : 0.0});
}

// Sums of the three Bell families.
struct FamilySums {
  double x, y, z;     // p1+p2, p3+p4, p5+p6
  double dx, dy, dz;  // p1-p2, p3-p4, p5-p6
};

FamilySums family_sums(const BDParams& p) {
  return {p[0] + p[1], p[2] + p[3], p[4] + p[5], p[0] - p[1], p[2] - p[3], p[4] - p[5]};
}

}  // namespace

std::string_view to_string(Criterion c) { return c == Criterion::PPT ? "PPT" : "CCNR"; }

bool CriterionReport::boundary() const {
  for (const auto& w : witness)
    if (w.name == "boundary") return w.value != 0.0;
  return false;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b,
                                Side side) {
  const std::size_t n = dim_a * dim_b;
  if (m.rows() != n || m.cols() != n) {
    throw DimensionError(fmt::format("partial_transpose: matrix is {}x{}, dims ({}, {})",
                                     m.rows(), m.cols(), dim_a, dim_b));
  }
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < dim_a; ++i)
    for (std::size_t j = 0; j < dim_b; ++j)
      for (std::size_t k = 0; k < dim_a; ++k)
        for (std::size_t l = 0; l < dim_b; ++l) {
          const auto& src = side == Side::A ? m(k * dim_b + j, i * dim_b + l)
                                            : m(i * dim_b + l, k * dim_b + j);
          out(i * dim_b + j, k * dim_b + l) = src;
        }
  return out;
}

ComplexMatrix partial_transpose(const BipartiteDensity& rho, Side side) {
  return partial_transpose(rho.matrix(), rho.dim_a(), rho.dim_b(), side);
}

CriterionReport ppt_report(const BipartiteDensity& rho, double tol, Side side) {
  const auto spectrum = eigvals_hermitian(partial_transpose(rho, side));
  CriterionReport report{Criterion::PPT, spectrum.front(), spectrum.front() >= -tol, tol, {}};
  for (std::size_t i = 0; i < spectrum.size(); ++i)
    report.witness.push_back({fmt::format("pt_eig_{}", i), spectrum[i]});
  add_boundary_flag(report, 0.0);
  return report;
}

std::array<double, 3> bd_ppt_residuals(const BDParams& params) {
  const auto s = family_sums(params);
  return {s.x * s.y - s.dz * s.dz, s.y * s.z - s.dx * s.dx, s.z * s.x - s.dy * s.dy};
}

std::array<double, 6> bd_pt_spectrum(const BDParams& params) {
  const auto s = family_sums(params);
  const auto r = bd_ppt_residuals(params);
  // Block [[a/2, d/2], [d/2, b/2]]: the larger root is computed directly,
  // the smaller as det/larger to avoid cancellation.
  auto block = [](double a, double b, double d, double residual, double* out) {
    const double mean = 0.25 * (a + b);
    const double radius = std::hypot(0.25 * (a - b), 0.5 * d);
    const double hi = mean + radius;
    out[1] = hi;
    out[0] = hi > 0.0 ? 0.25 * residual / hi : 0.0;
  };
  std::array<double, 6> eig{};
  block(s.x, s.y, s.dz, r[0], &eig[0]);
  block(s.y, s.z, s.dx, r[1], &eig[2]);
  block(s.z, s.x, s.dy, r[2], &eig[4]);
  std::sort(eig.begin(), eig.end());
  return eig;
}

ComplexMatrix realign(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b) {
  const std::size_t n = dim_a * dim_b;
  if (m.rows() != n || m.cols() != n) {
    throw DimensionError(fmt::format("realign: matrix is {}x{}, dims ({}, {})", m.rows(),
                                     m.cols(), dim_a, dim_b));
  }
  ComplexMatrix out(dim_a * dim_a, dim_b * dim_b);
  for (std::size_t i = 0; i < dim_a; ++i)
    for (std::size_t j = 0; j < dim_b; ++j)
      for (std::size_t k = 0; k < dim_a; ++k)
        for (std::size_t l = 0; l < dim_b; ++l)
          out(i * dim_a + k, j * dim_b + l) = m(i * dim_b + j, k * dim_b + l);
  return out;
}

ComplexMatrix realign(const BipartiteDensity& rho) {
  return realign(rho.matrix(), rho.dim_a(), rho.dim_b());
}

CriterionReport ccnr_report(const BipartiteDensity& rho, double tol) {
  const auto sv = singular_values(realign(rho));
  double norm = 0.0;
  for (auto it = sv.rbegin(); it != sv.rend(); ++it) norm += *it;
  CriterionReport report{Criterion::CCNR, norm, norm <= 1.0 + tol, tol, {}};
  for (std::size_t i = 0; i < sv.size(); ++i)
    report.witness.push_back({fmt::format("sv_{}", i), sv[i]});
  add_boundary_flag(report, 1.0);
  return report;
}

ABCTriple bd_abc(const BDParams& params) {
  const auto s = family_sums(params);
  return {
      0.25 * (s.dx * s.dx + s.dy * s.dy + s.dz * s.dz),
      0.25 * (s.x * s.x + s.y * s.y + s.z * s.z),
      0.25 * (s.x * s.y + s.y * s.z + s.z * s.x),
  };
}

double bd_b_minus_c(const BDParams& params) {
  const auto s = family_sums(params);
  const double u = s.x - s.y;
  const double v = s.y - s.z;
  const double w = s.z - s.x;
  return 0.125 * (u * u + v * v + w * w);
}

std::array<double, 4> bd_realigned_singular_values(const BDParams& params) {
  const auto abc = bd_abc(params);
  const double sa = std::sqrt(abc.a);
  std::array<double, 4> sv{std::sqrt(abc.b + abc.c), sa, sa, std::sqrt(bd_b_minus_c(params))};
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

double bd_ccnr_closed_form(const BDParams& params) {
  const auto abc = bd_abc(params);
  // The direct difference must agree with the cancellation-free form.
  if (abc.b - abc.c < -1e-12) {
    throw DomainError(fmt::format("bd_ccnr_closed_form: B - C = {:.3g} is negative",
                                  abc.b - abc.c));
  }
  return 2.0 * std::sqrt(abc.a) + std::sqrt(abc.b + abc.c) + std::sqrt(bd_b_minus_c(params));
}

std::string_view to_string(StateClass c) {
  switch (c) {
    case StateClass::Separable:
      return "separable";
    case StateClass::EntangledCcnrDetected:
      return "entangled_ccnr_detected";
    case StateClass::EntangledCcnrBlind:
      return "entangled_ccnr_blind";
    case StateClass::SeparableCcnrViolated:
      return "separable_ccnr_violated";
  }
  return "unknown";
}

StateClass class_from_verdicts(bool ppt_satisfied, bool ccnr_satisfied) {
  if (ppt_satisfied)
    return ccnr_satisfied ? StateClass::Separable : StateClass::SeparableCcnrViolated;
  return ccnr_satisfied ? StateClass::EntangledCcnrBlind : StateClass::EntangledCcnrDetected;
}

bool ppt_is_sufficient(std::size_t dim_a, std::size_t dim_b) {
  return (dim_a == 2 && (dim_b == 2 || dim_b == 3)) || (dim_a == 3 && dim_b == 2);
}

Classification classify_2x3(const BipartiteDensity& rho, double tol) {
  if (!ppt_is_sufficient(rho.dim_a(), rho.dim_b())) {
    throw DimensionError(fmt::format(
        "classify_2x3: PPT decides separability only for 2x2, 2x3 and 3x2; got {}x{}",
        rho.dim_a(), rho.dim_b()));
  }
  auto ppt = ppt_report(rho, tol);
  auto ccnr = ccnr_report(rho, tol);
  const bool separable = ppt.satisfied;
  const bool blind = !separable && ccnr.satisfied;
  const auto cls = class_from_verdicts(ppt.satisfied, ccnr.satisfied);
  return {separable, std::move(ppt), std::move(ccnr), blind, cls};
}

}  // namespace bdsep

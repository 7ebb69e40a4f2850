#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bdsep/matrix.hpp"
#include "bdsep/states.hpp"

namespace bdsep {

inline constexpr double kDefaultCriterionTol = 1e-9;

enum class Criterion { PPT, CCNR };

std::string_view to_string(Criterion c);

struct NamedValue {
  std::string name;
  double value;

  friend bool operator==(const NamedValue&, const NamedValue&) = default;
};

/// Outcome of one separability test.
///
/// PPT: value is the minimum eigenvalue of the partial transpose and the
/// test is satisfied iff value >= -tolerance.
/// CCNR: value is the trace norm of the realigned matrix and the test is
/// satisfied iff value <= 1 + tolerance.
///
/// States within tolerance of the threshold count as satisfied and carry
/// a "boundary" witness entry equal to 1.
struct CriterionReport {
  Criterion criterion;
  double value;
  bool satisfied;
  double tolerance;
  std::vector<NamedValue> witness;

  bool boundary() const;
};

struct ABCTriple {
  double a;
  double b;
  double c;
};

/// Side A: <ij|rho^{T_A}|kl> = <kj|rho|il>. Side B: <ij|rho^{T_B}|kl> = <il|rho|kj>.
ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b,
                                Side side);
ComplexMatrix partial_transpose(const BipartiteDensity& rho, Side side = Side::A);

CriterionReport ppt_report(const BipartiteDensity& rho, double tol = kDefaultCriterionTol,
                           Side side = Side::A);

/// (p1+p2)(p3+p4) - (p5-p6)^2, (p3+p4)(p5+p6) - (p1-p2)^2, (p5+p6)(p1+p2) - (p3-p4)^2.
/// All three non-negative iff the Bell-decomposable state is PPT.
std::array<double, 3> bd_ppt_residuals(const BDParams& params);

/// Spectrum of the partial transpose of a Bell-decomposable state, ascending.
/// The PT splits into three 2x2 blocks whose determinants are residual/4.
std::array<double, 6> bd_pt_spectrum(const BDParams& params);

/// Row (i,k) -> i*dim_a + k, column (j,l) -> j*dim_b + l, entry <ij|rho|kl>.
ComplexMatrix realign(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b);
ComplexMatrix realign(const BipartiteDensity& rho);

CriterionReport ccnr_report(const BipartiteDensity& rho, double tol = kDefaultCriterionTol);

/// Eigenvalues of U U^dagger for the realigned BD state are {A, A, B+C, B-C}.
ABCTriple bd_abc(const BDParams& params);

/// B - C evaluated as (1/8)[(x-y)^2 + (y-z)^2 + (z-x)^2] with
/// x = p1+p2, y = p3+p4, z = p5+p6; non-negative and free of cancellation.
double bd_b_minus_c(const BDParams& params);

/// 2 sqrt(A) + sqrt(B+C) + sqrt(B-C).
double bd_ccnr_closed_form(const BDParams& params);

/// Singular values of the realigned BD state from the closed form, descending.
std::array<double, 4> bd_realigned_singular_values(const BDParams& params);

enum class StateClass {
  Separable,
  EntangledCcnrDetected,
  EntangledCcnrBlind,
  /// PPT holds but CCNR is violated. Cannot happen for a valid 2x2/2x3
  /// state; counted so that a numerical fault would surface.
  SeparableCcnrViolated,
};

std::string_view to_string(StateClass c);

StateClass class_from_verdicts(bool ppt_satisfied, bool ccnr_satisfied);

struct Classification {
  bool separable;
  CriterionReport ppt;
  CriterionReport ccnr;
  bool ccnr_blind;
  StateClass state_class;
};

/// True for (2,2), (2,3) and (3,2), where PPT is equivalent to separability.
bool ppt_is_sufficient(std::size_t dim_a, std::size_t dim_b);

/// Throws DimensionError for dimensions where ppt_is_sufficient is false.
Classification classify_2x3(const BipartiteDensity& rho, double tol = kDefaultCriterionTol);

}  // namespace bdsep

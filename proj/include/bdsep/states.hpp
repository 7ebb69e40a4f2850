#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>

#include "bdsep/matrix.hpp"

namespace bdsep {

enum class Side { A, B };

/// Tolerances used to validate a density matrix.
struct DensityTolerances {
  double hermiticity = 1e-10;
  double trace = 1e-10;
  double min_eigenvalue = 1e-10;
};

class InvalidDensityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Density matrix on C^dim_a (x) C^dim_b. Validated on construction:
/// Hermitian, unit trace and PSD within the given tolerances.
class BipartiteDensity {
 public:
  BipartiteDensity(std::size_t dim_a, std::size_t dim_b, ComplexMatrix matrix,
                   const DensityTolerances& tol = {});

  std::size_t dim_a() const noexcept { return dim_a_; }
  std::size_t dim_b() const noexcept { return dim_b_; }
  std::size_t dim() const noexcept { return dim_a_ * dim_b_; }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

  /// <ij|rho|kl>, zero-based local indices.
  const Complex& element(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return matrix_(i * dim_b_ + j, k * dim_b_ + l);
  }

 private:
  std::size_t dim_a_;
  std::size_t dim_b_;
  ComplexMatrix matrix_;
};

inline constexpr std::size_t kBellCount = 6;

/// Mixing weights p1..p6 of the six 2x3 Bell states.
class BDParams {
 public:
  static constexpr double kSumTolerance = 1e-12;

  /// Uniform weights.
  BDParams();

  /// Throws DomainError unless every p_i is in [0, 1] and the sum is 1
  /// within kSumTolerance.
  explicit BDParams(const std::array<double, kBellCount>& p);

  /// Accepts inputs off the simplex by at most `tolerance` (per-entry
  /// negativity and total-sum error), clamps and renormalizes them.
  static BDParams normalized(const std::array<double, kBellCount>& p, double tolerance);

  static BDParams uniform();

  const std::array<double, kBellCount>& values() const noexcept { return p_; }
  double operator[](std::size_t i) const { return p_[i]; }

  friend bool operator==(const BDParams&, const BDParams&) = default;

 private:
  std::array<double, kBellCount> p_;
};

/// Zero-based flat index of |i j> for 1-based paper labels i in {1,2}, j in {1,2,3}.
constexpr std::size_t flat_index_2x3(std::size_t i, std::size_t j) { return (i - 1) * 3 + (j - 1); }

/// Bell state psi_k, k in 1..6:
///   psi_{1,2} = (|11> +- |22>)/sqrt2, psi_{3,4} = (|12> +- |23>)/sqrt2,
///   psi_{5,6} = (|13> +- |21>)/sqrt2.
Ket bell_state(int k);

BipartiteDensity bell_decomposable(const BDParams& params);

BipartiteDensity maximally_mixed(std::size_t dim_a, std::size_t dim_b);

/// Reduced state on the side that remains after tracing `traced` out.
ComplexMatrix partial_trace(const BipartiteDensity& rho, Side traced);

/// Deterministic 64-bit generator; sampling routines below draw from raw
/// 64-bit outputs so streams are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();          // [0, 1)
  double standard_normal();  // Box-Muller
  Complex complex_gaussian();  // E|z|^2 = 1
  double exponential();

 private:
  std::mt19937_64 engine_;
};

BipartiteDensity random_density(std::size_t dim_a, std::size_t dim_b, std::uint64_t seed);

enum class FactorKind { Mixed, Pure };

/// sum_i w_i rho_i^A (x) rho_i^B with weights uniform on the simplex.
BipartiteDensity random_separable(std::size_t dim_a, std::size_t dim_b, std::size_t terms,
                                  std::uint64_t seed, FactorKind kind = FactorKind::Mixed);

/// Uniformly distributed point of the 5-simplex.
BDParams random_bd_params(Rng& rng);

/// Haar-ish unitary from Gram-Schmidt on a complex Gaussian matrix.
ComplexMatrix random_unitary(std::size_t n, Rng& rng);

}  // namespace bdsep

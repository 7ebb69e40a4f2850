#include "bdsep/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <fmt/format.h>

namespace bdsep {

namespace {

ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  ComplexMatrix g(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) g(r, c) = rng.complex_gaussian();
  return g;
}

ComplexMatrix normalized_gram(const ComplexMatrix& g) {
  ComplexMatrix rho = g * g.adjoint();
  // Enforce exact Hermiticity against rounding in the product.
  for (std::size_t r = 0; r < rho.rows(); ++r) {
    rho(r, r) = rho(r, r).real();
    for (std::size_t c = r + 1; c < rho.cols(); ++c) rho(c, r) = std::conj(rho(r, c));
  }
  rho *= 1.0 / rho.trace().real();
  return rho;
}

ComplexMatrix random_single_party(std::size_t dim, FactorKind kind, Rng& rng) {
  return normalized_gram(gaussian_matrix(dim, kind == FactorKind::Pure ? 1 : dim, rng));
}

}  // namespace

BipartiteDensity::BipartiteDensity(std::size_t dim_a, std::size_t dim_b, ComplexMatrix matrix,
                                   const DensityTolerances& tol)
    : dim_a_(dim_a), dim_b_(dim_b), matrix_(std::move(matrix)) {
  if (dim_a == 0 || dim_b == 0) throw DimensionError("BipartiteDensity: dims must be positive");
  if (matrix_.rows() != dim_a * dim_b || matrix_.cols() != dim_a * dim_b) {
    throw DimensionError(fmt::format("BipartiteDensity: matrix is {}x{}, dims ({}, {}) need {}x{}",
                                     matrix_.rows(), matrix_.cols(), dim_a, dim_b,
                                     dim_a * dim_b, dim_a * dim_b));
  }
  const double herm = matrix_.hermiticity_deviation();
  if (herm > tol.hermiticity) {
    throw InvalidDensityError(
        fmt::format("density invariant violated: hermiticity (max deviation {:.3g} > {:.3g})",
                    herm, tol.hermiticity));
  }
  const Complex tr = matrix_.trace();
  if (std::abs(tr - 1.0) > tol.trace) {
    throw InvalidDensityError(fmt::format(
        "density invariant violated: unit trace (trace {:.12g}{:+.3g}i)", tr.real(), tr.imag()));
  }
  const double min_eig = eigvals_hermitian(matrix_, tol.hermiticity).front();
  if (min_eig < -tol.min_eigenvalue) {
    throw InvalidDensityError(fmt::format(
        "density invariant violated: positive semidefinite (min eigenvalue {:.12g})", min_eig));
  }
}

BDParams::BDParams() { p_.fill(1.0 / 6.0); }

BDParams::BDParams(const std::array<double, kBellCount>& p) : p_(p) {
  double sum = 0.0;
  for (std::size_t i = 0; i < kBellCount; ++i) {
    if (!(p[i] >= 0.0 && p[i] <= 1.0)) {
      throw DomainError(fmt::format("BDParams: p{} = {} is outside [0, 1]", i + 1, p[i]));
    }
    sum += p[i];
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw DomainError(fmt::format("BDParams: probabilities sum to {:.15g}, not 1", sum));
  }
}

BDParams BDParams::normalized(const std::array<double, kBellCount>& p, double tolerance) {
  std::array<double, kBellCount> q{};
  double sum = 0.0;
  for (std::size_t i = 0; i < kBellCount; ++i) {
    if (!std::isfinite(p[i]) || p[i] < -tolerance || p[i] > 1.0 + tolerance) {
      throw DomainError(fmt::format("BDParams: p{} = {} is outside [0, 1]", i + 1, p[i]));
    }
    q[i] = std::clamp(p[i], 0.0, 1.0);
    sum += p[i];
  }
  if (std::abs(sum - 1.0) > tolerance) {
    throw DomainError(fmt::format("BDParams: probabilities sum to {:.15g}, not 1", sum));
  }
  double clamped_sum = 0.0;
  for (double v : q) clamped_sum += v;
  for (double& v : q) v /= clamped_sum;
  return BDParams(q);
}

BDParams BDParams::uniform() { return BDParams(); }

Ket bell_state(int k) {
  if (k < 1 || k > 6) throw DomainError(fmt::format("bell_state: index {} not in 1..6", k));
  // Pair (|1 j1>, |2 j2>) per family: psi_{1,2}: (11, 22), psi_{3,4}: (12, 23), psi_{5,6}: (13, 21).
  static constexpr std::size_t kSecond[3][2] = {{1, 2}, {2, 3}, {3, 1}};
  const int family = (k - 1) / 2;
  const double sign = (k % 2 == 1) ? 1.0 : -1.0;
  std::vector<Complex> amps(6);
  amps[flat_index_2x3(1, kSecond[family][0])] = std::numbers::sqrt2 / 2.0;
  amps[flat_index_2x3(2, kSecond[family][1])] = sign * std::numbers::sqrt2 / 2.0;
  return Ket(std::move(amps));
}

BipartiteDensity bell_decomposable(const BDParams& params) {
  ComplexMatrix rho(6, 6);
  for (int k = 1; k <= 6; ++k) {
    const double p = params[k - 1];
    if (p == 0.0) continue;
    rho += bell_state(k).projector() * Complex(p);
  }
  return BipartiteDensity(2, 3, std::move(rho));
}

BipartiteDensity maximally_mixed(std::size_t dim_a, std::size_t dim_b) {
  const std::size_t n = dim_a * dim_b;
  return BipartiteDensity(dim_a, dim_b, ComplexMatrix::identity(n) * Complex(1.0 / n));
}

ComplexMatrix partial_trace(const BipartiteDensity& rho, Side traced) {
  const std::size_t da = rho.dim_a();
  const std::size_t db = rho.dim_b();
  if (traced == Side::B) {
    ComplexMatrix out(da, da);
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t k = 0; k < da; ++k)
        for (std::size_t j = 0; j < db; ++j) out(i, k) += rho.element(i, j, k, j);
    return out;
  }
  ComplexMatrix out(db, db);
  for (std::size_t j = 0; j < db; ++j)
    for (std::size_t l = 0; l < db; ++l)
      for (std::size_t i = 0; i < da; ++i) out(j, l) += rho.element(i, j, i, l);
  return out;
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::standard_normal() {
  // u1 in (0, 1] keeps the log finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex Rng::complex_gaussian() {
  const double re = standard_normal();
  const double im = standard_normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

double Rng::exponential() { return -std::log(1.0 - uniform()); }

BipartiteDensity random_density(std::size_t dim_a, std::size_t dim_b, std::uint64_t seed) {
  if (dim_a == 0 || dim_b == 0) throw DimensionError("random_density: dims must be positive");
  Rng rng(seed);
  const std::size_t n = dim_a * dim_b;
  return BipartiteDensity(dim_a, dim_b, normalized_gram(gaussian_matrix(n, n, rng)));
}

BipartiteDensity random_separable(std::size_t dim_a, std::size_t dim_b, std::size_t terms,
                                  std::uint64_t seed, FactorKind kind) {
  if (dim_a == 0 || dim_b == 0) throw DimensionError("random_separable: dims must be positive");
  if (terms == 0) throw DomainError("random_separable: terms must be positive");
  Rng rng(seed);
  std::vector<double> w(terms);
  double total = 0.0;
  for (auto& x : w) total += (x = rng.exponential());

  ComplexMatrix rho(dim_a * dim_b, dim_a * dim_b);
  for (std::size_t t = 0; t < terms; ++t) {
    const auto a = random_single_party(dim_a, kind, rng);
    const auto b = random_single_party(dim_b, kind, rng);
    rho += kron(a, b) * Complex(w[t] / total);
  }
  return BipartiteDensity(dim_a, dim_b, std::move(rho));
}

BDParams random_bd_params(Rng& rng) {
  std::array<double, kBellCount> p{};
  double total = 0.0;
  for (auto& x : p) total += (x = rng.exponential());
  for (auto& x : p) x /= total;
  return BDParams(p);
}

ComplexMatrix random_unitary(std::size_t n, Rng& rng) {
  ComplexMatrix q = gaussian_matrix(n, n, rng);
  // Modified Gram-Schmidt over columns.
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      Complex dot = 0.0;
      for (std::size_t r = 0; r < n; ++r) dot += std::conj(q(r, i)) * q(r, j);
      for (std::size_t r = 0; r < n; ++r) q(r, j) -= dot * q(r, i);
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < n; ++r) norm += std::norm(q(r, j));
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < n; ++r) q(r, j) /= norm;
  }
  return q;
}

}  // namespace bdsep

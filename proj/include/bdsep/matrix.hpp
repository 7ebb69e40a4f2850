#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bdsep {

using Complex = std::complex<double>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NotHermitianError : public std::domain_error {
 public:
  NotHermitianError(double deviation, double tolerance);
  double deviation() const noexcept { return deviation_; }

 private:
  double deviation_;
};

class NonFiniteError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline constexpr double kDefaultHermiticityTol = 1e-10;

/// Dense row-major complex matrix. Entries are always finite.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Complex> entries() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  Complex trace() const;
  double frobenius_norm() const;
  /// Largest |m(r,c) - conj(m(c,r))|.
  double hermiticity_deviation() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, Complex scale);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest entrywise modulus of a - b. Shapes must match.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// State vector; constructors in states.hpp return unit-norm kets.
class Ket {
 public:
  explicit Ket(std::vector<Complex> amplitudes);

  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }

  double norm() const;
  ComplexMatrix projector() const;

 private:
  std::vector<Complex> amps_;
};

/// <a|b> = sum conj(a_i) b_i.
Complex inner(const Ket& a, const Ket& b);

/// Hilbert-Schmidt inner product trace(a^dagger b).
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k pairs with values[k]
};

/// Cyclic complex Jacobi. Throws NotHermitianError if the input deviates
/// from its adjoint by more than hermiticity_tol in any entry.
HermitianEigen eigh(const ComplexMatrix& m, double hermiticity_tol = kDefaultHermiticityTol);

std::vector<double> eigvals_hermitian(const ComplexMatrix& m,
                                      double hermiticity_tol = kDefaultHermiticityTol);

/// One-sided (Hestenes) Jacobi; min(rows, cols) values, descending.
std::vector<double> singular_values(const ComplexMatrix& m);

double trace_norm(const ComplexMatrix& m);

}  // namespace bdsep

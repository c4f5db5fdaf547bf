#pragma once

// Dense complex matrices for small Hilbert spaces (dim <= 8), Hermitian
// eigendecomposition and the bracket operations used throughout the library.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qfisher {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxDim = 8;

/// Relative Hermiticity tolerance applied when wrapping a matrix.
inline constexpr double kHermitianTol = 1e-12;
/// Eigenvalues in [-kPsdClamp, 0] are treated as zero.
inline constexpr double kPsdClamp = 1e-10;

/// Row-major dim x dim complex matrix.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> diag);
  /// |a><b|
  static ComplexMatrix outer(std::span<const Complex> a, std::span<const Complex> b);

  std::size_t dim() const noexcept { return dim_; }
  Complex operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
  Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
  std::span<const Complex> entries() const noexcept { return entries_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;
  double frobenius_norm() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex s);

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
  friend ComplexMatrix operator*(ComplexMatrix m, Complex s) { return m *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(ComplexMatrix m) { return m *= -1.0; }

 private:
  std::size_t dim_;
  std::vector<Complex> entries_;
};

/// ||M - M^dagger||_F
double hermiticity_defect(const ComplexMatrix& m);

/// Tr(AB) without forming the product.
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// A ComplexMatrix that passed the Hermiticity check on construction. The
/// stored value is the exact Hermitian part of the input.
class HermitianMatrix {
 public:
  /// Throws NonHermitianInput if ||M - M^dagger||_F > 1e-12 max(1, ||M||_F).
  explicit HermitianMatrix(const ComplexMatrix& m);
  HermitianMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  /// (M + M^dagger)/2 with no tolerance check; for finite-difference output.
  static HermitianMatrix symmetrized(const ComplexMatrix& m);
  static HermitianMatrix zero(std::size_t dim);
  static HermitianMatrix identity(std::size_t dim);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  operator const ComplexMatrix&() const noexcept { return m_; }

  std::size_t dim() const noexcept { return m_.dim(); }
  Complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  double trace() const { return m_.trace().real(); }
  double frobenius_norm() const { return m_.frobenius_norm(); }

  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator*(double s, const HermitianMatrix& a);

 private:
  struct Unchecked {};
  HermitianMatrix(ComplexMatrix m, Unchecked) : m_(std::move(m)) {}

  ComplexMatrix m_;
};

struct EigenSystem {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // columns are eigenvectors
};

/// Closed form for dim 2, cyclic Jacobi sweeps otherwise.
EigenSystem herm_eigen(const HermitianMatrix& m);

/// V diag(f(lambda)) V^dagger for a precomputed eigensystem.
ComplexMatrix reassemble(const EigenSystem& es, std::span<const double> values);

/// Principal square root of a PSD matrix; throws NotPositiveSemidefinite.
HermitianMatrix psd_sqrt(const HermitianMatrix& m);

struct Brackets {
  ComplexMatrix commutator;
  ComplexMatrix anticommutator;
};

Brackets comm_anticomm(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

namespace pauli {
HermitianMatrix x();
HermitianMatrix y();
HermitianMatrix z();
}  // namespace pauli

}  // namespace qfisher

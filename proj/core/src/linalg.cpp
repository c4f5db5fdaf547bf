#include "qfisher/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qfisher/error.hpp"

namespace qfisher {

namespace {

void check_dim(std::size_t dim) {
  if (dim == 0 || dim > kMaxDim) {
    throw Error(ErrorKind::DimensionUnsupported,
                "matrix dimension " + std::to_string(dim) + " outside [1, 8]");
  }
}

void check_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                "dimensions " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
  }
}

EigenSystem eigen_2x2(const ComplexMatrix& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const Complex b = m(0, 1);
  const double bmag = std::abs(b);

  ComplexMatrix v(2);
  if (bmag == 0.0) {
    if (a <= d) {
      v(0, 0) = 1.0;
      v(1, 1) = 1.0;
      return {{a, d}, v};
    }
    v(0, 1) = 1.0;
    v(1, 0) = 1.0;
    return {{d, a}, v};
  }

  const double mean = 0.5 * (a + d);
  const double half = 0.5 * (a - d);
  const double r = std::hypot(half, bmag);
  // s = lambda_+ - d, evaluated without cancellation.
  const double s = half >= 0.0 ? half + r : bmag * bmag / (r - half);
  const double norm = std::hypot(s, bmag);

  // lower eigenvalue: (b, -s); upper eigenvalue: (s, b*)
  v(0, 0) = b / norm;
  v(1, 0) = -s / norm;
  v(0, 1) = s / norm;
  v(1, 1) = std::conj(b) / norm;
  return {{mean - r, mean + r}, v};
}

EigenSystem eigen_jacobi(const ComplexMatrix& input) {
  const std::size_t n = input.dim();
  ComplexMatrix a = input;
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = std::max(input.frobenius_norm(), 1e-300);

  auto off_norm = [&] {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    return std::sqrt(2.0 * off);
  };

  constexpr int kMaxSweeps = 64;
  int sweep = 0;
  for (; sweep < kMaxSweeps && off_norm() > 1e-15 * scale; ++sweep) {
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag < 1e-300) continue;
        const Complex phase = apq / mag;

        // Real Jacobi rotation on the phase-rotated pair, J = D P.
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex jpp = c;
        const Complex jpq = s;
        const Complex jqp = -s * std::conj(phase);
        const Complex jqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }
  if (off_norm() > 1e-12 * scale) {
    throw Error(ErrorKind::NumericalFailure, "Jacobi sweeps did not converge");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigenSystem out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t col = 0; col < n; ++col) {
    out.values[col] = a(order[col], order[col]).real();
    for (std::size_t row = 0; row < n; ++row) out.vectors(row, col) = v(row, order[col]);
  }
  return out;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) { check_dim(dim); }

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
  check_dim(dim);
  if (entries_.size() != dim * dim) {
    throw Error(ErrorKind::DimensionMismatch, "entry count does not equal dim^2");
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
  check_dim(dim_);
  entries_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) throw Error(ErrorKind::DimensionMismatch, "ragged matrix literal");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
  ComplexMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "outer product of unequal vectors");
  ComplexMatrix m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * std::conj(b[j]);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& e : entries_) s += std::norm(e);
  return std::sqrt(s);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  check_same_dim(*this, rhs);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += rhs.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  check_same_dim(*this, rhs);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= rhs.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& e : entries_) e *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_same_dim(a, b);
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

double hermiticity_defect(const ComplexMatrix& m) { return (m - m.adjoint()).frobenius_norm(); }

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_same_dim(a, b);
  Complex t = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < a.dim(); ++k) t += a(i, k) * b(k, i);
  return t;
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) : m_(m) {
  const double defect = hermiticity_defect(m);
  if (!(defect <= kHermitianTol * std::max(1.0, m.frobenius_norm()))) {
    throw Error(ErrorKind::NonHermitianInput,
                "||M - M^dagger||_F = " + std::to_string(defect) + " exceeds tolerance");
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix::HermitianMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : HermitianMatrix(ComplexMatrix(rows)) {}

HermitianMatrix HermitianMatrix::symmetrized(const ComplexMatrix& m) {
  return HermitianMatrix(0.5 * (m + m.adjoint()), Unchecked{});
}

HermitianMatrix HermitianMatrix::zero(std::size_t dim) { return HermitianMatrix(ComplexMatrix(dim), Unchecked{}); }

HermitianMatrix HermitianMatrix::identity(std::size_t dim) {
  return HermitianMatrix(ComplexMatrix::identity(dim), Unchecked{});
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(a.m_ + b.m_, HermitianMatrix::Unchecked{});
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(a.m_ - b.m_, HermitianMatrix::Unchecked{});
}

HermitianMatrix operator*(double s, const HermitianMatrix& a) {
  return HermitianMatrix(a.m_ * Complex(s), HermitianMatrix::Unchecked{});
}

EigenSystem herm_eigen(const HermitianMatrix& m) {
  if (m.dim() == 1) return {{m(0, 0).real()}, ComplexMatrix::identity(1)};
  if (m.dim() == 2) return eigen_2x2(m.matrix());
  return eigen_jacobi(m.matrix());
}

ComplexMatrix reassemble(const EigenSystem& es, std::span<const double> values) {
  const std::size_t n = es.vectors.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += es.vectors(i, k) * values[k] * std::conj(es.vectors(j, k));
      out(i, j) = s;
    }
  return out;
}

HermitianMatrix psd_sqrt(const HermitianMatrix& m) {
  const EigenSystem es = herm_eigen(m);
  std::vector<double> roots(es.values.size());
  double scale = 0.0;
  for (double lambda : es.values) scale = std::max(scale, std::abs(lambda));
  // eigenvalues at round-off level are zero; their square roots would not be
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * scale;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const double lambda = es.values[i];
    if (lambda < -kPsdClamp) {
      throw Error(ErrorKind::NotPositiveSemidefinite, "eigenvalue " + std::to_string(lambda) + " < -1e-10");
    }
    roots[i] = lambda > floor ? std::sqrt(lambda) : 0.0;
  }
  return HermitianMatrix::symmetrized(reassemble(es, roots));
}

Brackets comm_anticomm(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_same_dim(a, b);
  const ComplexMatrix ab = a * b;
  const ComplexMatrix ba = b * a;
  return {ab - ba, ab + ba};
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b + b * a; }

namespace pauli {

HermitianMatrix x() { return HermitianMatrix{{0.0, 1.0}, {1.0, 0.0}}; }
HermitianMatrix y() { return HermitianMatrix{{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}}; }
HermitianMatrix z() { return HermitianMatrix{{1.0, 0.0}, {0.0, -1.0}}; }

}  // namespace pauli

}  // namespace qfisher

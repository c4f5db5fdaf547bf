#include "qfisher/sld.hpp"

#include <cmath>
#include <string>

#include "qfisher/error.hpp"

namespace qfisher {

namespace {

constexpr double kSupportZero = 1e-12;
constexpr double kSupportLeak = 1e-10;

void check_k(double k) {
  if (!(k > 0.0 && k <= 0.5)) throw Error(ErrorKind::DomainError, "k = " + std::to_string(k) + " outside (0, 1/2]");
}

void check_finite(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw Error(ErrorKind::DomainError, "z is not finite");
}

// V^dagger M V
ComplexMatrix to_eigenbasis(const EigenSystem& es, const ComplexMatrix& m) {
  return es.vectors.adjoint() * m * es.vectors;
}

ComplexMatrix from_eigenbasis(const EigenSystem& es, const ComplexMatrix& m) {
  return es.vectors * m * es.vectors.adjoint();
}

}  // namespace

HermitianMatrix sld_solve(const DensityOp& rho, const HermitianMatrix& drho) {
  const std::size_t d = rho.dim();
  if (drho.dim() != d) throw Error(ErrorKind::DimensionMismatch, "rho and drho differ in dimension");
  const EigenSystem& es = rho.eigen();
  const ComplexMatrix dd = to_eigenbasis(es, drho);
  ComplexMatrix l(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double denom = es.values[i] + es.values[j];
      const double mag = std::abs(dd(i, j));
      if (denom <= kSupportZero) {
        if (mag > kSupportLeak) {
          throw Error(ErrorKind::SupportMismatch, "drho has weight outside the support of rho");
        }
        continue;
      }
      l(i, j) = 2.0 * dd(i, j) / denom;
    }
  }
  return HermitianMatrix::symmetrized(from_eigenbasis(es, l));
}

HermitianMatrix sld_transverse(double k, double dk, Complex z) {
  check_k(k);
  check_finite(z);
  const double m2 = std::norm(z);
  const double pre = dk / ((1.0 + m2) * k * (1.0 - k));
  return HermitianMatrix::symmetrized(ComplexMatrix{{pre * (m2 - k * (m2 + 1.0)), -pre * z},
                                                    {-pre * std::conj(z), pre * (1.0 - k * (m2 + 1.0))}});
}

HermitianMatrix sld_transverse(const QubitPoint& point, double dk) {
  if (point.chart() == Chart::North) return sld_transverse(point.k(), dk, point.coordinate());
  // P1 is the k1 eigenprojector; L = dk (P1/k - P2/(1-k)) = dk (P1 - k I)/(k(1-k))
  const double k = point.k();
  const HermitianMatrix p1 = qubit_density_matrix(1.0, Chart::South, point.coordinate());
  return (dk / (k * (1.0 - k))) * (p1 - k * HermitianMatrix::identity(2));
}

HermitianMatrix drho_sphere(double k, Complex z, Complex v) {
  check_k(k);
  check_finite(z);
  check_finite(v);
  const double k1 = k;
  const double k2 = 1.0 - k;
  const double n = 1.0 + std::norm(z);
  const double pre = (k1 - k2) / (n * n);
  const Complex zc = std::conj(z);
  const Complex vc = std::conj(v);
  const double diag = 2.0 * (zc * v).real();
  return HermitianMatrix::symmetrized(
      ComplexMatrix{{pre * diag, pre * (z * z * vc - v)}, {pre * (zc * zc * v - vc), -pre * diag}});
}

Complex lambda_of(const QubitPoint& point) {
  const Complex c = point.coordinate();
  if (point.chart() == Chart::North) {
    const double n = 1.0 + std::norm(c);
    if (c == Complex(0.0)) return 1.0;
    return std::polar(1.0 / n, -2.0 * std::arg(c));
  }
  if (c == Complex(0.0)) return 0.0;
  const double m2 = std::norm(c);
  return std::polar(m2 / (1.0 + m2), 2.0 * std::arg(c));
}

HermitianMatrix xtilde_reference(double k, Complex lambda, Complex v) {
  const double r = 2.0 * k - 1.0;  // k1 - k2
  const Complex c = v * lambda;
  return HermitianMatrix::symmetrized(ComplexMatrix{{0.0, r * std::conj(c)}, {r * c, 0.0}});
}

TangentDir::TangentDir(const QubitPoint& point, double dk, Complex v) : point_(point), dk_(dk), v_(v) {
  if (!std::isfinite(dk)) throw Error(ErrorKind::DomainError, "dk is not finite");
  check_finite(v);
}

HermitianMatrix TangentDir::drho_sphere_part() const {
  const Complex c = point_.coordinate();
  if (point_.chart() == Chart::North) return drho_sphere(point_.k(), c, v_);
  return -1.0 * drho_sphere(point_.k(), -std::conj(c), -std::conj(v_));
}

HermitianMatrix TangentDir::drho_transverse_part() const {
  const HermitianMatrix p1 = qubit_density_matrix(1.0, point_.chart(), point_.coordinate());
  const HermitianMatrix p2 = qubit_density_matrix(0.0, point_.chart(), point_.coordinate());
  return dk_ * (p1 - p2);
}

HermitianMatrix TangentDir::drho() const { return drho_sphere_part() + drho_transverse_part(); }

HermitianMatrix TangentDir::generator() const {
  const DensityOp rho = rho_of_kz(point_);
  const EigenSystem& es = rho.eigen();
  const double gap = es.values[1] - es.values[0];
  if (gap <= kSupportZero) return HermitianMatrix::zero(2);
  const ComplexMatrix dd = to_eigenbasis(es, drho_sphere_part());
  const Complex i(0.0, 1.0);
  ComplexMatrix kk(2);
  kk(0, 1) = i * dd(0, 1) / gap;
  kk(1, 0) = -i * dd(1, 0) / gap;
  return HermitianMatrix::symmetrized(from_eigenbasis(es, kk));
}

HermitianMatrix TangentDir::xtilde() const {
  if (point_.chart() == Chart::South) return drho_sphere_part();
  const ComplexMatrix u = unitary_of_z(point_.coordinate());
  const HermitianMatrix x0 = xtilde_reference(point_.k(), lambda_of(point_), v_);
  return HermitianMatrix::symmetrized(u * x0.matrix() * u.adjoint());
}

}  // namespace qfisher

#include "qfisher/states.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qfisher/error.hpp"

namespace qfisher {

namespace {

constexpr double kTraceTol = 1e-10;
constexpr double kNormTol = 1e-12;
constexpr double kPoleTol = 1e-15;

void check_k(double k) {
  if (!(k > 0.0 && k <= 0.5)) {
    throw Error(ErrorKind::DomainError, "k = " + std::to_string(k) + " outside (0, 1/2]");
  }
}

void check_finite(Complex c, const char* what) {
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
    throw Error(ErrorKind::DomainError, std::string(what) + " is not finite");
  }
}

double wrap_phase(double phi) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  phi = std::fmod(phi, two_pi);
  return phi < 0.0 ? phi + two_pi : phi;
}

}  // namespace

DensityOp::DensityOp(const HermitianMatrix& m) : m_(m), eigen_(herm_eigen(m)) {
  const double tr = m.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw Error(ErrorKind::NotNormalized, "density trace " + std::to_string(tr) + " != 1");
  }
  if (eigen_.values.front() < -kPsdClamp) {
    throw Error(ErrorKind::NotPositiveSemidefinite,
                "density eigenvalue " + std::to_string(eigen_.values.front()) + " < -1e-10");
  }
}

PureState::PureState(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.empty() || amps_.size() > kMaxDim) {
    throw Error(ErrorKind::DimensionUnsupported, "state dimension outside [1, 8]");
  }
  double n2 = 0.0;
  for (const auto& a : amps_) {
    check_finite(a, "amplitude");
    n2 += std::norm(a);
  }
  if (std::abs(n2 - 1.0) > kNormTol) {
    throw Error(ErrorKind::NotNormalized, "sum |a_i|^2 = " + std::to_string(n2));
  }
}

PureState PureState::normalized(std::vector<Complex> amplitudes) {
  double n2 = 0.0;
  for (const auto& a : amplitudes) n2 += std::norm(a);
  if (!(n2 > 0.0)) throw Error(ErrorKind::NotNormalized, "cannot normalize the zero vector");
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& a : amplitudes) a *= inv;
  return PureState(std::move(amplitudes));
}

DensityOp pure_projector(const PureState& psi) {
  return DensityOp(HermitianMatrix::symmetrized(ComplexMatrix::outer(psi.amplitudes(), psi.amplitudes())));
}

QubitPoint QubitPoint::north(double k, Complex z) {
  check_k(k);
  check_finite(z, "z");
  return QubitPoint(k, Chart::North, z);
}

QubitPoint QubitPoint::south(double k, Complex w) {
  check_k(k);
  check_finite(w, "w");
  return QubitPoint(k, Chart::South, w);
}

double QubitPoint::psi_angle() const { return std::asin(r()); }

std::optional<Complex> QubitPoint::z() const {
  if (chart_ == Chart::North) return coord_;
  if (coord_ == Complex(0.0)) return std::nullopt;
  return 1.0 / coord_;
}

double QubitPoint::chi() const {
  if (coord_ == Complex(0.0)) return 0.0;
  return chart_ == Chart::North ? std::arg(coord_) : -std::arg(coord_);
}

ComplexMatrix unitary_of_z(Complex z) {
  check_finite(z, "z");
  const double mod = std::abs(z);
  const Complex phase = mod > 0.0 ? z / mod : Complex(1.0);
  const double s = 1.0 / std::sqrt(1.0 + mod * mod);
  return ComplexMatrix{{s * mod, s * phase}, {-s * std::conj(phase), s * mod}};
}

HermitianMatrix qubit_density_matrix(double k1, Chart chart, Complex coord) {
  const double k2 = 1.0 - k1;
  const double m2 = std::norm(coord);
  const double inv = 1.0 / (1.0 + m2);
  ComplexMatrix rho(2);
  if (chart == Chart::North) {
    rho(0, 0) = (k1 * m2 + k2) * inv;
    rho(0, 1) = (k2 - k1) * coord * inv;
    rho(1, 0) = (k2 - k1) * std::conj(coord) * inv;
    rho(1, 1) = (k1 + m2 * k2) * inv;
  } else {
    rho(0, 0) = (k1 + k2 * m2) * inv;
    rho(0, 1) = (k2 - k1) * std::conj(coord) * inv;
    rho(1, 0) = (k2 - k1) * coord * inv;
    rho(1, 1) = (k1 * m2 + k2) * inv;
  }
  return HermitianMatrix::symmetrized(rho);
}

DensityOp rho_of_kz(const QubitPoint& point) {
  return DensityOp(qubit_density_matrix(point.k(), point.chart(), point.coordinate()));
}

SphericalAngles to_spherical(const QubitPoint& point) {
  const Complex c = point.coordinate();
  if (c == Complex(0.0)) {
    throw Error(ErrorKind::ChartSingularity,
                point.chart() == Chart::North ? "phi undefined at z = 0" : "phi undefined at z = infinity");
  }
  const double mod = std::abs(c);
  if (point.chart() == Chart::North) return {2.0 * std::atan2(1.0, mod), wrap_phase(std::arg(c))};
  return {2.0 * std::atan2(mod, 1.0), wrap_phase(-std::arg(c))};
}

Complex stereo_from_spherical(double theta, double phi, Chart target) {
  const double s = std::sin(0.5 * theta);
  const double c = std::cos(0.5 * theta);
  if (target == Chart::North) {
    if (std::abs(s) <= kPoleTol) throw Error(ErrorKind::ChartSingularity, "theta = 0 is z = infinity");
    return (c / s) * std::polar(1.0, phi);
  }
  if (std::abs(c) <= kPoleTol) throw Error(ErrorKind::ChartSingularity, "theta = pi is w = infinity");
  return (s / c) * std::polar(1.0, -phi);
}

QubitPoint change_chart(const QubitPoint& point, Chart target) {
  if (point.chart() == target) return point;
  const Complex c = point.coordinate();
  if (c == Complex(0.0)) throw Error(ErrorKind::ChartSingularity, "pole is not covered by the target chart");
  return target == Chart::North ? QubitPoint::north(point.k(), 1.0 / c) : QubitPoint::south(point.k(), 1.0 / c);
}

SphericalAngles spherical_velocity(Complex z, Complex v) {
  const double mod2 = std::norm(z);
  if (mod2 == 0.0) throw Error(ErrorKind::ChartSingularity, "spherical angles undefined at z = 0");
  const double mod = std::sqrt(mod2);
  const Complex zv = std::conj(z) * v;
  const double dmod = zv.real() / mod;
  return {-2.0 * dmod / (1.0 + mod2), zv.imag() / mod2};
}

S3Point s3_embed(const QubitPoint& point) {
  const double r = point.r();
  const double cos_psi = 2.0 * std::sqrt(point.k1() * point.k2());
  const Complex c = point.coordinate();
  const double m2 = std::norm(c);
  const double inv = 1.0 / (1.0 + m2);
  if (point.chart() == Chart::North) {
    return {2.0 * r * c.real() * inv, 2.0 * r * c.imag() * inv, r * (m2 - 1.0) * inv, cos_psi};
  }
  return {2.0 * r * c.real() * inv, -2.0 * r * c.imag() * inv, r * (1.0 - m2) * inv, cos_psi};
}

S3Point s3_embed(double k, double theta, double phi) {
  check_k(k);
  const double r = 1.0 - 2.0 * k;
  const double st = std::sin(theta);
  return {r * st * std::cos(phi), r * st * std::sin(phi), r * std::cos(theta), 2.0 * std::sqrt(k * (1.0 - k))};
}

}  // namespace qfisher

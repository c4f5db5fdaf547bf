#include <algorithm>
#include <cmath>
#include <string>

#include "qfisher/error.hpp"
#include "qfisher/sld.hpp"

namespace qfisher {

namespace {

constexpr double kRankGuard = 1e-9;
constexpr double kUnitTol = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

ComplexMatrix outer_sym(std::span<const Complex> a, std::span<const Complex> b) {
  return ComplexMatrix::outer(a, b) + ComplexMatrix::outer(b, a);
}

Complex path_coord(const SpherePathParams& p, double theta) {
  if (p.kind == PathKind::Line) return p.origin + theta * p.v;
  return p.origin + std::polar(p.radius, theta);
}

Complex path_velocity(const SpherePathParams& p, double theta) {
  if (p.kind == PathKind::Line) return p.v;
  return Complex(0.0, 1.0) * std::polar(p.radius, theta);
}

// A = |a'><e1| - |e1><a'| + a1 |e1><e1|, a' = a - a1 e1.
ComplexMatrix qdit_generator(const std::vector<Complex>& a) {
  const std::size_t d = a.size();
  ComplexMatrix gen(d);
  gen(0, 0) = a[0];
  for (std::size_t i = 1; i < d; ++i) {
    gen(i, 0) = a[i];
    gen(0, i) = -std::conj(a[i]);
  }
  return gen;
}

void check_rank(const DensityOp& rho, double theta) {
  if (rho.min_eigenvalue() < kRankGuard) {
    throw Error(ErrorKind::DomainError, "rank drops at theta = " + std::to_string(theta));
  }
}

}  // namespace

std::string_view to_string(CurveFamily family) noexcept {
  switch (family) {
    case CurveFamily::GreatCirclePure: return "GREAT_CIRCLE_PURE";
    case CurveFamily::SphereCurve: return "SPHERE_CURVE";
    case CurveFamily::TransverseCurve: return "TRANSVERSE_CURVE";
    case CurveFamily::PureQditCoeffs: return "PURE_QDIT_COEFFS";
    case CurveFamily::Table: return "TABLE";
  }
  return "UNKNOWN";
}

Curve Curve::great_circle(std::vector<Complex> e0, std::vector<Complex> e1) {
  const PureState a(e0);
  const PureState b(e1);
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "great-circle basis vectors differ in length");
  Complex overlap = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) overlap += std::conj(e0[i]) * e1[i];
  if (std::abs(overlap) > 1e-10) throw Error(ErrorKind::NotOrthogonal, "great-circle basis vectors not orthogonal");
  return Curve(GreatCircleParams{std::move(e0), std::move(e1)});
}

Curve Curve::sphere(const SpherePathParams& params) {
  if (!(params.k > 0.0 && params.k <= 0.5)) throw Error(ErrorKind::DomainError, "k outside (0, 1/2]");
  if (params.kind == PathKind::Circle && !(params.radius >= 0.0)) {
    throw Error(ErrorKind::DomainError, "circle radius must be non-negative");
  }
  return Curve(params);
}

Curve Curve::transverse(const TransverseParams& params) {
  if (!std::isfinite(params.k0) || !std::isfinite(params.dk)) {
    throw Error(ErrorKind::DomainError, "transverse curve parameters not finite");
  }
  return Curve(params);
}

Curve Curve::pure_qdit(std::vector<Complex> a) {
  if (a.size() < 2 || a.size() > kMaxDim) throw Error(ErrorKind::DimensionUnsupported, "coefficient count outside [2, 8]");
  if (std::abs(a[0].real()) > kUnitTol) throw Error(ErrorKind::DomainError, "a_1 must be purely imaginary");
  a[0] = Complex(0.0, a[0].imag());
  return Curve(PureQditParams{std::move(a)});
}

Curve Curve::table(std::vector<std::pair<double, HermitianMatrix>> samples) {
  if (samples.size() < 3) throw Error(ErrorKind::TableResolutionError, "TABLE needs at least three samples");
  std::stable_sort(samples.begin(), samples.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
  const std::size_t d = samples.front().second.dim();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].second.dim() != d) throw Error(ErrorKind::DimensionMismatch, "TABLE samples differ in dimension");
    if (i > 0 && !(samples[i].first > samples[i - 1].first)) {
      throw Error(ErrorKind::TableResolutionError, "TABLE theta values must be distinct");
    }
    DensityOp check(samples[i].second);
    (void)check;
  }
  return Curve(TableParams{std::move(samples)});
}

CurveFamily Curve::family() const noexcept { return static_cast<CurveFamily>(params_.index()); }

std::size_t Curve::dim() const noexcept {
  return std::visit(Overloaded{[](const GreatCircleParams& p) { return p.e0.size(); },
                               [](const SpherePathParams&) { return std::size_t{2}; },
                               [](const TransverseParams&) { return std::size_t{2}; },
                               [](const PureQditParams& p) { return p.a.size(); },
                               [](const TableParams& p) { return p.samples.front().second.dim(); }},
                    params_);
}

bool Curve::rank_two() const noexcept {
  return family() == CurveFamily::SphereCurve || family() == CurveFamily::TransverseCurve;
}

DensityOp Curve::evaluate(double theta) const {
  if (!std::isfinite(theta)) throw Error(ErrorKind::DomainError, "theta is not finite");
  return std::visit(
      Overloaded{
          [&](const GreatCircleParams& p) {
            const double c = std::cos(0.5 * theta);
            const double s = std::sin(0.5 * theta);
            std::vector<Complex> psi(p.e0.size());
            for (std::size_t i = 0; i < psi.size(); ++i) psi[i] = c * p.e0[i] + s * p.e1[i];
            return DensityOp(HermitianMatrix::symmetrized(ComplexMatrix::outer(psi, psi)));
          },
          [&](const SpherePathParams& p) {
            const Complex c = path_coord(p, theta);
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
              throw Error(ErrorKind::DomainError, "path coordinate not finite");
            }
            DensityOp rho(qubit_density_matrix(p.k, p.chart, c));
            check_rank(rho, theta);
            return rho;
          },
          [&](const TransverseParams& p) {
            const double k = p.k0 + p.dk * theta;
            if (!(k >= kRankGuard && k <= 1.0 - kRankGuard)) {
              throw Error(ErrorKind::DomainError, "k(theta) = " + std::to_string(k) + " leaves (0, 1)");
            }
            DensityOp rho(qubit_density_matrix(k, p.chart, p.coord));
            check_rank(rho, theta);
            return rho;
          },
          [&](const PureQditParams& p) {
            const ComplexMatrix gen = qdit_generator(p.a);
            // exp(theta A) = exp(-i theta H) with H = i A Hermitian
            const EigenSystem es = herm_eigen(HermitianMatrix::symmetrized(Complex(0.0, 1.0) * gen));
            const std::size_t d = p.a.size();
            std::vector<Complex> psi(d);
            for (std::size_t i = 0; i < d; ++i) {
              Complex acc = 0.0;
              for (std::size_t j = 0; j < d; ++j) {
                acc += es.vectors(i, j) * std::polar(1.0, -theta * es.values[j]) * std::conj(es.vectors(0, j));
              }
              psi[i] = acc;
            }
            return DensityOp(HermitianMatrix::symmetrized(ComplexMatrix::outer(psi, psi)));
          },
          [&](const TableParams& p) {
            const auto& s = p.samples;
            if (theta < s.front().first || theta > s.back().first) {
              throw Error(ErrorKind::DomainError, "theta outside the tabulated range");
            }
            auto hi = std::upper_bound(s.begin(), s.end(), theta,
                                       [](double t, const auto& sample) { return t < sample.first; });
            if (hi == s.end()) return DensityOp(s.back().second);
            auto lo = hi - 1;
            const double w = (theta - lo->first) / (hi->first - lo->first);
            return DensityOp((1.0 - w) * lo->second + w * hi->second);
          }},
      params_);
}

HermitianMatrix Curve::derivative(double theta) const {
  if (!std::isfinite(theta)) throw Error(ErrorKind::DomainError, "theta is not finite");
  return std::visit(
      Overloaded{
          [&](const GreatCircleParams& p) {
            const double c = std::cos(0.5 * theta);
            const double s = std::sin(0.5 * theta);
            std::vector<Complex> psi(p.e0.size());
            std::vector<Complex> dpsi(p.e0.size());
            for (std::size_t i = 0; i < psi.size(); ++i) {
              psi[i] = c * p.e0[i] + s * p.e1[i];
              dpsi[i] = 0.5 * (-s * p.e0[i] + c * p.e1[i]);
            }
            return HermitianMatrix::symmetrized(outer_sym(dpsi, psi));
          },
          [&](const SpherePathParams& p) {
            (void)evaluate(theta);
            const Complex c = path_coord(p, theta);
            const Complex v = path_velocity(p, theta);
            if (p.chart == Chart::North) return drho_sphere(p.k, c, v);
            // rho_south(k, w) = rho_north(1 - k, -w*)
            return -1.0 * drho_sphere(p.k, -std::conj(c), -std::conj(v));
          },
          [&](const TransverseParams& p) {
            (void)evaluate(theta);
            // rho is affine in k1: P2 + k1 (P1 - P2)
            const HermitianMatrix p1 = qubit_density_matrix(1.0, p.chart, p.coord);
            const HermitianMatrix p2 = qubit_density_matrix(0.0, p.chart, p.coord);
            return p.dk * (p1 - p2);
          },
          [&](const PureQditParams& p) {
            const DensityOp rho = evaluate(theta);
            const ComplexMatrix gen = qdit_generator(p.a);
            return HermitianMatrix::symmetrized(gen * rho.matrix().matrix() - rho.matrix().matrix() * gen);
          },
          [&](const TableParams& p) {
            const auto& s = p.samples;
            if (theta < s.front().first || theta > s.back().first) {
              throw Error(ErrorKind::DomainError, "theta outside the tabulated range");
            }
            // three consecutive samples nearest to theta
            auto it = std::lower_bound(s.begin(), s.end(), theta,
                                       [](const auto& sample, double t) { return sample.first < t; });
            std::size_t centre = static_cast<std::size_t>(it - s.begin());
            if (centre > 0 && (centre == s.size() || theta - s[centre - 1].first < s[centre].first - theta)) --centre;
            const std::size_t first = std::clamp<std::size_t>(centre, 1, s.size() - 2) - 1;
            const double t0 = s[first].first;
            const double t1 = s[first + 1].first;
            const double t2 = s[first + 2].first;
            const double w0 = ((theta - t1) + (theta - t2)) / ((t0 - t1) * (t0 - t2));
            const double w1 = ((theta - t0) + (theta - t2)) / ((t1 - t0) * (t1 - t2));
            const double w2 = ((theta - t0) + (theta - t1)) / ((t2 - t0) * (t2 - t1));
            return w0 * s[first].second + w1 * s[first + 1].second + w2 * s[first + 2].second;
          }},
      params_);
}

HermitianMatrix differentiate_curve(const Curve& curve, double theta, DiffMode mode, double h) {
  if (mode == DiffMode::Analytic) return curve.derivative(theta);
  if (!(h > 0.0)) throw Error(ErrorKind::DomainError, "finite-difference step must be positive");
  const DensityOp plus = curve.evaluate(theta + h);
  const DensityOp minus = curve.evaluate(theta - h);
  return (0.5 / h) * (plus.matrix() - minus.matrix());
}

}  // namespace qfisher

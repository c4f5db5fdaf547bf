#pragma once

// Parameter curves, their derivatives and the symmetric logarithmic
// derivative L solving drho = (rho L + L rho)/2.

#include <utility>
#include <variant>
#include <vector>

#include "qfisher/linalg.hpp"
#include "qfisher/states.hpp"

namespace qfisher {

enum class CurveFamily { GreatCirclePure, SphereCurve, TransverseCurve, PureQditCoeffs, Table };

std::string_view to_string(CurveFamily family) noexcept;

/// psi(theta) = cos(theta/2) e0 + sin(theta/2) e1 with <e0|e1> = 0.
struct GreatCircleParams {
  std::vector<Complex> e0;
  std::vector<Complex> e1;
};

enum class PathKind { Line, Circle };

/// Fixed k; chart coordinate c(theta) = origin + theta v (Line) or
/// origin + radius e^{i theta} (Circle).
struct SpherePathParams {
  double k = 0.25;
  Chart chart = Chart::North;
  Complex origin;
  PathKind kind = PathKind::Line;
  Complex v{1.0, 0.0};
  double radius = 1.0;
};

/// k(theta) = k0 + dk theta at a fixed chart point.
struct TransverseParams {
  double k0 = 0.25;
  double dk = 1.0;
  Chart chart = Chart::North;
  Complex coord;
};

/// psi(theta) = exp(theta A) e_1 where A is the anti-Hermitian generator with
/// A e_1 = a; a_1 must be purely imaginary.
struct PureQditParams {
  std::vector<Complex> a;
};

struct TableParams {
  std::vector<std::pair<double, HermitianMatrix>> samples;  // sorted by theta
};

class Curve {
 public:
  static Curve great_circle(std::vector<Complex> e0 = {1.0, 0.0}, std::vector<Complex> e1 = {0.0, 1.0});
  static Curve sphere(const SpherePathParams& params);
  static Curve transverse(const TransverseParams& params);
  static Curve pure_qdit(std::vector<Complex> a);
  /// Throws TableResolutionError for fewer than three samples.
  static Curve table(std::vector<std::pair<double, HermitianMatrix>> samples);

  CurveFamily family() const noexcept;
  std::size_t dim() const noexcept;
  /// True for the mixed-qubit families, which must keep rank 2.
  bool rank_two() const noexcept;

  /// Throws DomainError outside the family's domain or when a rank-2 family
  /// has min eigenvalue below 1e-9.
  DensityOp evaluate(double theta) const;
  /// Closed-form d rho / d theta (quadratic fit for TABLE).
  HermitianMatrix derivative(double theta) const;

  const std::variant<GreatCircleParams, SpherePathParams, TransverseParams, PureQditParams, TableParams>& params()
      const noexcept {
    return params_;
  }

 private:
  using Params = std::variant<GreatCircleParams, SpherePathParams, TransverseParams, PureQditParams, TableParams>;
  explicit Curve(Params p) : params_(std::move(p)) {}

  Params params_;
};

enum class DiffMode { Analytic, FiniteDifference };

inline constexpr double kDefaultFdStep = 1e-5;

HermitianMatrix differentiate_curve(const Curve& curve, double theta, DiffMode mode, double h = kDefaultFdStep);

/// Eigenbasis solution L_ij = 2 drho_ij / (lambda_i + lambda_j). Entries
/// outside the support are zero when drho vanishes there and SupportMismatch
/// otherwise.
HermitianMatrix sld_solve(const DensityOp& rho, const HermitianMatrix& drho);

/// Closed-form SLD of a pure change of k at fixed z.
HermitianMatrix sld_transverse(double k, double dk, Complex z);
HermitianMatrix sld_transverse(const QubitPoint& point, double dk);

/// Sphere-direction drho at fixed k along dz = v (north chart).
HermitianMatrix drho_sphere(double k, Complex z, Complex v);

/// lambda = e^{-2 i chi} / (1 + |z|^2); zero at z = infinity.
Complex lambda_of(const QubitPoint& point);

/// Tangent (dk, v) at a chart point; v is the velocity of the point's own
/// chart coordinate.
class TangentDir {
 public:
  TangentDir(const QubitPoint& point, double dk, Complex v);

  const QubitPoint& point() const noexcept { return point_; }
  double dk() const noexcept { return dk_; }
  Complex v() const noexcept { return v_; }

  HermitianMatrix drho() const;
  HermitianMatrix drho_sphere_part() const;
  HermitianMatrix drho_transverse_part() const;
  /// Minimal generator K with -i[K, rho] equal to the sphere part.
  HermitianMatrix generator() const;
  /// Matrix tangent X~(v) = U(z) X~_0(v) U(z)^dagger.
  HermitianMatrix xtilde() const;

 private:
  QubitPoint point_;
  double dk_;
  Complex v_;
};

/// X~_0(v) = (k1 - k2) [[0, v* lambda*], [v lambda, 0]] in the frame where
/// rho = diag(k1, k2).
HermitianMatrix xtilde_reference(double k, Complex lambda, Complex v);

}  // namespace qfisher

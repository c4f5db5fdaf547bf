#pragma once

// Pure and rank-2 mixed qubit states in stereographic charts.
//
// A mixed qubit state is rho = U(z) diag(k, 1-k) U(z)^dagger with
// k in (0, 1/2] and U(z) the stereographic lift with both fibre phases set to
// zero. The phase chi = arg z is fixed to 0 at z = 0, so every chi-dependent
// quantity is gauge-dependent at the origin. The point z = infinity is
// reached through the south chart w = 1/z.

#include <optional>
#include <span>
#include <vector>

#include "qfisher/linalg.hpp"

namespace qfisher {

/// Hermitian, unit-trace, positive-semidefinite matrix with its
/// eigendecomposition computed once at construction.
class DensityOp {
 public:
  /// Throws NotNormalized (|Tr - 1| > 1e-10) or NotPositiveSemidefinite.
  explicit DensityOp(const HermitianMatrix& m);

  const HermitianMatrix& matrix() const noexcept { return m_; }
  operator const ComplexMatrix&() const noexcept { return m_.matrix(); }
  const EigenSystem& eigen() const noexcept { return eigen_; }
  std::size_t dim() const noexcept { return m_.dim(); }
  double min_eigenvalue() const { return eigen_.values.front(); }

 private:
  HermitianMatrix m_;
  EigenSystem eigen_;
};

/// Unit vector in C^d (tolerance 1e-12 on the squared norm).
class PureState {
 public:
  explicit PureState(std::vector<Complex> amplitudes);
  static PureState normalized(std::vector<Complex> amplitudes);

  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[i]; }

 private:
  std::vector<Complex> amps_;
};

/// |psi><psi|
DensityOp pure_projector(const PureState& psi);

enum class Chart { North, South };

/// Point (k, z) of the rank-2 qubit state space S^2 x (0, 1/2].
class QubitPoint {
 public:
  static QubitPoint north(double k, Complex z);
  static QubitPoint south(double k, Complex w);
  static QubitPoint at_infinity(double k) { return south(k, 0.0); }

  double k() const noexcept { return k_; }
  double k1() const noexcept { return k_; }
  double k2() const noexcept { return 1.0 - k_; }
  /// Orbit radius k2 - k1 = 1 - 2k in [0, 1).
  double r() const noexcept { return 1.0 - 2.0 * k_; }
  /// Transverse angle Psi = asin(r) in [0, pi/2).
  double psi_angle() const;

  Chart chart() const noexcept { return chart_; }
  /// z in the north chart, w = 1/z in the south chart.
  Complex coordinate() const noexcept { return coord_; }
  bool is_at_infinity() const noexcept { return chart_ == Chart::South && coord_ == Complex(0.0); }
  /// North-chart coordinate, or nullopt at infinity.
  std::optional<Complex> z() const;
  /// arg z, with the gauge chi := 0 at z = 0.
  double chi() const;

 private:
  QubitPoint(double k, Chart chart, Complex coord) : k_(k), chart_(chart), coord_(coord) {}

  double k_;
  Chart chart_;
  Complex coord_;
};

/// U(z) = (1/sqrt(1+|z|^2)) [[|z|, e^{i chi}], [-e^{-i chi}, |z|]].
ComplexMatrix unitary_of_z(Complex z);

/// rho(k, z) = U(z) diag(k, 1-k) U(z)^dagger in closed form.
DensityOp rho_of_kz(const QubitPoint& point);

/// Closed-form rho entries for any k1 (not restricted to (0, 1/2]); used by
/// curve families that move through k.
HermitianMatrix qubit_density_matrix(double k1, Chart chart, Complex coord);

struct SphericalAngles {
  double theta;
  double phi;
};

/// Inverse of z = cot(theta/2) e^{i phi}. Throws ChartSingularity at the
/// poles, where phi is undefined.
SphericalAngles to_spherical(const QubitPoint& point);

/// North: z = cot(theta/2) e^{i phi}; south: w = tan(theta/2) e^{-i phi}.
/// Throws ChartSingularity at the pole the target chart excludes.
Complex stereo_from_spherical(double theta, double phi, Chart target);

/// Re-express the point in the other chart (w = 1/z).
QubitPoint change_chart(const QubitPoint& point, Chart target);

/// Push a stereographic velocity v = dz/dt forward to (dtheta/dt, dphi/dt).
SphericalAngles spherical_velocity(Complex z, Complex v);

struct S3Point {
  double x1, x2, x3, x4;
};

/// (sin Psi sin theta cos phi, sin Psi sin theta sin phi, sin Psi cos theta,
/// cos Psi) with sin Psi = 1 - 2k. Evaluated from the stereographic
/// coordinate, so the poles need no special casing.
S3Point s3_embed(const QubitPoint& point);
S3Point s3_embed(double k, double theta, double phi);

}  // namespace qfisher

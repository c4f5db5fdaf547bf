#include "qfisher/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <thread>

#include "qfisher/error.hpp"
#include "qfisher/sld.hpp"

namespace qfisher {

namespace {

constexpr double kZero = 1e-12;
constexpr double kSldGap = 1e-10;
constexpr int kGoldenSteps = 48;
// dp^2/p carries relative error ~eps/p, so outcomes rarer than this are not
// trusted by the search (a pure state has maximisers with p = 1/2 anyway)
constexpr double kSearchProbabilityFloor = 1e-6;

double search_objective(const std::array<double, 3>& r, const std::array<double, 3>& dr, const std::array<double, 3>& n) {
  const double rn = r[0] * n[0] + r[1] * n[1] + r[2] * n[2];
  if (0.5 * (1.0 - std::abs(rn)) < kSearchProbabilityFloor) return -std::numeric_limits<double>::infinity();
  return qubit_pair_cfi(r, dr, n);
}

using Vec3 = std::array<double, 3>;

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 normalized(const Vec3& a) {
  const double n = std::sqrt(dot(a, a));
  return {a[0] / n, a[1] / n, a[2] / n};
}

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3 bloch(const ComplexMatrix& m) {
  return {2.0 * m(0, 1).real(), -2.0 * m(0, 1).imag(), (m(0, 0) - m(1, 1)).real()};
}

Vec3 fibonacci_point(int i, int n) {
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  const double y = 1.0 - 2.0 * (i + 0.5) / n;
  const double rad = std::sqrt(std::max(0.0, 1.0 - y * y));
  const double phi = golden * i;
  return {rad * std::cos(phi), rad * std::sin(phi), y};
}

struct Best {
  double value = -1.0;
  int index = 0;
};

Best scan_range(const Vec3& r, const Vec3& dr, int n, int begin, int end) {
  Best best;
  for (int i = begin; i < end; ++i) {
    const double v = search_objective(r, dr, fibonacci_point(i, n));
    if (v > best.value) best = {v, i};
  }
  return best;
}

Vec3 rotate(const Vec3& n, const Vec3& e, double t) {
  const double c = std::cos(t);
  const double s = std::sin(t);
  return normalized({c * n[0] + s * e[0], c * n[1] + s * e[1], c * n[2] + s * e[2]});
}

// Maximize f(rotate(n, e, t)) for t in [-w, w]; returns the best t found.
double golden_max(const Vec3& r, const Vec3& dr, const Vec3& n, const Vec3& e, double w) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = -w;
  double b = w;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = search_objective(r, dr, rotate(n, e, x1));
  double f2 = search_objective(r, dr, rotate(n, e, x2));
  for (int it = 0; it < kGoldenSteps; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = search_objective(r, dr, rotate(n, e, x2));
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = search_objective(r, dr, rotate(n, e, x1));
    }
  }
  return f1 >= f2 ? x1 : x2;
}

}  // namespace

PovmDiagnostic povm_validate(const std::vector<HermitianMatrix>& elements) {
  try {
    return inspect_povm(elements);
  } catch (const Error& e) {
    return {false, e.what()};
  }
}

AttainabilityReport attainability_check(const DensityOp& rho, const HermitianMatrix& drho, const HermitianMatrix& m) {
  if (m.dim() != rho.dim()) throw Error(ErrorKind::DimensionMismatch, "POVM element and rho differ in dimension");
  const HermitianMatrix l = sld_solve(rho, drho);
  const ComplexMatrix sm = psd_sqrt(m).matrix();
  const ComplexMatrix sr = psd_sqrt(rho.matrix()).matrix();
  const ComplexMatrix a = sm * l.matrix() * sr;
  const ComplexMatrix b = sm * sr;
  AttainabilityReport out;
  const double bnorm = b.frobenius_norm();
  if (bnorm <= kZero) {
    out.attains = true;
    out.degenerate_element = true;
    return out;
  }
  const Complex c = trace_product(b.adjoint(), a) / (bnorm * bnorm);
  out.c = c.real();
  out.c_imag = c.imag();
  out.residual = (a - c * b).frobenius_norm();
  out.attains = out.residual <= kAttainTol * std::max(1.0, bnorm) && std::abs(c.imag()) <= kAttainTol;
  return out;
}

ReachResult reach_check_pure(std::span<const Complex> xi, std::span<const Complex> a) {
  if (xi.size() != a.size() || a.empty()) throw Error(ErrorKind::DimensionMismatch, "xi and a differ in length");
  if (std::abs(a[0].real()) > kZero) throw Error(ErrorKind::DomainError, "a_1 must be purely imaginary");
  bool moving = false;
  for (std::size_t i = 1; i < a.size(); ++i) moving = moving || std::abs(a[i]) > kZero;
  if (!moving) throw Error(ErrorKind::ZeroVelocityCurve, "all a_i with i >= 2 vanish");
  Complex s = 0.0;
  for (std::size_t i = 1; i < a.size(); ++i) s += xi[i] * std::conj(a[i]);
  const bool xi_zero = std::abs(xi[0]) <= kZero;
  const bool s_zero = std::abs(s) <= kZero;
  ReachResult out;
  out.caveat = xi_zero;
  if (xi_zero != s_zero) return out;
  const double im = std::abs((std::conj(xi[0]) * s).imag());
  out.reaches = im <= 1e-10 * std::max(std::abs(xi[0] * s), 1e-30);
  return out;
}

MixedConditionReport mixed_conditions_check(Complex xi1, Complex xi2, double k, Complex lambda) {
  if (!(k > 0.0 && k < 0.5)) throw Error(ErrorKind::DomainError, "k = " + std::to_string(k) + " outside (0, 1/2)");
  if (xi1 == Complex(0.0) && xi2 == Complex(0.0)) throw Error(ErrorKind::DomainError, "xi = (0, 0)");
  const double k1 = k;
  const double k2 = 1.0 - k;
  const double r2 = 2.0 * (k1 - k2);
  const double n1 = std::norm(xi1);
  const double n2 = std::norm(xi2);
  const Complex x12 = xi1 * std::conj(xi2);  // xi1 xi2*
  const Complex x21 = std::conj(xi1) * xi2;  // xi1* xi2
  const std::array<Complex, 4> lhs{n1, n2, x21, x12};
  const std::array<Complex, 4> rhs{
      n1 / k1 + r2 * lambda * x12,
      -n2 / k2 + r2 * std::conj(lambda) * x21,
      x21 / k1 + r2 * lambda * n2,
      -x12 / k2 + r2 * std::conj(lambda) * n1,
  };
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    num += (std::conj(rhs[i]) * lhs[i]).real();
    den += std::norm(rhs[i]);
  }
  MixedConditionReport out;
  out.r = den > 0.0 ? num / den : 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    out.residuals[i] = std::abs(lhs[i] - out.r * rhs[i]);
    worst = std::max(worst, out.residuals[i]);
  }
  out.satisfiable = worst <= kAttainTol;
  out.necessary_condition = std::abs((lambda * x12).imag()) <= 1e-10;
  return out;
}

Povm sld_eigenbasis_povm(const DensityOp& rho, const HermitianMatrix& drho) {
  const HermitianMatrix l = sld_solve(rho, drho);
  const EigenSystem es = herm_eigen(l);
  for (std::size_t i = 1; i < es.values.size(); ++i) {
    if (es.values[i] - es.values[i - 1] < kSldGap) throw Error(ErrorKind::DegenerateSld, "SLD spectrum is degenerate");
  }
  return Povm::from_basis(es.vectors);
}

double qubit_pair_cfi(const std::array<double, 3>& r, const std::array<double, 3>& dr, const std::array<double, 3>& n) {
  const double rn = dot(r, n);
  const double drn = dot(dr, n);
  double total = 0.0;
  for (double sign : {1.0, -1.0}) {
    const double p = 0.5 * (1.0 + sign * rn);
    if (p <= kProbabilityCutoff) continue;
    const double dp = 0.5 * sign * drn;
    total += dp * dp / p;
  }
  return total;
}

OptimizeResult maximize_cfi(const DensityOp& rho, const HermitianMatrix& drho, const OptimizeOptions& options) {
  if (rho.dim() != 2) throw Error(ErrorKind::DimensionUnsupported, "maximize_cfi supports qubits only");
  if (drho.dim() != 2) throw Error(ErrorKind::DimensionMismatch, "drho is not 2x2");
  if (options.grid_n < 8) throw Error(ErrorKind::DomainError, "grid size must be at least 8");
  if (options.refine_iters < 0) throw Error(ErrorKind::DomainError, "refinement count must be non-negative");

  OptimizeResult out;
  out.qfi = quantum_fisher(rho, drho);
  const EigenSystem les = herm_eigen(sld_solve(rho, drho));
  out.degenerate = les.values.back() - les.values.front() < kSldGap;

  const Vec3 r = bloch(rho.matrix());
  const Vec3 dr = bloch(drho);
  const int n = options.grid_n;

  const int jobs = static_cast<int>(std::clamp<unsigned>(options.jobs, 1u, static_cast<unsigned>(n)));
  std::vector<Best> partial(static_cast<std::size_t>(jobs));
  const auto bounds = [&](int j) { return std::pair<int, int>{n * j / jobs, n * (j + 1) / jobs}; };
  if (jobs == 1) {
    partial[0] = scan_range(r, dr, n, 0, n);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(jobs));
    for (int j = 0; j < jobs; ++j) {
      workers.emplace_back([&, j] {
        const auto [lo, hi] = bounds(j);
        partial[static_cast<std::size_t>(j)] = scan_range(r, dr, n, lo, hi);
      });
    }
    for (auto& w : workers) w.join();
  }
  Best best = partial[0];
  for (const Best& b : partial) {
    if (b.value > best.value) best = b;
  }

  Vec3 cur = fibonacci_point(best.index, n);
  double value = best.value;
  double window = 2.0 * std::sqrt(4.0 * std::numbers::pi / n);
  for (int it = 0; it < options.refine_iters; ++it) {
    // tangent frame at the current centre
    const Vec3 helper = std::abs(cur[2]) < 0.9 ? Vec3{0.0, 0.0, 1.0} : Vec3{1.0, 0.0, 0.0};
    const Vec3 e1 = normalized(cross(cur, helper));
    const Vec3 e2 = cross(cur, e1);
    const std::array<Vec3, 4> axes{e1, e2, normalized({e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]}),
                                   normalized({e1[0] - e2[0], e1[1] - e2[1], e1[2] - e2[2]})};
    for (const Vec3& e : axes) {
      const double t = golden_max(r, dr, cur, e, window);
      const Vec3 cand = rotate(cur, e, t);
      const double v = search_objective(r, dr, cand);
      if (v > value) {
        value = v;
        cur = cand;
      }
    }
    window *= 0.5;
  }
  out.n = cur;
  out.value = value;
  out.gap = out.qfi - value;
  return out;
}

}  // namespace qfisher

#include "qfisher/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "qfisher/error.hpp"
#include "qfisher/fisher.hpp"
#include "qfisher/geometry.hpp"
#include "qfisher/optimize.hpp"
#include "qfisher/sld.hpp"
#include "qfisher/states.hpp"

namespace qfisher::verify {

namespace {

using Rng = std::mt19937_64;
constexpr double kPi = std::numbers::pi;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Complex random_complex(Rng& rng, double scale = 1.0) {
  return {uniform(rng, -scale, scale), uniform(rng, -scale, scale)};
}

Complex random_disc(Rng& rng, double rmin, double rmax) {
  const double r = std::sqrt(uniform(rng, rmin * rmin, rmax * rmax));
  return std::polar(r, uniform(rng, 0.0, 2.0 * kPi));
}

std::vector<Complex> random_vector(Rng& rng, std::size_t d) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<Complex> v(d);
  for (auto& c : v) c = {n(rng), n(rng)};
  return v;
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  Complex acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

void normalize(std::vector<Complex>& v) {
  const double n = std::sqrt(inner(v, v).real());
  for (auto& c : v) c /= n;
}

// Columns are orthonormalized Gaussian vectors.
ComplexMatrix random_unitary(Rng& rng, std::size_t d) {
  std::vector<std::vector<Complex>> cols;
  for (std::size_t j = 0; j < d; ++j) {
    auto v = random_vector(rng, d);
    for (const auto& c : cols) {
      const Complex p = inner(c, v);
      for (std::size_t i = 0; i < d; ++i) v[i] -= p * c[i];
    }
    normalize(v);
    cols.push_back(std::move(v));
  }
  ComplexMatrix u(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) u(i, j) = cols[j][i];
  }
  return u;
}

struct Draw {
  double k;
  Complex z;
  Complex v;
  double dk;
};

Draw random_draw(Rng& rng, double kmin = 0.01, double zmin = 0.0, double zmax = 5.0) {
  Draw d;
  d.k = 0.5 - uniform(rng, 0.0, 0.5 - kmin);  // (kmin, 0.5]
  d.z = random_disc(rng, zmin, zmax);
  d.v = random_complex(rng);
  d.dk = uniform(rng, -1.0, 1.0);
  return d;
}

HermitianMatrix conj_by(const ComplexMatrix& u, const ComplexMatrix& m) {
  return HermitianMatrix::symmetrized(u * m * u.adjoint());
}

class Tracker {
 public:
  Tracker(std::string name, double tol) : name_(std::move(name)), tol_(tol) {}

  void observe(double deviation, const std::string& where = {}) {
    if (!(deviation <= worst_) || std::isnan(deviation)) {
      worst_ = std::isnan(deviation) ? std::numeric_limits<double>::infinity() : deviation;
      where_ = where;
    }
    ++count_;
  }
  void fail(const std::string& why) {
    failed_ = true;
    if (why_.empty()) why_ = why;
  }

  CheckResult result() const {
    CheckResult r;
    r.name = name_;
    r.tolerance = tol_;
    r.worst = count_ == 0 ? 0.0 : worst_;
    r.passed = !failed_ && r.worst <= tol_;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%d cases, worst %.3e (tol %.1e)", count_, r.worst, tol_);
    r.detail = buf;
    if (!where_.empty()) r.detail += " at " + where_;
    if (!why_.empty()) r.detail += "; " + why_;
    return r;
  }

 private:
  std::string name_;
  double tol_;
  double worst_ = -std::numeric_limits<double>::infinity();
  int count_ = 0;
  bool failed_ = false;
  std::string where_;
  std::string why_;
};

std::string describe(const Draw& d) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "k=%.6g z=(%.6g,%.6g) v=(%.6g,%.6g) dk=%.6g", d.k, d.z.real(), d.z.imag(),
                d.v.real(), d.v.imag(), d.dk);
  return buf;
}

CheckResult value_check(const std::string& name, double got, double want, double tol) {
  Tracker t(name, tol);
  t.observe(std::abs(got - want));
  return t.result();
}

CheckResult flag_check(const std::string& name, bool ok, const std::string& detail) {
  CheckResult r;
  r.name = name;
  r.passed = ok;
  r.worst = ok ? 0.0 : 1.0;
  r.detail = detail;
  return r;
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> suite_sld_residual(Rng& rng) {
  Tracker residual("sld residual", 1e-10);
  Tracker sphere_sld("sphere SLD equals 2 drho", 1e-10);
  Tracker anti("rho drho + drho rho = drho on sphere directions", 1e-10);
  Tracker trans("transverse closed form vs solver", 1e-10);
  for (int i = 0; i < 500; ++i) {
    const Draw d = random_draw(rng);
    const QubitPoint p = QubitPoint::north(d.k, d.z);
    const DensityOp rho = rho_of_kz(p);
    const TangentDir t(p, d.dk, d.v);
    const HermitianMatrix drho = t.drho();
    const HermitianMatrix l = sld_solve(rho, drho);
    const ComplexMatrix rm = rho.matrix();
    residual.observe((0.5 * (rm * l.matrix() + l.matrix() * rm) - drho.matrix()).frobenius_norm(), describe(d));

    const HermitianMatrix ds = t.drho_sphere_part();
    sphere_sld.observe((sld_solve(rho, ds) - 2.0 * ds).frobenius_norm(), describe(d));
    anti.observe((anticommutator(rm, ds) - ds.matrix()).frobenius_norm(), describe(d));

    const HermitianMatrix lt = sld_transverse(d.k, d.dk, d.z);
    trans.observe((lt - sld_solve(rho, t.drho_transverse_part())).frobenius_norm(), describe(d));
  }
  return {residual.result(), sphere_sld.result(), anti.result(), trans.result()};
}

std::vector<CheckResult> suite_bound_chain(Rng& rng) {
  Tracker qubit("classical <= quantum (qubit projective)", 1e-9);
  for (int i = 0; i < 500; ++i) {
    const Draw d = random_draw(rng);
    const QubitPoint p = QubitPoint::north(d.k, d.z);
    const DensityOp rho = rho_of_kz(p);
    const HermitianMatrix drho = TangentDir(p, d.dk, d.v).drho();
    const Povm povm = Povm::qubit_projective(uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1));
    const double cfi = classical_fisher(rho, drho, povm);
    const double qfi = quantum_fisher(rho, drho);
    qubit.observe(std::max(0.0, cfi - qfi), describe(d));
  }
  Tracker qdit("classical <= quantum (pure q-dit)", 1e-9);
  for (int i = 0; i < 200; ++i) {
    const std::size_t dim = 2 + static_cast<std::size_t>(i % 3);
    std::vector<Complex> a = random_vector(rng, dim);
    a[0] = Complex(0.0, a[0].imag());
    const ComplexMatrix u = random_unitary(rng, dim);
    std::vector<std::vector<Complex>> xi(dim, std::vector<Complex>(dim));
    for (std::size_t x = 0; x < dim; ++x) {
      for (std::size_t j = 0; j < dim; ++j) xi[x][j] = u(x, j);
    }
    const FisherPair f = pure_qdit_fisher(a, xi);
    qdit.observe(std::max(0.0, f.classical - f.quantum), "d=" + std::to_string(dim));
  }
  return {qubit.result(), qdit.result()};
}

std::vector<CheckResult> suite_closed_forms(Rng& rng) {
  Tracker total("closed-form total vs solver", 1e-9);
  Tracker split("eigenbasis split vs closed-form parts", 1e-9);
  for (int i = 0; i < 200; ++i) {
    const Draw d = random_draw(rng);
    const QubitPoint p = QubitPoint::north(d.k, d.z);
    const DensityOp rho = rho_of_kz(p);
    const HermitianMatrix drho = TangentDir(p, d.dk, d.v).drho();
    const QfiSplit closed = qfi_qubit_closed_form(d.k, d.dk, d.z, d.v);
    total.observe(std::abs(closed.total - quantum_fisher(rho, drho)), describe(d));
    const QfiSplit dec = qfi_decomposed(rho, drho);
    split.observe(std::max(std::abs(dec.sphere - closed.sphere), std::abs(dec.transverse - closed.transverse)),
                  describe(d));
  }
  const QfiSplit ref = qfi_qubit_closed_form(0.25, 1.0, 0.0, 0.0);
  return {total.result(), split.result(), value_check("transverse QFI at k=1/4, dk=1 is 16/3", ref.transverse,
                                                      16.0 / 3.0, 1e-12)};
}

std::vector<CheckResult> suite_mixing(Rng& rng) {
  Tracker t("sphere QFI = (1-2k)^2 x pure QFI", 1e-9);
  for (int i = 0; i < 100; ++i) {
    const Draw d = random_draw(rng);
    const QubitPoint p = QubitPoint::north(d.k, d.z);
    const double mixed = quantum_fisher(rho_of_kz(p), drho_sphere(d.k, d.z, d.v));
    // pure family psi(t) = (1, (z + t v)*) / norm
    const std::vector<Complex> phi{1.0, std::conj(d.z)};
    const std::vector<Complex> dphi{0.0, std::conj(d.v)};
    const double n = inner(phi, phi).real();
    const double pure = 4.0 * (inner(dphi, dphi).real() / n - std::norm(inner(phi, dphi)) / (n * n));
    const double r = 1.0 - 2.0 * d.k;
    t.observe(std::abs(mixed - r * r * pure), describe(d));
  }
  return {t.result()};
}

S3Tangent push_to_s3(double k, Complex z, double dk, Complex v) {
  const SphericalAngles dang = spherical_velocity(z, v);
  return {-dk / std::sqrt(k * (1.0 - k)), dang.theta, dang.phi};
}

std::vector<CheckResult> suite_s3(Rng& rng) {
  Tracker pull("total Fisher metric = round S^3 pullback", 1e-8);
  Tracker fd("S^3 embedding derivative (independent finite-difference route)", 1e-7);
  Tracker norm("embedding has unit norm", 1e-12);
  for (int i = 0; i < 100; ++i) {
    const Draw d = random_draw(rng, 0.01, 0.05, 5.0);
    const Complex v2 = random_complex(rng);
    const double dk2 = uniform(rng, -1.0, 1.0);
    const QubitPoint p = QubitPoint::north(d.k, d.z);
    const DensityOp rho = rho_of_kz(p);
    const double fisher =
        fisher_tensor_general(rho, TangentDir(p, d.dk, d.v).drho(), TangentDir(p, dk2, v2).drho()).sym();
    const SphericalAngles ang = to_spherical(p);
    const double s3 = round_s3_metric(p.psi_angle(), ang.theta, ang.phi, push_to_s3(d.k, d.z, d.dk, d.v),
                                      push_to_s3(d.k, d.z, dk2, v2));
    pull.observe(std::abs(fisher - s3), describe(d));

    const S3Point x = s3_embed(p);
    norm.observe(std::abs(x.x1 * x.x1 + x.x2 * x.x2 + x.x3 * x.x3 + x.x4 * x.x4 - 1.0));

    // five-point stencil in R^4 away from the k endpoints
    const double k = uniform(rng, 0.1, 0.45);
    const double h = 1e-4;
    auto deriv = [&](double dk, Complex v) {
      std::array<double, 4> out{};
      const double w[4] = {1.0, -8.0, 8.0, -1.0};
      const double s[4] = {-2.0, -1.0, 1.0, 2.0};
      for (int j = 0; j < 4; ++j) {
        const S3Point q = s3_embed(QubitPoint::north(k + s[j] * h * dk, d.z + s[j] * h * v));
        out[0] += w[j] * q.x1;
        out[1] += w[j] * q.x2;
        out[2] += w[j] * q.x3;
        out[3] += w[j] * q.x4;
      }
      for (double& c : out) c /= 12.0 * h;
      return out;
    };
    const auto e1 = deriv(d.dk, d.v);
    const auto e2 = deriv(dk2, v2);
    const double euclid = e1[0] * e2[0] + e1[1] * e2[1] + e1[2] * e2[2] + e1[3] * e2[3];
    const QubitPoint q = QubitPoint::north(k, d.z);
    const double fq =
        fisher_tensor_general(rho_of_kz(q), TangentDir(q, d.dk, d.v).drho(), TangentDir(q, dk2, v2).drho()).sym();
    fd.observe(std::abs(euclid - fq) / std::max(1.0, std::abs(fq)), describe(d));
  }
  return {pull.result(), fd.result(), norm.result()};
}

std::vector<CheckResult> suite_fisher_tensor(Rng& rng) {
  Tracker oracle("closed form vs 4 Tr[rho0 drho0 drho0']", 1e-10);
  Tracker general("closed form vs Tr[rho L1 L2]", 1e-9);
  Tracker im("(1/4) Im F = -(i/2) Tr rho[X~, X~']", 1e-10);
  Tracker re("(1/4) Re F = (1/2) Tr rho{X~, X~'}", 1e-10);
  Tracker herm("F(X1, X2) = conj F(X2, X1)", 1e-10);
  Tracker equi("equivariance under conjugation", 1e-10);
  for (int i = 0; i < 200; ++i) {
    const Draw d = random_draw(rng);
    const Complex v2 = random_complex(rng);
    const QubitPoint p = QubitPoint::north(d.k, d.z);
    const DensityOp rho = rho_of_kz(p);
    const FisherTensorValue f = fisher_tensor(d.k, d.z, d.v, v2);

    const Complex lambda = lambda_of(p);
    const HermitianMatrix rho0 = HermitianMatrix::symmetrized(
        ComplexMatrix{{d.k, 0.0}, {0.0, 1.0 - d.k}});
    const HermitianMatrix x0 = xtilde_reference(d.k, lambda, d.v);
    const HermitianMatrix x0b = xtilde_reference(d.k, lambda, v2);
    const Complex o = 4.0 * trace_product(rho0, x0.matrix() * x0b.matrix());
    oracle.observe(std::abs(o - f.value), describe(d));

    const HermitianMatrix d1 = drho_sphere(d.k, d.z, d.v);
    const HermitianMatrix d2 = drho_sphere(d.k, d.z, v2);
    const FisherTensorValue g = fisher_tensor_general(rho, d1, d2);
    general.observe(std::abs(g.value - f.value), describe(d));
    herm.observe(std::abs(g.value - std::conj(fisher_tensor_general(rho, d2, d1).value)), describe(d));

    const KahlerPair kp = fs_kks_at(rho, TangentDir(p, 0.0, d.v).xtilde(), TangentDir(p, 0.0, v2).xtilde());
    im.observe(std::abs(0.25 * f.antisym() - kp.omega), describe(d));
    re.observe(std::abs(0.25 * f.sym() - kp.g), describe(d));

    const ComplexMatrix w = random_unitary(rng, 2);
    const HermitianMatrix e1 = TangentDir(p, d.dk, d.v).drho();
    const HermitianMatrix e2 = TangentDir(p, uniform(rng, -1, 1), v2).drho();
    const FisherTensorValue before = fisher_tensor_general(rho, e1, e2);
    const FisherTensorValue after =
        fisher_tensor_general(DensityOp(conj_by(w, rho.matrix())), conj_by(w, e1), conj_by(w, e2));
    equi.observe(std::abs(before.value - after.value), describe(d));
  }
  const FisherTensorValue ref = fisher_tensor(0.25, 0.0, 1.0, Complex(0.0, 1.0));
  return {oracle.result(),  general.result(), im.result(), re.result(), herm.result(), equi.result(),
          value_check("F(k=1/4, z=0, v=1, v'=i) = -i/2", std::abs(ref.value - Complex(0.0, -0.5)), 0.0, 1e-12)};
}

std::vector<CheckResult> suite_g_kks(Rng& rng) {
  Tracker rel("(k1-k2) Re F = 4 g_kks", 1e-10);
  Tracker closed("g_kks = (k1-k2)^3 |lambda|^2 Re(v* v')", 1e-10);
  for (int i = 0; i < 200; ++i) {
    const Draw d = random_draw(rng);
    const Complex v2 = random_complex(rng);
    const QubitPoint p = QubitPoint::north(d.k, d.z);
    const DensityOp rho = rho_of_kz(p);
    const double g = g_kks(rho, TangentDir(p, 0.0, d.v).xtilde(), TangentDir(p, 0.0, v2).xtilde());
    const double r = 2.0 * d.k - 1.0;
    rel.observe(std::abs(r * fisher_tensor(d.k, d.z, d.v, v2).sym() - 4.0 * g), describe(d));
    const double lam2 = std::norm(lambda_of(p));
    closed.observe(std::abs(g - r * r * r * lam2 * (std::conj(d.v) * v2).real()), describe(d));
  }
  const QubitPoint p = QubitPoint::north(0.25, 0.0);
  const double ref =
      g_kks(rho_of_kz(p), TangentDir(p, 0.0, 1.0).xtilde(), TangentDir(p, 0.0, 1.0).xtilde());
  return {rel.result(), closed.result(), value_check("g_kks(k=1/4, z=0, v=v'=1) = -1/8", ref, -0.125, 1e-12)};
}

std::vector<CheckResult> suite_kahler(Rng& rng) {
  Tracker ident("pure FS/KKS = (Re, Im) <chi|chi'>", 1e-10);
  Tracker ident2("pure QFI = 2 Tr rho{K, K}", 1e-9);
  Tracker hermit("pull-back Hermitian form = g + i omega", 1e-9);
  Tracker pull("coordinate metric = round S^2 pullback", 1e-8);
  Tracker jsq("J^2 = -1 on tangents", 1e-12);
  Tracker jmap("J X~(v) = X~(iv)", 1e-10);
  for (int i = 0; i < 200; ++i) {
    const std::size_t dim = 2 + static_cast<std::size_t>(i % 3);
    auto psi = random_vector(rng, dim);
    normalize(psi);
    auto project_out = [&](std::vector<Complex> c) {
      const Complex pc = inner(psi, c);
      for (std::size_t j = 0; j < dim; ++j) c[j] -= pc * psi[j];
      return c;
    };
    const auto dpsi1 = random_vector(rng, dim);
    const auto dpsi2 = random_vector(rng, dim);
    const auto chi1 = project_out(dpsi1);
    const auto chi2 = project_out(dpsi2);
    const DensityOp rho = pure_projector(PureState(psi));
    const Generator g1 = k_generator(psi, chi1);
    const Generator g2 = k_generator(psi, chi2);
    const KahlerPair kp = fs_kks_at(rho, g1.k, g2.k);
    const Complex ov = inner(chi1, chi2);
    ident.observe(std::max(std::abs(kp.g - ov.real()), std::abs(kp.omega - ov.imag())));

    const double qfi = quantum_fisher(rho, g1.x);
    ident2.observe(std::abs(qfi - 2.0 * trace_product(rho, anticommutator(g1.k, g1.k)).real()));

    const Complex h = inner(dpsi1, dpsi2) - inner(dpsi1, psi) * inner(psi, dpsi2);
    hermit.observe(std::abs(h - Complex(kp.g, kp.omega)));

    const Draw d = random_draw(rng, 0.01, 0.05, 5.0);
    const Complex v2 = random_complex(rng);
    const KahlerPair cf = coordinate_forms(d.z, d.v, v2);
    const QubitPoint p = QubitPoint::north(d.k, d.z);
    const SphericalAngles ang = to_spherical(p);
    const SphericalAngles t1 = spherical_velocity(d.z, d.v);
    const SphericalAngles t2 = spherical_velocity(d.z, v2);
    // sin^2 Psi = 1 removes the transverse scaling
    const double s2 = round_s3_metric(kPi / 2.0, ang.theta, ang.phi, {0.0, t1.theta, t1.phi}, {0.0, t2.theta, t2.phi});
    pull.observe(std::abs(cf.g - s2), describe(d));

    const DensityOp mixed = rho_of_kz(p);
    const HermitianMatrix x = TangentDir(p, 0.0, d.v).xtilde();
    const HermitianMatrix jx = complex_structure(mixed, x);
    jsq.observe((complex_structure(mixed, jx) + x).frobenius_norm());
    jmap.observe((jx - TangentDir(p, 0.0, Complex(0.0, 1.0) * d.v).xtilde()).frobenius_norm(), describe(d));
  }
  return {ident.result(), ident2.result(), hermit.result(), pull.result(), jsq.result(), jmap.result()};
}

struct Scenario {
  std::string label;
  DensityOp rho;
  HermitianMatrix drho;
};

std::vector<Scenario> optimizer_scenarios(Rng& rng) {
  std::vector<Scenario> out;
  const Curve gc = Curve::great_circle();
  for (int i = 0; i < 7; ++i) {
    const double theta = uniform(rng, 0.0, 2.0 * kPi);
    out.push_back({"great circle theta=" + std::to_string(theta), gc.evaluate(theta), gc.derivative(theta)});
  }
  for (int i = 0; i < 7; ++i) {
    SpherePathParams sp;
    sp.k = uniform(rng, 0.05, 0.45);
    sp.origin = random_disc(rng, 0.0, 3.0);
    sp.v = random_disc(rng, 0.3, 1.0);
    const Curve c = Curve::sphere(sp);
    out.push_back({"sphere k=" + std::to_string(sp.k), c.evaluate(0.0), c.derivative(0.0)});
  }
  for (int i = 0; i < 6; ++i) {
    TransverseParams tp;
    tp.k0 = uniform(rng, 0.05, 0.45);
    tp.dk = uniform(rng, 0.2, 1.0);
    tp.coord = random_disc(rng, 0.0, 3.0);
    const Curve c = Curve::transverse(tp);
    out.push_back({"transverse k=" + std::to_string(tp.k0), c.evaluate(0.0), c.derivative(0.0)});
  }
  return out;
}

std::vector<CheckResult> suite_optimizer(Rng& rng) {
  Tracker reach("maximize_cfi reaches QFI (grid 1024, 40 rounds)", 1e-6);
  Tracker over("maximize_cfi never exceeds QFI", 1e-9);
  Tracker eig("SLD eigenbasis POVM attains QFI", 1e-8);
  for (const Scenario& s : optimizer_scenarios(rng)) {
    const OptimizeResult r = maximize_cfi(s.rho, s.drho, {1024, 40, 1});
    reach.observe(std::max(0.0, r.qfi - r.value), s.label);
    over.observe(std::max(0.0, r.value - r.qfi), s.label);
    eig.observe(std::abs(classical_fisher(s.rho, s.drho, sld_eigenbasis_povm(s.rho, s.drho)) - r.qfi), s.label);
  }
  // great-circle family lives in the x-z plane of the Bloch ball
  Tracker plane("optimal axis stays in the great-circle plane (rad)", 1e-4);
  const Curve gc = Curve::great_circle();
  for (int i = 0; i < 50; ++i) {
    const double theta = 2.0 * kPi * i / 50.0;
    const OptimizeResult r = maximize_cfi(gc.evaluate(theta), gc.derivative(theta), {1024, 40, 1});
    plane.observe(std::asin(std::min(1.0, std::abs(r.n[1]))), "theta=" + std::to_string(theta));
  }
  return {reach.result(), over.result(), eig.result(), plane.result()};
}

std::vector<CheckResult> suite_attainability(Rng& rng) {
  Tracker eig("every SLD-eigenbasis outcome attains", 1e-8);
  Tracker sound("attaining measurement has CFI = QFI", 1e-7);
  for (const Scenario& s : optimizer_scenarios(rng)) {
    const Povm povm = sld_eigenbasis_povm(s.rho, s.drho);
    for (const auto& m : povm.elements()) {
      const AttainabilityReport rep = attainability_check(s.rho, s.drho, m);
      eig.observe(rep.residual, s.label);
      if (!rep.attains) eig.fail("outcome rejected for " + s.label);
    }
    sound.observe(std::abs(classical_fisher(s.rho, s.drho, povm) - quantum_fisher(s.rho, s.drho)), s.label);
  }
  const Curve gc = Curve::great_circle();
  const double theta = kPi / 3.0;
  const DensityOp rho = gc.evaluate(theta);
  const HermitianMatrix drho = gc.derivative(theta);
  const Povm sy = Povm::qubit_projective(0.0, 1.0, 0.0);
  bool rejected = true;
  for (const auto& m : sy.elements()) rejected = rejected && !attainability_check(rho, drho, m).attains;
  const double cfi = classical_fisher(rho, drho, sy);
  const double qfi = quantum_fisher(rho, drho);
  char buf[128];
  std::snprintf(buf, sizeof buf, "sigma_y pair: cfi=%.3g qfi=%.12g", cfi, qfi);
  return {eig.result(), sound.result(),
          flag_check("sigma_y pair on the great circle is rejected", rejected && cfi < 1e-12 && std::abs(qfi - 1.0) < 1e-12,
                     buf)};
}

double fd_slope(const Curve& c, double theta) {
  const double hs[3] = {1e-3, 5e-4, 2.5e-4};
  const HermitianMatrix exact = differentiate_curve(c, theta, DiffMode::Analytic);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double h : hs) {
    const double err = (differentiate_curve(c, theta, DiffMode::FiniteDifference, h) - exact).frobenius_norm();
    const double x = std::log(h);
    const double y = std::log(err);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
}

std::vector<CheckResult> suite_finite_differences(Rng& rng) {
  Tracker slope("FD convergence order >= 1.9 (reported as 1.9 - slope)", 0.0);
  std::vector<std::pair<std::string, Curve>> curves;
  curves.emplace_back("great circle", Curve::great_circle());
  SpherePathParams circle;
  circle.k = 0.2;
  circle.origin = {0.3, 0.1};
  circle.kind = PathKind::Circle;
  circle.radius = 0.8;
  curves.emplace_back("sphere circle", Curve::sphere(circle));
  SpherePathParams south;
  south.k = 0.3;
  south.chart = Chart::South;
  south.origin = {0.2, -0.4};
  south.v = {0.5, 0.7};
  curves.emplace_back("sphere line (south)", Curve::sphere(south));
  curves.emplace_back("pure q-dit", Curve::pure_qdit({Complex(0.0, 0.3), Complex(0.5, 0.1), Complex(0.0, 0.2)}));
  for (const auto& [name, c] : curves) {
    for (int j = 0; j < 3; ++j) {
      const double theta = uniform(rng, 0.1, 1.4);
      const double s = fd_slope(c, theta);
      slope.observe(1.9 - s, name + " slope " + std::to_string(s));
    }
  }
  return {slope.result()};
}

std::vector<CheckResult> suite_wavefunction(Rng& rng) {
  Tracker gap("quantum - classical = sum p da^2 dx - (sum p da dx)^2", 1e-10);
  Tracker flat("equal when d alpha is constant", 1e-10);
  Tracker cl("classical part = 4 sum (d sqrt p)^2 dx", 1e-10);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 8 + static_cast<std::size_t>(i % 40);
    WavefunctionGrid g;
    g.dx = uniform(rng, 0.01, 0.5);
    double mass = 0.0;
    double dmass = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      g.x.push_back(static_cast<double>(j) * g.dx);
      g.p.push_back(uniform(rng, 0.05, 1.0));
      g.dp.push_back(uniform(rng, -1.0, 1.0));
      g.alpha.push_back(uniform(rng, 0.0, 2.0 * kPi));
      g.dalpha.push_back(uniform(rng, -1.0, 1.0));
      mass += g.p.back() * g.dx;
      dmass += g.dp.back() * g.dx;
    }
    for (std::size_t j = 0; j < n; ++j) {
      g.p[j] /= mass;
      g.dp[j] = (g.dp[j] - dmass / (n * g.dx)) / mass;
    }
    const FisherPair f = wavefunction_fisher(g);
    double m2 = 0.0;
    double m1 = 0.0;
    double c4 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      m2 += g.p[j] * g.dalpha[j] * g.dalpha[j] * g.dx;
      m1 += g.p[j] * g.dalpha[j] * g.dx;
      const double dsqrt = g.dp[j] / (2.0 * std::sqrt(g.p[j]));
      c4 += 4.0 * dsqrt * dsqrt * g.dx;
    }
    gap.observe(std::abs((f.quantum - f.classical) - (m2 - m1 * m1)));
    cl.observe(std::abs(f.classical - c4));
    const double c = uniform(rng, -2.0, 2.0);
    std::fill(g.dalpha.begin(), g.dalpha.end(), c);
    const FisherPair e = wavefunction_fisher(g);
    flat.observe(std::abs(e.quantum - e.classical));
  }
  return {gap.result(), flat.result(), cl.result()};
}

using SuiteFn = std::function<std::vector<CheckResult>(Rng&)>;

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"sld-residual", suite_sld_residual},
      {"bound-chain", suite_bound_chain},
      {"closed-forms", suite_closed_forms},
      {"mixing-suppression", suite_mixing},
      {"s3-identity", suite_s3},
      {"fisher-tensor", suite_fisher_tensor},
      {"g-kks", suite_g_kks},
      {"kahler", suite_kahler},
      {"optimizer", suite_optimizer},
      {"attainability", suite_attainability},
      {"finite-differences", suite_finite_differences},
      {"wavefunction", suite_wavefunction},
  };
  return r;
}

}  // namespace

bool SuiteResult::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : registry()) n.push_back(name);
    return n;
  }();
  return names;
}

SuiteResult run_suite(std::string_view name, std::uint64_t seed) {
  for (const auto& [n, fn] : registry()) {
    if (n != name) continue;
    Rng rng(seed);
    SuiteResult out;
    out.suite = n;
    const auto start = std::chrono::steady_clock::now();
    try {
      out.checks = fn(rng);
    } catch (const Error& e) {
      out.checks.push_back(flag_check("suite raised " + std::string(to_string(e.kind())), false, e.what()));
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
  }
  throw Error(ErrorKind::ParseError, "unknown suite '" + std::string(name) + "'");
}

std::vector<SuiteResult> run_all(std::uint64_t seed) {
  std::vector<SuiteResult> out;
  for (const auto& name : suite_names()) out.push_back(run_suite(name, seed));
  return out;
}

}  // namespace qfisher::verify

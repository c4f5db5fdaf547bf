#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "qfisher/error.hpp"
#include "qfisher/optimize.hpp"
#include "qfisher/sld.hpp"

using namespace qfisher;
using qfisher::testing::dist;
using qfisher::testing::Gen;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no qfisher::Error thrown";
  return ErrorKind::NumericalFailure;
}

ComplexMatrix diag2(double a, double b) { return ComplexMatrix{{a, 0.0}, {0.0, b}}; }

HermitianMatrix projector(double nx, double ny, double nz) { return Povm::qubit_projective(nx, ny, nz).elements()[0]; }

struct Sample {
  DensityOp rho;
  HermitianMatrix drho;
};

Sample random_qubit(Gen& gen) {
  const QubitPoint p = gen.north_point();
  const TangentDir t(p, gen.uniform(-1.0, 1.0), gen.complex_normal());
  return {rho_of_kz(p), t.drho()};
}

// Orthonormal outcome vectors xi(x) for which every outcome meets the real
// proportionality condition: xi_1(x) real and sum_{i>=2} xi_i(x) a_i* real.
std::vector<std::vector<Complex>> reaching_outcomes(const std::vector<Complex>& a, Gen& gen) {
  const std::size_t d = a.size();
  // W: unitary on C^{d-1} whose first row is a_{>=2}/|a_{>=2}|
  std::vector<std::vector<Complex>> w;
  std::vector<Complex> first(a.begin() + 1, a.end());
  double n = 0.0;
  for (auto c : first) n += std::norm(c);
  for (auto& c : first) c /= std::sqrt(n);
  w.push_back(first);
  while (w.size() < d - 1) {
    std::vector<Complex> cand(d - 1);
    for (auto& c : cand) c = gen.complex_normal();
    for (const auto& b : w) {
      Complex o = 0.0;
      for (std::size_t i = 0; i < d - 1; ++i) o += std::conj(b[i]) * cand[i];
      for (std::size_t i = 0; i < d - 1; ++i) cand[i] -= o * b[i];
    }
    double m = 0.0;
    for (auto c : cand) m += std::norm(c);
    for (auto& c : cand) c /= std::sqrt(m);
    w.push_back(cand);
  }
  // real orthogonal O from the eigenvectors of a random real symmetric matrix
  ComplexMatrix s(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) s(i, j) = s(j, i) = gen.normal();
  const ComplexMatrix o = herm_eigen(HermitianMatrix(s)).vectors;
  std::vector<std::vector<Complex>> xi(d, std::vector<Complex>(d, 0.0));
  for (std::size_t x = 0; x < d; ++x) {
    xi[x][0] = o(x, 0).real();
    for (std::size_t j = 1; j < d; ++j)
      for (std::size_t i = 1; i < d; ++i) xi[x][i] += o(x, j).real() * w[j - 1][i - 1];
  }
  return xi;
}

}  // namespace

TEST(PovmValidate, Examples) {
  EXPECT_TRUE(povm_validate({HermitianMatrix(diag2(1, 0)), HermitianMatrix(diag2(0, 1))}).valid);
  EXPECT_FALSE(povm_validate({HermitianMatrix(diag2(1, 0))}).valid);
  std::vector<HermitianMatrix> trine;
  for (int j = 0; j < 3; ++j) {
    const double a = 2.0 * kPi * j / 3.0;
    trine.push_back((2.0 / 3.0) * projector(std::cos(a), 0.0, std::sin(a)));
  }
  EXPECT_TRUE(povm_validate(trine).valid);
  EXPECT_FALSE(povm_validate({}).valid);
}

TEST(Attainability, Examples) {
  const DensityOp rho(HermitianMatrix(diag2(0.25, 0.75)));
  const AttainabilityReport a = attainability_check(rho, HermitianMatrix(diag2(1, -1)), HermitianMatrix(diag2(1, 0)));
  EXPECT_TRUE(a.attains);
  EXPECT_NEAR(a.c, 4.0, 1e-14);
  EXPECT_NEAR(a.residual, 0.0, 1e-14);

  const Curve gc = Curve::great_circle();
  const DensityOp g = gc.evaluate(kPi / 3.0);
  const HermitianMatrix dg = gc.derivative(kPi / 3.0);
  const Povm sy = Povm::qubit_projective(0, 1, 0);
  for (const auto& m : sy.elements()) EXPECT_FALSE(attainability_check(g, dg, m).attains);

  const AttainabilityReport c = attainability_check(rho, HermitianMatrix::zero(2), HermitianMatrix::identity(2));
  EXPECT_TRUE(c.attains);
  EXPECT_NEAR(c.c, 0.0, 1e-15);
}

TEST(Attainability, VacuousOutcome) {
  const DensityOp rho(HermitianMatrix(diag2(1, 0)));
  const AttainabilityReport r = attainability_check(rho, pauli::x(), HermitianMatrix(diag2(0, 1)));
  EXPECT_TRUE(r.attains);
  EXPECT_TRUE(r.degenerate_element);
  EXPECT_EQ(kind_of([&] { attainability_check(rho, pauli::z(), HermitianMatrix(diag2(1, 0))); }),
            ErrorKind::SupportMismatch);
}

TEST(AttainabilityProperty, SoundnessUnderGaugePhases) {
  Gen gen(601);
  for (int seed = 0; seed < 100; ++seed) {
    const Sample s = random_qubit(gen);
    const Povm base = sld_eigenbasis_povm(s.rho, s.drho);
    // rank-one projectors do not see the phase of their vectors; rebuild them
    // from phase-rotated eigenvectors to exercise that path
    const EigenSystem es = herm_eigen(sld_solve(s.rho, s.drho));
    ComplexMatrix u = es.vectors;
    for (std::size_t j = 0; j < 2; ++j) {
      const Complex ph = std::polar(1.0, gen.uniform(0.0, 2.0 * kPi));
      for (std::size_t i = 0; i < 2; ++i) u(i, j) *= ph;
    }
    const Povm rotated = Povm::from_basis(u);
    bool all = true;
    for (const auto& m : rotated.elements()) all = all && attainability_check(s.rho, s.drho, m).attains;
    ASSERT_TRUE(all) << "draw " << seed;
    const double qfi = quantum_fisher(s.rho, s.drho);
    EXPECT_NEAR(classical_fisher(s.rho, s.drho, rotated), qfi, 1e-7 * std::max(1.0, qfi));
    EXPECT_NEAR(classical_fisher(s.rho, s.drho, base), qfi, 1e-8 * std::max(1.0, qfi));
  }
}

TEST(AttainabilityProperty, NonAttainingPairsLoseInformation) {
  Gen gen(602);
  int rejected = 0;
  for (int seed = 0; seed < 100; ++seed) {
    const Sample s = random_qubit(gen);
    const auto n = gen.unit3();
    const Povm m = Povm::qubit_projective(n[0], n[1], n[2]);
    bool all = true;
    for (const auto& e : m.elements()) all = all && attainability_check(s.rho, s.drho, e).attains;
    const double gap = quantum_fisher(s.rho, s.drho) - classical_fisher(s.rho, s.drho, m);
    if (!all) {
      ++rejected;
      EXPECT_GT(gap, 0.0) << "draw " << seed;
    } else {
      EXPECT_NEAR(gap, 0.0, 1e-7) << "draw " << seed;
    }
  }
  EXPECT_GT(rejected, 90);
}

TEST(ReachCheckPure, Examples) {
  const double h = 1.0 / std::sqrt(2.0);
  const std::vector<Complex> a{0.0, 0.5};
  EXPECT_TRUE(reach_check_pure(std::vector<Complex>{h, h}, a).reaches);
  EXPECT_FALSE(reach_check_pure(std::vector<Complex>{h, h * kI}, a).reaches);
  // xi_1 = 0 while S != 0: the outcome carries no probability
  const ReachResult edge = reach_check_pure(std::vector<Complex>{0.0, 1.0}, a);
  EXPECT_FALSE(edge.reaches);
  EXPECT_TRUE(edge.caveat);
}

TEST(ReachCheckPure, Errors) {
  EXPECT_EQ(kind_of([] { reach_check_pure(std::vector<Complex>{1.0, 0.0}, std::vector<Complex>{kI, 0.0}); }),
            ErrorKind::ZeroVelocityCurve);
  EXPECT_EQ(kind_of([] { reach_check_pure(std::vector<Complex>{1.0, 0.0}, std::vector<Complex>{0.3, 1.0}); }),
            ErrorKind::DomainError);
  EXPECT_EQ(kind_of([] { reach_check_pure(std::vector<Complex>{1.0}, std::vector<Complex>{0.0, 1.0}); }),
            ErrorKind::DimensionMismatch);
}

TEST(ReachProperty, ReachingOutcomesAttainTheBound) {
  Gen gen(603);
  for (int seed = 0; seed < 100; ++seed) {
    const std::size_t d = static_cast<std::size_t>(gen.integer(2, 5));
    std::vector<Complex> a(d);
    a[0] = Complex(0.0, gen.normal());
    for (std::size_t i = 1; i < d; ++i) a[i] = gen.complex_normal();
    const auto xi = reaching_outcomes(a, gen);
    for (const auto& x : xi) ASSERT_TRUE(reach_check_pure(x, a).reaches) << "draw " << seed;
    const FisherPair fp = pure_qdit_fisher(a, xi);
    EXPECT_NEAR(fp.classical, fp.quantum, 1e-8 * std::max(1.0, fp.quantum)) << "draw " << seed;
  }
}

TEST(MixedConditions, Examples) {
  const MixedConditionReport a = mixed_conditions_check(1.0, 0.0, 0.3, 0.0);
  EXPECT_TRUE(a.satisfiable);
  EXPECT_NEAR(a.r, 0.3, 1e-15);
  const MixedConditionReport b = mixed_conditions_check(1.0, 0.0, 0.3, 1.0);
  EXPECT_FALSE(b.satisfiable);
  const MixedConditionReport c = mixed_conditions_check(1.0, kI, 0.3, 1.0);
  EXPECT_FALSE(c.necessary_condition);
  EXPECT_TRUE(mixed_conditions_check(1.0, 2.0, 0.3, 0.5).necessary_condition);
  EXPECT_EQ(kind_of([] { mixed_conditions_check(1.0, 0.0, 0.5, 0.0); }), ErrorKind::DomainError);
  EXPECT_EQ(kind_of([] { mixed_conditions_check(0.0, 0.0, 0.3, 0.0); }), ErrorKind::DomainError);
}

TEST(SldEigenbasisPovm, Examples) {
  const DensityOp rho(HermitianMatrix(diag2(0.25, 0.75)));
  const HermitianMatrix drho(diag2(1, -1));
  const Povm p = sld_eigenbasis_povm(rho, drho);
  ASSERT_EQ(p.size(), 2u);
  // eigenvalues ascending: -4/3 (second basis vector), then 4
  EXPECT_LT(dist(p.elements()[0], diag2(0, 1)), 1e-14);
  EXPECT_LT(dist(p.elements()[1], diag2(1, 0)), 1e-14);
  EXPECT_NEAR(classical_fisher(rho, drho, p), 16.0 / 3.0, 1e-12);

  const Curve gc = Curve::great_circle();
  const Povm q = sld_eigenbasis_povm(gc.evaluate(0.0), gc.derivative(0.0));
  EXPECT_LT(dist(q.elements()[1], projector(1, 0, 0)), 1e-14);
  EXPECT_NEAR(classical_fisher(gc.evaluate(0.0), gc.derivative(0.0), q), 1.0, 1e-14);

  EXPECT_EQ(kind_of([&] { sld_eigenbasis_povm(rho, HermitianMatrix::zero(2)); }), ErrorKind::DegenerateSld);
}

TEST(MaximizeCfi, Examples) {
  const Curve gc = Curve::great_circle();
  const OptimizeResult a = maximize_cfi(gc.evaluate(kPi / 3), gc.derivative(kPi / 3), {1024, 40, 1});
  EXPECT_NEAR(a.value, 1.0, 1e-6);
  EXPECT_FALSE(a.degenerate);

  const DensityOp rho(HermitianMatrix(diag2(0.25, 0.75)));
  const OptimizeResult b = maximize_cfi(rho, HermitianMatrix(diag2(1, -1)));
  EXPECT_NEAR(b.value, 16.0 / 3.0, 1e-6);
  EXPECT_NEAR(std::abs(b.n[2]), 1.0, 1e-6);

  const OptimizeResult c = maximize_cfi(rho, HermitianMatrix::zero(2));
  EXPECT_EQ(c.value, 0.0);
  EXPECT_TRUE(c.degenerate);
  EXPECT_NEAR(std::hypot(c.n[0], c.n[1], c.n[2]), 1.0, 1e-12);
}

TEST(MaximizeCfi, Errors) {
  Gen gen(604);
  const DensityOp rho3(gen.density(3));
  EXPECT_EQ(kind_of([&] { maximize_cfi(rho3, HermitianMatrix::zero(3)); }), ErrorKind::DimensionUnsupported);
  const DensityOp rho(HermitianMatrix(diag2(0.25, 0.75)));
  EXPECT_EQ(kind_of([&] { maximize_cfi(rho, HermitianMatrix(diag2(1, -1)), {7, 10, 1}); }), ErrorKind::DomainError);
}

TEST(MaximizeCfi, DeterministicForAnyJobCount) {
  Gen gen(605);
  for (int i = 0; i < 5; ++i) {
    const Sample s = random_qubit(gen);
    const OptimizeResult one = maximize_cfi(s.rho, s.drho, {512, 30, 1});
    for (unsigned jobs : {2u, 3u, 7u}) {
      const OptimizeResult many = maximize_cfi(s.rho, s.drho, {512, 30, jobs});
      EXPECT_EQ(one.value, many.value);
      EXPECT_EQ(one.n, many.n);
    }
  }
}

TEST(MaximizeCfiProperty, CompletenessOnTheQubit) {
  Gen gen(606);
  for (int seed = 0; seed < 50; ++seed) {
    const Sample s = random_qubit(gen);
    const OptimizeResult r = maximize_cfi(s.rho, s.drho);
    ASSERT_FALSE(r.degenerate);
    EXPECT_GE(r.value - r.qfi, -1e-6 * std::max(1.0, r.qfi)) << "draw " << seed;
    EXPECT_LE(r.value - r.qfi, 1e-9 * std::max(1.0, r.qfi)) << "draw " << seed;
    EXPECT_NEAR(classical_fisher(s.rho, s.drho, r.povm()), r.value, 1e-9 * std::max(1.0, r.value));
  }
}

TEST(MaximizeCfiProperty, GreatCirclePlane) {
  const Curve gc = Curve::great_circle();
  for (int i = 0; i < 50; ++i) {
    const double theta = 2.0 * kPi * (i + 0.5) / 50.0;
    const OptimizeResult r = maximize_cfi(gc.evaluate(theta), gc.derivative(theta));
    // the state and its velocity span the x-z plane of the Bloch ball
    EXPECT_LE(std::asin(std::min(1.0, std::abs(r.n[1]))), 1e-4) << "theta " << theta;
    EXPECT_NEAR(r.value, 1.0, 1e-6);
  }
}

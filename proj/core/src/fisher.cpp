#include "qfisher/fisher.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "qfisher/error.hpp"
#include "qfisher/sld.hpp"

namespace qfisher {

namespace {

constexpr double kDeltaTol = 1e-9;

void check_k(double k) {
  if (!(k > 0.0 && k <= 0.5)) throw Error(ErrorKind::DomainError, "k = " + std::to_string(k) + " outside (0, 1/2]");
}

std::string fmt(const char* pattern, double value) {
  char buf[128];
  std::snprintf(buf, sizeof buf, pattern, value);
  return buf;
}

}  // namespace

PovmDiagnostic inspect_povm(const std::vector<HermitianMatrix>& elements) {
  if (elements.empty()) return {false, "empty POVM"};
  const std::size_t d = elements.front().dim();
  ComplexMatrix sum(d);
  for (std::size_t x = 0; x < elements.size(); ++x) {
    if (elements[x].dim() != d) return {false, "element " + std::to_string(x) + " has the wrong dimension"};
    const double lo = herm_eigen(elements[x]).values.front();
    if (lo < -kPsdClamp) {
      return {false, "element " + std::to_string(x) + fmt(" not PSD (min eigenvalue %.3g)", lo)};
    }
    sum += elements[x].matrix();
  }
  const double defect = (sum - ComplexMatrix::identity(d)).frobenius_norm();
  if (defect > kPovmCompletenessTol) {
    return {false, fmt("completeness: ||sum m_x - I||_F = %.3g exceeds 1e-9", defect)};
  }
  return {true, "ok"};
}

Povm::Povm(std::vector<HermitianMatrix> elements) : elements_(std::move(elements)) {
  const PovmDiagnostic diag = inspect_povm(elements_);
  if (!diag.valid) throw Error(ErrorKind::InvalidPovm, diag.diagnostic);
}

Povm Povm::qubit_projective(double nx, double ny, double nz) {
  const double norm = std::sqrt(nx * nx + ny * ny + nz * nz);
  if (!(norm > 0.0)) throw Error(ErrorKind::DomainError, "Bloch axis must be non-zero");
  nx /= norm;
  ny /= norm;
  nz /= norm;
  const Complex off(nx, -ny);
  HermitianMatrix plus = HermitianMatrix::symmetrized(
      ComplexMatrix{{0.5 * (1.0 + nz), 0.5 * off}, {0.5 * std::conj(off), 0.5 * (1.0 - nz)}});
  HermitianMatrix minus = HermitianMatrix::identity(2) - plus;
  return Povm({plus, minus});
}

Povm Povm::from_basis(const ComplexMatrix& unitary) {
  const std::size_t d = unitary.dim();
  std::vector<HermitianMatrix> elements;
  elements.reserve(d);
  std::vector<Complex> col(d);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) col[i] = unitary(i, j);
    elements.push_back(HermitianMatrix::symmetrized(ComplexMatrix::outer(col, col)));
  }
  return Povm(std::move(elements));
}

double classical_fisher(const DensityOp& rho, const HermitianMatrix& drho, const Povm& povm) {
  if (drho.dim() != rho.dim() || povm.dim() != rho.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "rho, drho and POVM differ in dimension");
  }
  double total = 0.0;
  for (const auto& m : povm.elements()) {
    const double p = trace_product(rho, m).real();
    if (p <= kProbabilityCutoff) continue;
    const double dp = trace_product(drho, m).real();
    total += dp * dp / p;
  }
  return total;
}

double quantum_fisher(const DensityOp& rho, const HermitianMatrix& drho) {
  const HermitianMatrix l = sld_solve(rho, drho);
  return std::max(0.0, trace_product(rho, l.matrix() * l.matrix()).real());
}

QfiSplit qfi_qubit_closed_form(double k, double dk, Complex z, Complex v) {
  check_k(k);
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw Error(ErrorKind::DomainError, "z is not finite");
  const double r = 1.0 - 2.0 * k;
  const double n = 1.0 + std::norm(z);
  QfiSplit out;
  out.sphere = 4.0 * r * r * std::norm(v) / (n * n);
  out.transverse = dk * dk / (k * (1.0 - k));
  out.total = out.sphere + out.transverse;
  return out;
}

QfiSplit qfi_decomposed(const DensityOp& rho, const HermitianMatrix& drho) {
  // validates the support condition
  (void)sld_solve(rho, drho);
  const EigenSystem& es = rho.eigen();
  const ComplexMatrix dd = es.vectors.adjoint() * drho.matrix() * es.vectors;
  QfiSplit out;
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    for (std::size_t j = 0; j < rho.dim(); ++j) {
      const double denom = es.values[i] + es.values[j];
      if (denom <= 1e-12) continue;
      const double term = 2.0 * std::norm(dd(i, j)) / denom;
      (i == j ? out.transverse : out.sphere) += term;
    }
  }
  out.total = out.sphere + out.transverse;
  return out;
}

FisherTensorValue fisher_tensor(double k, Complex z, Complex v, Complex v2) {
  check_k(k);
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw Error(ErrorKind::DomainError, "z is not finite");
  const double r = 2.0 * k - 1.0;  // k1 - k2
  const double n = 1.0 + std::norm(z);
  const double pre = 4.0 * r * r / (n * n);
  const Complex vv = std::conj(v) * v2;
  return {pre * Complex(vv.real(), r * vv.imag())};
}

FisherTensorValue fisher_tensor_general(const DensityOp& rho, const HermitianMatrix& drho1,
                                        const HermitianMatrix& drho2) {
  const HermitianMatrix l1 = sld_solve(rho, drho1);
  const HermitianMatrix l2 = sld_solve(rho, drho2);
  return {trace_product(rho, l1.matrix() * l2.matrix())};
}

FisherPair pure_qdit_fisher(std::span<const Complex> a, const std::vector<std::vector<Complex>>& xi_outcomes) {
  const std::size_t d = a.size();
  if (d < 1) throw Error(ErrorKind::DimensionUnsupported, "empty coefficient list");
  if (a[0].real() > 1e-12 || a[0].real() < -1e-12) throw Error(ErrorKind::DomainError, "a_1 must be purely imaginary");
  for (std::size_t x = 0; x < xi_outcomes.size(); ++x) {
    if (xi_outcomes[x].size() != d) {
      throw Error(ErrorKind::DimensionMismatch, "outcome " + std::to_string(x) + " has the wrong length");
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      Complex acc = 0.0;
      for (const auto& xi : xi_outcomes) acc += std::conj(xi[i]) * xi[j];
      if (std::abs(acc - (i == j ? 1.0 : 0.0)) > kDeltaTol) {
        throw Error(ErrorKind::NotAPovm, "outcome vectors violate sum_x xi_i* xi_j = delta_ij");
      }
    }
  }
  FisherPair out;
  for (std::size_t i = 1; i < d; ++i) out.quantum += 4.0 * std::norm(a[i]);
  for (const auto& xi : xi_outcomes) {
    const double w = std::norm(xi[0]);
    if (std::sqrt(w) <= kProbabilityCutoff) continue;
    Complex s = 0.0;
    for (std::size_t i = 1; i < d; ++i) s += xi[i] * std::conj(a[i]);
    const double re = (std::conj(xi[0]) * s).real();
    out.classical += 4.0 * re * re / w;
  }
  return out;
}

FisherPair wavefunction_fisher(const WavefunctionGrid& grid) {
  const std::size_t n = grid.p.size();
  if (grid.dp.size() != n || grid.alpha.size() != n || grid.dalpha.size() != n ||
      (!grid.x.empty() && grid.x.size() != n)) {
    throw Error(ErrorKind::DimensionMismatch, "wavefunction grid arrays differ in length");
  }
  if (!(grid.dx > 0.0)) throw Error(ErrorKind::DomainError, "grid spacing must be positive");
  double mass = 0.0;
  for (double p : grid.p) {
    if (p < 0.0) throw Error(ErrorKind::NotNormalized, "negative probability density");
    mass += p * grid.dx;
  }
  if (std::abs(mass - 1.0) > 1e-9) throw Error(ErrorKind::NotNormalized, fmt("sum p dx = %.12g", mass));
  double classical = 0.0;
  double phase2 = 0.0;
  double phase1 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double p = grid.p[j];
    if (p > kProbabilityCutoff) classical += grid.dp[j] * grid.dp[j] / p * grid.dx;
    phase2 += p * grid.dalpha[j] * grid.dalpha[j] * grid.dx;
    phase1 += p * grid.dalpha[j] * grid.dx;
  }
  return {classical, classical + phase2 - phase1 * phase1};
}

}  // namespace qfisher

#include "qfisher/geometry.hpp"

#include <cmath>

#include "qfisher/error.hpp"

namespace qfisher {

namespace {

constexpr double kOrthTol = 1e-10;
constexpr double kRealResidue = 1e-12;
constexpr double kTangentTol = 1e-12;

}  // namespace

Generator k_generator(std::span<const Complex> psi, std::span<const Complex> chi) {
  if (psi.size() != chi.size()) throw Error(ErrorKind::DimensionMismatch, "psi and chi differ in length");
  Complex overlap = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) overlap += std::conj(chi[i]) * psi[i];
  if (std::abs(overlap) > kOrthTol) throw Error(ErrorKind::NotOrthogonal, "<chi|psi> does not vanish");
  const ComplexMatrix cp = ComplexMatrix::outer(chi, psi);
  const ComplexMatrix pc = ComplexMatrix::outer(psi, chi);
  const Complex i(0.0, 1.0);
  return {HermitianMatrix::symmetrized(i * (cp - pc)), HermitianMatrix::symmetrized(cp + pc)};
}

KahlerPair fs_kks_at(const DensityOp& rho, const ComplexMatrix& k1, const ComplexMatrix& k2) {
  if (k1.dim() != rho.dim() || k2.dim() != rho.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "generators and rho differ in dimension");
  }
  const Brackets b = comm_anticomm(k1, k2);
  const Complex g = 0.5 * trace_product(rho, b.anticommutator);
  const Complex w = Complex(0.0, -0.5) * trace_product(rho, b.commutator);
  const double scale = std::max(1.0, k1.frobenius_norm() * k2.frobenius_norm());
  if (std::abs(g.imag()) > kRealResidue * scale || std::abs(w.imag()) > kRealResidue * scale) {
    throw Error(ErrorKind::NumericalFailure, "FS/KKS forms have an imaginary residue; generators not Hermitian");
  }
  return {g.real(), w.real()};
}

KahlerPair coordinate_forms(Complex z, Complex v, Complex v2) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw Error(ErrorKind::DomainError, "z is not finite");
  const double n = 1.0 + std::norm(z);
  const Complex vv = std::conj(v) * v2;
  return {4.0 * vv.real() / (n * n), -4.0 * vv.imag() / (n * n)};
}

HermitianMatrix complex_structure(const ComplexMatrix& xt0) {
  if (xt0.dim() != 2) throw Error(ErrorKind::DimensionUnsupported, "complex structure is defined on qubit tangents");
  if (std::abs(xt0(0, 0)) > kTangentTol || std::abs(xt0(1, 1)) > kTangentTol) {
    throw Error(ErrorKind::NotTangentForm, "tangent matrix has diagonal entries");
  }
  const Complex i(0.0, 1.0);
  const Complex c = xt0(1, 0);
  return HermitianMatrix::symmetrized(ComplexMatrix{{0.0, -i * std::conj(c)}, {i * c, 0.0}});
}

HermitianMatrix complex_structure(const DensityOp& rho, const ComplexMatrix& xt) {
  if (rho.dim() != 2 || xt.dim() != 2) {
    throw Error(ErrorKind::DimensionUnsupported, "complex structure is defined on qubit tangents");
  }
  const EigenSystem& es = rho.eigen();
  const ComplexMatrix in_basis = es.vectors.adjoint() * xt * es.vectors;
  const double scale = std::max(1.0, xt.frobenius_norm());
  if (std::abs(in_basis(0, 0)) > kTangentTol * scale || std::abs(in_basis(1, 1)) > kTangentTol * scale) {
    throw Error(ErrorKind::NotTangentForm, "tangent matrix has a component along rho's eigenprojectors");
  }
  const double r = es.values[0] - es.values[1];  // k1 - k2 <= 0
  if (std::abs(r) <= kTangentTol) {
    if (xt.frobenius_norm() > kTangentTol) {
      throw Error(ErrorKind::NotTangentForm, "degenerate rho has no non-zero sphere tangents");
    }
    return HermitianMatrix::zero(2);
  }
  return HermitianMatrix::symmetrized(Complex(0.0, -1.0 / r) * commutator(rho, xt));
}

double g_kks(const DensityOp& rho, const ComplexMatrix& xt1, const ComplexMatrix& xt2) {
  const HermitianMatrix jx2 = complex_structure(rho, xt2);
  return fs_kks_at(rho, xt1, jx2).omega;
}

double round_s3_metric(double psi, double theta, double /*phi*/, const S3Tangent& t1, const S3Tangent& t2) {
  const double sp = std::sin(psi);
  const double st = std::sin(theta);
  return t1.dpsi * t2.dpsi + sp * sp * (t1.dtheta * t2.dtheta + st * st * t1.dphi * t2.dphi);
}

}  // namespace qfisher

#pragma once

// Fubini-Study metric and KKS form from generators, their coordinate
// expressions on the sphere, the complex structure and the round S^3 metric.

#include "qfisher/linalg.hpp"
#include "qfisher/states.hpp"

namespace qfisher {

struct KahlerPair {
  double g = 0.0;
  double omega = 0.0;
};

struct Generator {
  HermitianMatrix k;
  HermitianMatrix x;
};

/// K = i(|chi><psi| - |psi><chi|), X = |chi><psi| + |psi><chi|. chi may be
/// the zero vector; otherwise <chi|psi> must vanish within 1e-10.
Generator k_generator(std::span<const Complex> psi, std::span<const Complex> chi);

/// g = (1/2) Tr rho{K1, K2}, omega = -(i/2) Tr rho[K1, K2].
KahlerPair fs_kks_at(const DensityOp& rho, const ComplexMatrix& k1, const ComplexMatrix& k2);

/// g = 4 Re(v* v2)/(1+|z|^2)^2, omega = -4 Im(v* v2)/(1+|z|^2)^2.
KahlerPair coordinate_forms(Complex z, Complex v, Complex v2);

/// Reference-frame J: [[0, c*], [c, 0]] -> [[0, -i c*], [i c, 0]].
HermitianMatrix complex_structure(const ComplexMatrix& xt0);

/// J at rho: X -> -i[rho, X]/(k1 - k2). Throws NotTangentForm when X has a
/// diagonal component in rho's eigenbasis.
HermitianMatrix complex_structure(const DensityOp& rho, const ComplexMatrix& xt);

/// Omega_KKS(xt1, J xt2) with both matrix tangents fed to fs_kks_at.
double g_kks(const DensityOp& rho, const ComplexMatrix& xt1, const ComplexMatrix& xt2);

struct S3Tangent {
  double dpsi = 0.0;
  double dtheta = 0.0;
  double dphi = 0.0;
};

/// dPsi1 dPsi2 + sin^2 Psi (dtheta1 dtheta2 + sin^2 theta dphi1 dphi2).
double round_s3_metric(double psi, double theta, double phi, const S3Tangent& t1, const S3Tangent& t2);

}  // namespace qfisher

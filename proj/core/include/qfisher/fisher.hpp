#pragma once

// Classical and quantum Fisher information, closed-form qubit metrics and the
// complex Fisher tensor.

#include <string>
#include <vector>

#include "qfisher/linalg.hpp"
#include "qfisher/states.hpp"

namespace qfisher {

/// Outcomes with probability at or below this are dropped from sums.
inline constexpr double kProbabilityCutoff = 1e-12;
inline constexpr double kPovmCompletenessTol = 1e-9;

struct PovmDiagnostic {
  bool valid = false;
  std::string diagnostic;
};

/// PSD elements (min eigenvalue >= -1e-10) summing to I within 1e-9.
PovmDiagnostic inspect_povm(const std::vector<HermitianMatrix>& elements);

class Povm {
 public:
  /// Throws InvalidPovm when inspect_povm rejects the elements.
  explicit Povm(std::vector<HermitianMatrix> elements);

  /// {P(n), P(-n)} for a unit Bloch vector n.
  static Povm qubit_projective(double nx, double ny, double nz);
  /// Rank-one projectors onto the columns of a unitary.
  static Povm from_basis(const ComplexMatrix& unitary);

  const std::vector<HermitianMatrix>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  std::size_t dim() const noexcept { return elements_.front().dim(); }

 private:
  std::vector<HermitianMatrix> elements_;
};

double classical_fisher(const DensityOp& rho, const HermitianMatrix& drho, const Povm& povm);

/// Tr[rho L^2] with L = sld_solve(rho, drho).
double quantum_fisher(const DensityOp& rho, const HermitianMatrix& drho);

struct QfiSplit {
  double sphere = 0.0;
  double transverse = 0.0;
  double total = 0.0;
};

/// sphere = 4 (k1-k2)^2 |v|^2 / (1+|z|^2)^2, transverse = dk^2 / (k(1-k)).
QfiSplit qfi_qubit_closed_form(double k, double dk, Complex z, Complex v);

/// Splits Tr[rho L^2] into the eigenvalue-changing part (diagonal of drho in
/// rho's eigenbasis) and the eigenvector-rotating part (off-diagonal).
QfiSplit qfi_decomposed(const DensityOp& rho, const HermitianMatrix& drho);

struct FisherTensorValue {
  Complex value;
  double sym() const noexcept { return value.real(); }
  double antisym() const noexcept { return value.imag(); }
};

/// Closed form on two sphere directions v, v2 at (k, z).
FisherTensorValue fisher_tensor(double k, Complex z, Complex v, Complex v2);

/// Tr[rho L1 L2].
FisherTensorValue fisher_tensor_general(const DensityOp& rho, const HermitianMatrix& drho1,
                                        const HermitianMatrix& drho2);

struct FisherPair {
  double classical = 0.0;
  double quantum = 0.0;
};

/// Pure d-level family with <e_i|d psi> = a_i. Each outcome x is a vector
/// xi(x) of components xi_i(x); the outcome matrix must have orthonormal
/// columns (NotAPovm otherwise).
FisherPair pure_qdit_fisher(std::span<const Complex> a, const std::vector<std::vector<Complex>>& xi_outcomes);

/// psi(x) = p(x)^{1/2} e^{i alpha(x)} sampled on a uniform grid.
struct WavefunctionGrid {
  std::vector<double> x;
  double dx = 1.0;
  std::vector<double> p;
  std::vector<double> dp;
  std::vector<double> alpha;
  std::vector<double> dalpha;
};

/// Riemann sums with weight dx; throws NotNormalized if sum p dx != 1.
FisherPair wavefunction_fisher(const WavefunctionGrid& grid);

}  // namespace qfisher

#pragma once

// Attainability of the quantum bound and bound-attaining measurements.

#include <array>
#include <optional>
#include <vector>

#include "qfisher/fisher.hpp"
#include "qfisher/linalg.hpp"
#include "qfisher/states.hpp"

namespace qfisher {

inline constexpr double kAttainTol = 1e-8;

/// Never throws; the diagnostic names the failing check.
PovmDiagnostic povm_validate(const std::vector<HermitianMatrix>& elements);

struct AttainabilityReport {
  bool attains = false;
  double c = 0.0;         // Re of the fitted proportionality
  double c_imag = 0.0;    // discarded imaginary part
  double residual = 0.0;  // ||A - c B||_F
  /// m^{1/2} rho^{1/2} vanishes: the outcome never fires and the check is vacuous.
  bool degenerate_element = false;
};

/// Fits m^{1/2} L rho^{1/2} = c m^{1/2} rho^{1/2} for complex c and reports
/// whether c is real with residual <= 1e-8 max(1, ||B||_F).
AttainabilityReport attainability_check(const DensityOp& rho, const HermitianMatrix& drho, const HermitianMatrix& m);

struct ReachResult {
  bool reaches = false;
  /// Set when the outcome has xi_1 = 0 and so carries no probability.
  bool caveat = false;
};

/// Real proportionality of xi_1 and S = sum_{i>=2} xi_i a_i*.
ReachResult reach_check_pure(std::span<const Complex> xi, std::span<const Complex> a);

struct MixedConditionReport {
  bool satisfiable = false;
  double r = 0.0;
  std::array<double, 4> residuals{};
  /// lambda xi1 xi2* is real within 1e-10.
  bool necessary_condition = false;
};

MixedConditionReport mixed_conditions_check(Complex xi1, Complex xi2, double k, Complex lambda);

/// Eigenprojectors of L; throws DegenerateSld if the spectrum gap is below 1e-10.
Povm sld_eigenbasis_povm(const DensityOp& rho, const HermitianMatrix& drho);

struct OptimizeOptions {
  int grid_n = 1024;
  int refine_iters = 40;
  unsigned jobs = 1;
};

struct OptimizeResult {
  std::array<double, 3> n{0.0, 0.0, 1.0};
  double value = 0.0;
  double qfi = 0.0;
  double gap = 0.0;  // qfi - value
  bool degenerate = false;
  Povm povm() const { return Povm::qubit_projective(n[0], n[1], n[2]); }
};

/// Projective-pair search over a Fibonacci sphere followed by golden-section
/// refinement. Deterministic for any job count.
OptimizeResult maximize_cfi(const DensityOp& rho, const HermitianMatrix& drho, const OptimizeOptions& options = {});

/// Classical Fisher information of {P(n), P(-n)} from Bloch vectors.
double qubit_pair_cfi(const std::array<double, 3>& r, const std::array<double, 3>& dr, const std::array<double, 3>& n);

}  // namespace qfisher

#pragma once

// Dense complex linear algebra for superselection-rule resource calculations:
// tensor products, partial trace, Hermitian spectra, entropy (binary log),
// subsystem permutation and Schmidt decomposition.
//
// Conventions used throughout the project: k_B T = 1, all entropies and work
// values in bits, eigenvalues ascending, Schmidt coefficients nonincreasing.

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

#include "errors.hpp"

namespace ssr {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Tolerance tiers (see also resources.hpp): state invariants are checked at
// the tight tier, quantities passing through a decomposition at the loose one.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kEntropyClampTol = 1e-10;

int dims_product(const std::vector<int>& dims);

double max_abs(const Matrix& m);

struct ValidationIssue {
  std::string invariant;
  double magnitude = 0.0;
  double tolerance = 0.0;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  std::string summary() const;
};

// Trace-one positive-semidefinite operator on a tensor product of subsystems.
struct DensityOperator {
  Matrix matrix;
  std::vector<int> dims;

  int dim() const { return static_cast<int>(matrix.rows()); }
};

struct PureState {
  Vector amplitudes;
  std::vector<int> dims;

  int dim() const { return static_cast<int>(amplitudes.size()); }
  double norm() const { return amplitudes.norm(); }
  DensityOperator density() const;
};

// Λ_k nonincreasing, Σ Λ_k² = 1; columns of `left`/`right` are |A_k>, |B_k>.
struct SchmidtForm {
  RealVector coefficients;
  Matrix left;
  Matrix right;
};

struct Spectrum {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // columns, orthonormal
};

Matrix kron(const Matrix& a, const Matrix& b);
DensityOperator kron(const DensityOperator& a, const DensityOperator& b);
PureState kron(const PureState& a, const PureState& b);

// Reduced state on the subsystems listed in `keep` (original order retained).
DensityOperator partial_trace(const DensityOperator& rho, const std::vector<int>& keep);

// Reorders subsystems: new position k holds the old subsystem order[k].
DensityOperator permute_subsystems(const DensityOperator& rho, const std::vector<int>& order);

// Requires max|h - h†| <= 1e-10.
Spectrum eig_hermitian(const Matrix& h);

// -Σ λ log2 λ with 0·log 0 = 0.  Eigenvalues in [-1e-10, 0] are clamped to 0;
// anything below -1e-10 signals an invalid state and throws.
double von_neumann_entropy(const DensityOperator& rho);
double entropy_bits(const RealVector& probabilities);

// `cut` = number of leading subsystems on the A side (1 <= cut < dims.size()).
SchmidtForm schmidt_decompose(const PureState& psi, int cut);

ValidationReport validate_density(const DensityOperator& rho);

}  // namespace ssr

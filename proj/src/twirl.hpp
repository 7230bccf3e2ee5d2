#pragma once

// Twirl superoperators (global, local, one-sided), exact U(1) charge-sector
// dephasing, commutant bases, and covariant instruments.

#include <cstdint>

#include "group.hpp"
#include "linalg.hpp"

namespace ssr {

enum class TwirlKind { Global, Local, Left, Right };

const char* to_string(TwirlKind kind);

// Group-average of ρ.  Global: (1/|G|) Σ_g TρT†.  Local/Left/Right need the
// representation's A/B split and follow Eqs. with independent element sums.
DensityOperator twirl(const DensityOperator& rho, const Representation& rep, TwirlKind kind);

// Hermitian operator whose doubled spectrum is integral (J_z-like).
struct ChargeOperator {
  Matrix matrix;
};

ValidationReport validate_charge(const ChargeOperator& q);

// Exact continuous-U(1) twirl: matrix elements between distinct charge
// eigenvalues (gap > 1e-8) are removed by projecting onto charge eigenspaces.
// One ChargeOperator per subsystem of rho; Global uses the total charge,
// Local dephases every site independently, Left/Right one site of a
// bipartite state.
DensityOperator u1_dephase(const DensityOperator& rho, const std::vector<ChargeOperator>& charges,
                           TwirlKind kind);

// Embeds q acting on subsystem `site` into the full space of `dims`.
Matrix embed_at_site(const Matrix& q, const std::vector<int>& dims, int site);

// Orthonormal (Hilbert-Schmidt) basis of {A : [A, T(g)] = 0 ∀g}; its size is
// Σ_μ (M^μ)².
std::vector<Matrix> commutant_basis(const Representation& rep);

// Outcome-indexed family of CP maps, each Kraus operator commuting with the
// group action.
struct CovariantInstrument {
  std::vector<std::vector<Matrix>> outcomes;  // outcome -> Kraus operators
  std::string label;

  int dim() const;
};

// Kraus operators drawn from the commutant (a sufficient condition for
// covariance), scaled so Σ K†K ≼ 1, with the completion (1 − Σ K†K)^{1/2}
// appended to the last outcome.
CovariantInstrument random_covariant_instrument(const Representation& rep, int n_outcomes,
                                                std::uint64_t seed);

// Projective measurement {Π_j} as an instrument (one Kraus per outcome).
CovariantInstrument projective_instrument(const std::vector<Matrix>& projectors,
                                          const std::string& label);

struct InstrumentOutcome {
  int index = 0;
  double probability = 0.0;
  DensityOperator state;  // renormalized posterior
};

// Outcomes with probability < 1e-12 are dropped from the list but still
// counted in the Σ P_j = 1 consistency check.
std::vector<InstrumentOutcome> apply_instrument(const DensityOperator& rho,
                                                const CovariantInstrument& inst);

struct CovarianceReport {
  double completeness_residual = 0.0;
  double kraus_commutator_residual = 0.0;
  double operational_residual = 0.0;  // max |O_j[TρT†] − T O_j[ρ] T†| over probes

  bool pass(double tol = 1e-9) const {
    return completeness_residual <= tol && kraus_commutator_residual <= tol &&
           operational_residual <= tol;
  }
};

CovarianceReport validate_covariance(const CovariantInstrument& inst, const Representation& rep,
                                     std::uint64_t probe_seed = 17);

}  // namespace ssr

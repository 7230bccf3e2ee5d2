#pragma once

// State families used by the resource calculations: globally symmetric
// bipartite pure states |Ψ^β> built from conjugate irrep couples, the U(1)
// refbit and spin examples, theorem-achievability reference states and
// seeded random states.

#include <cstdint>
#include <variant>

#include "group.hpp"
#include "twirl.hpp"

namespace ssr {

// One charge sector of a globally symmetric state: weight P_μ, color
// dimension D_μ and the Schmidt coefficients of the flavor state |φ_μ>.
struct SectorData {
  int mu = -1;      // irrep index (finite groups) or sector ordinal (U(1))
  int mu_bar = -1;
  std::string label;
  double probability = 0.0;
  int color_dim = 1;
  RealVector flavor_schmidt;  // nonincreasing, Σ Λ² = 1

  double flavor_entropy() const;  // -Σ Λ² log2 Λ²
};

struct PairCoefficient {
  int mu = 0;     // charge of the A-side irrep
  int m = 0;      // flavor index on A
  int m_bar = 0;  // flavor index on B
  Complex d{1.0, 0.0};
};

struct FiniteGroupContext {
  Representation rep;  // with A/B split
  IrrepDecomposition decomp_a;
  IrrepDecomposition decomp_b;
  std::vector<ConjugatePair> pairs;
  int beta = 0;
  std::vector<PairCoefficient> coefficients;  // normalized
};

struct U1Context {
  ChargeOperator charge_a;
  ChargeOperator charge_b;
  double total_charge = 0.0;
};

struct SymmetricPureState {
  PureState psi;  // dims = {D_A, D_B}
  std::vector<SectorData> sectors;
  std::variant<FiniteGroupContext, U1Context> context;

  bool is_u1() const { return std::holds_alternative<U1Context>(context); }
  int dim() const { return psi.dim(); }
};

// |ψ^{μ,β}_{m,m̄}> = (1/√D_μ) Σ_ij C^μ_ij |μ,m,i>_A ⊗ |μ̄,m̄,j>_B in the
// computational basis.  Eigenstate of every T(g) with eigenvalue λ^β(g).
PureState build_pair_state(const ConjugatePair& pair, int flavor_a, int flavor_b,
                           const IrrepDecomposition& decomp_a,
                           const IrrepDecomposition& decomp_b);

// General globally symmetric state Σ d^μ_{m,m̄} |ψ^{μ,β}_{m,m̄}>.
// Coefficients are accepted unnormalized; P_μ is always computed from them.
SymmetricPureState build_symmetric_state(const Representation& rep, int beta,
                                         const std::vector<PairCoefficient>& coefficients,
                                         std::uint64_t pair_seed = 0x5eed);

// Decompositions + conjugate couples for reuse across many states of the
// same representation (Monte Carlo loops).
FiniteGroupContext make_symmetric_context(const Representation& rep, int beta,
                                          std::uint64_t pair_seed = 0x5eed);
SymmetricPureState build_from_context(const FiniteGroupContext& ctx,
                                      const std::vector<PairCoefficient>& coefficients);

// U(1) route: psi must be an eigenstate of the total charge; sectors are the
// eigenspaces of the A-side charge.
SymmetricPureState make_u1_symmetric(const PureState& psi, const ChargeOperator& charge_a,
                                     const ChargeOperator& charge_b);

// (|01> + |10>)/√2 with per-site charge diag(0, 1).
SymmetricPureState make_refbit();

struct SpinExample {
  DensityOperator rho;
  std::vector<ChargeOperator> charges;  // J_z = σ_z/2 per site
};

// |+>^{⊗n} with per-site J_z = σ_z/2 (basis |1>, |-1>).
SpinExample make_spin_plus(int n_spins);

// First basis vector of the regular representation space; its group orbit is
// orthonormal, which makes it the Theorem-2 achievability reference.
PureState make_orbit_reference(const GroupPtr& group);

// |Ψ> = |G|^{-1/2} Σ_h |h>_A |h>_B on regular ⊗ regular: globally symmetric
// with an orthonormal T_A-orbit (Theorem-3 achievability reference).
PureState make_shared_orbit_reference(const GroupPtr& group);

enum class Purity { Pure, Mixed };

// Pure: normalized complex-normal amplitudes.  Mixed: AA†/Tr with a square
// complex-normal A (rank-limited when rank in [1, D) is given).
DensityOperator random_state(const std::vector<int>& dims, Purity purity, std::uint64_t seed,
                             int rank = 0);
PureState random_pure_state(const std::vector<int>& dims, std::uint64_t seed);

// Random globally symmetric state on rep (bipartite): gaussian coefficients
// over every conjugate couple and flavor combination available for beta.
SymmetricPureState random_symmetric_state(const Representation& rep, int beta,
                                          std::uint64_t seed);

// Explicit mixture Σ_μ (P_μ/D_μ²) Σ_ij |v^μ_ij><v^μ_ij| from Eq.-style
// closed form of the local twirl of a symmetric state (finite groups).
DensityOperator local_twirl_closed_form(const SymmetricPureState& state);

}  // namespace ssr

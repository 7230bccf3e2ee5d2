#pragma once

// Finite groups with explicit irrep catalogs, unitary representations, and
// decomposition into charge/flavor/color-labelled irrep blocks.
//
// Catalog: Z_N (N <= 12), S3, D4, Q8, each shipped with exact irrep matrices.
// Arbitrary groups are accepted through the spec-file loader as long as they
// come with their own irrep matrices; no irrep discovery is attempted.

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>

#include "linalg.hpp"

namespace ssr {

struct Irrep {
  std::string label;
  int dim = 1;
  std::vector<Matrix> matrices;  // one unitary per group element

  Complex character(int g) const { return matrices[g].trace(); }
};

struct FiniteGroup {
  std::string name;
  int order = 0;
  std::vector<std::vector<int>> mult;  // mult[a][b] = index of a∘b
  std::vector<int> inverse;
  int identity = 0;
  std::vector<Irrep> irreps;

  int num_irreps() const { return static_cast<int>(irreps.size()); }
  int compose(int a, int b) const { return mult[a][b]; }
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Catalog names: "Z1".."Z12", "S3", "D4", "Q8".  Throws on unknown kind.
GroupPtr make_group(const std::string& kind);
std::vector<std::string> catalog_names();

// Checks associativity (exhaustive), identity/inverse behavior, irrep
// homomorphism + unitarity + irreducibility, and Σ D_μ² = |G|.
ValidationReport validate_group(const FiniteGroup& g);

struct Representation {
  GroupPtr group;
  std::vector<Matrix> matrices;  // T(g), indexed by element

  struct Split {
    int dim_a = 0;
    int dim_b = 0;
    std::vector<Matrix> a;  // T_A(g)
    std::vector<Matrix> b;  // T_B(g)
  };
  std::optional<Split> split;  // present when T(g) = T_A(g) ⊗ T_B(g)

  int dim() const { return matrices.empty() ? 0 : static_cast<int>(matrices.front().rows()); }
  const Matrix& at(int g) const { return matrices[g]; }
};

Representation irrep_representation(const GroupPtr& g, int mu);
Representation regular_representation(const GroupPtr& g);
Representation direct_sum(const Representation& r1, const Representation& r2);
// Tensor product; records the A/B split needed by local twirls.
Representation tensor_rep(const Representation& a, const Representation& b);

// Homomorphism, unitarity and (when split) factorization residuals.
ValidationReport validate_representation(const Representation& rep);

std::vector<Complex> characters(const Representation& rep);

// M^μ = (1/|G|) Σ_g χ^μ(g)* χ(g), rounded; throws if the rounding residual
// exceeds 1e-8 (representation inconsistent with the catalog irreps).
std::vector<int> multiplicities(const Representation& rep);

// Adapted basis: columns grouped into blocks |μ, m, i> (charge, flavor,
// color).  Within an isotypic component every flavor copy carries the
// catalog irrep matrices themselves, not merely equivalent ones.
struct IrrepDecomposition {
  GroupPtr group;
  Matrix basis;  // unitary; column order = block order below
  struct Block {
    int irrep = 0;
    int flavor = 0;
    int offset = 0;  // first column of this block in `basis`
  };
  std::vector<Block> blocks;
  std::vector<int> mult;  // per irrep index

  int total_blocks() const { return static_cast<int>(blocks.size()); }
  int dim() const { return static_cast<int>(basis.rows()); }
  // Column of |μ, m, i>.
  Vector basis_vector(int mu, int flavor, int color) const;
};

IrrepDecomposition decompose(const Representation& rep);

// (μ, μ̄) with T^μ(g) = C λ^β(g) [T^μ̄(g)]* C† for all g; C unitary.
struct ConjugatePair {
  int mu = 0;
  int mu_bar = 0;
  int beta = 0;
  Matrix intertwiner;  // C^μ, D_μ × D_μ
};

// One entry per irrep μ (each has exactly one conjugate partner for a given
// one-dimensional β).  Intertwiners are found by Schur averaging of a random
// seed matrix; ambiguous norms trigger a retry with a fresh seed.
std::vector<ConjugatePair> find_conjugate_pairs(const FiniteGroup& g, int beta,
                                                std::uint64_t seed = 0x5eed);

double pair_residual(const FiniteGroup& g, const ConjugatePair& pair);

// max |Σ_g T^μ_kl(g) [T^ν_nm(g)]* − (|G|/D_μ) δ_μν δ_kn δ_lm| over all indices.
double grand_orthogonality_residual(const FiniteGroup& g);

// Charge sector of a decomposition: projector Π_μ plus the flavor ⊗ color
// factorization data of the isotypic subspace.
struct ChargeSector {
  int irrep = 0;
  int flavor_dim = 0;  // M^μ
  int color_dim = 0;   // D_μ
  Matrix isometry;     // D × (M^μ·D_μ); column (m·D_μ + i) is |μ, m, i>
  Matrix projector;    // Π_μ = isometry · isometry†
};

// Sectors for every μ with M^μ > 0; Σ Π_μ = 1 and [Π_μ, T(g)] = 0.
std::vector<ChargeSector> charge_sectors(const IrrepDecomposition& d);

}  // namespace ssr

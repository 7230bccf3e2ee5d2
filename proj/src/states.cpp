#include "states.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "rng.hpp"

namespace ssr {

double SectorData::flavor_entropy() const {
  RealVector probs = flavor_schmidt.array().square();
  return entropy_bits(probs);
}

namespace {

// Drop numerically-zero Schmidt coefficients from sector tables.
RealVector truncate_schmidt(const RealVector& values) {
  int keep = static_cast<int>(values.size());
  while (keep > 1 && values(keep - 1) < 1e-12) --keep;
  return values.head(keep);
}

}  // namespace

PureState build_pair_state(const ConjugatePair& pair, int flavor_a, int flavor_b,
                           const IrrepDecomposition& decomp_a,
                           const IrrepDecomposition& decomp_b) {
  const auto& group = *decomp_a.group;
  const int d_mu = group.irreps[pair.mu].dim;
  if (flavor_a < 0 || flavor_a >= decomp_a.mult[pair.mu] || flavor_b < 0 ||
      flavor_b >= decomp_b.mult[pair.mu_bar])
    throw ValidationError("build_pair_state: flavor index outside multiplicity");

  const int da = decomp_a.dim();
  const int db = decomp_b.dim();
  PureState psi;
  psi.dims = {da, db};
  psi.amplitudes = Vector::Zero(da * db);

  const double norm = 1.0 / std::sqrt(static_cast<double>(d_mu));
  for (int i = 0; i < d_mu; ++i) {
    const Vector ua = decomp_a.basis_vector(pair.mu, flavor_a, i);
    for (int j = 0; j < d_mu; ++j) {
      const Vector ub = decomp_b.basis_vector(pair.mu_bar, flavor_b, j);
      const Complex c = pair.intertwiner(i, j) * norm;
      if (std::abs(c) == 0.0) continue;
      for (int a = 0; a < da; ++a) {
        if (ua(a) == Complex(0.0, 0.0)) continue;
        psi.amplitudes.segment(a * db, db) += c * ua(a) * ub;
      }
    }
  }
  return psi;
}

FiniteGroupContext make_symmetric_context(const Representation& rep, int beta,
                                          std::uint64_t pair_seed) {
  if (!rep.split) throw ValidationError("symmetric state: representation needs an A/B split");
  const auto& group = *rep.group;
  if (beta < 0 || beta >= group.num_irreps() || group.irreps[beta].dim != 1)
    throw ValidationError("symmetric state: beta must index a one-dimensional irrep");

  FiniteGroupContext ctx;
  ctx.rep = rep;
  ctx.beta = beta;
  Representation rep_a{rep.group, rep.split->a, std::nullopt};
  Representation rep_b{rep.group, rep.split->b, std::nullopt};
  ctx.decomp_a = decompose(rep_a);
  ctx.decomp_b = decompose(rep_b);
  ctx.pairs = find_conjugate_pairs(group, beta, pair_seed);
  return ctx;
}

SymmetricPureState build_from_context(const FiniteGroupContext& ctx,
                                      const std::vector<PairCoefficient>& coefficients) {
  const auto& group = *ctx.rep.group;
  if (coefficients.empty()) throw ValidationError("symmetric state: no coefficients");

  double total = 0.0;
  std::map<std::tuple<int, int, int>, bool> seen;
  for (const auto& c : coefficients) {
    if (c.mu < 0 || c.mu >= group.num_irreps())
      throw ValidationError("symmetric state: irrep index out of range");
    const auto& pair = ctx.pairs[c.mu];
    if (ctx.decomp_a.mult[c.mu] == 0 || ctx.decomp_b.mult[pair.mu_bar] == 0)
      throw ValidationError("symmetric state: coefficient for a couple absent from the decompositions (" +
                            group.irreps[c.mu].label + ")");
    if (c.m < 0 || c.m >= ctx.decomp_a.mult[c.mu] || c.m_bar < 0 ||
        c.m_bar >= ctx.decomp_b.mult[pair.mu_bar])
      throw ValidationError("symmetric state: flavor index outside multiplicity");
    if (seen.count({c.mu, c.m, c.m_bar}))
      throw ValidationError("symmetric state: duplicate coefficient entry");
    seen[{c.mu, c.m, c.m_bar}] = true;
    total += std::norm(c.d);
  }
  if (total <= 0.0) throw ValidationError("symmetric state: all coefficients vanish");
  const double scale = 1.0 / std::sqrt(total);

  SymmetricPureState state;
  FiniteGroupContext ctx_out = ctx;
  ctx_out.coefficients.clear();

  const int da = ctx.decomp_a.dim();
  const int db = ctx.decomp_b.dim();
  state.psi.dims = {da, db};
  state.psi.amplitudes = Vector::Zero(da * db);

  std::map<int, Matrix> flavor_matrices;  // mu -> d^μ_{m,m̄} (normalized)
  for (const auto& c : coefficients) {
    const auto& pair = ctx.pairs[c.mu];
    const Complex d_norm = c.d * scale;
    ctx_out.coefficients.push_back({c.mu, c.m, c.m_bar, d_norm});

    const PureState term = build_pair_state(pair, c.m, c.m_bar, ctx.decomp_a, ctx.decomp_b);
    state.psi.amplitudes += d_norm * term.amplitudes;

    auto [it, inserted] = flavor_matrices.try_emplace(
        c.mu, Matrix::Zero(ctx.decomp_a.mult[c.mu], ctx.decomp_b.mult[pair.mu_bar]));
    it->second(c.m, c.m_bar) = d_norm;
  }

  for (const auto& [mu, fm] : flavor_matrices) {
    SectorData sec;
    sec.mu = mu;
    sec.mu_bar = ctx.pairs[mu].mu_bar;
    sec.label = group.irreps[mu].label;
    sec.probability = fm.squaredNorm();
    sec.color_dim = group.irreps[mu].dim;
    Eigen::JacobiSVD<Matrix> svd(fm / std::sqrt(sec.probability));
    sec.flavor_schmidt = truncate_schmidt(svd.singularValues());
    state.sectors.push_back(std::move(sec));
  }

  // Appendix-style eigenstate check: T(g)|Ψ> = λ^β(g)|Ψ> for every element.
  double residual = 0.0;
  for (int g = 0; g < group.order; ++g) {
    const Complex lambda = group.irreps[ctx.beta].matrices[g](0, 0);
    residual = std::max(residual,
                        (ctx.rep.matrices[g] * state.psi.amplitudes - lambda * state.psi.amplitudes)
                            .norm());
  }
  if (residual > 1e-9)
    throw ValidationError("symmetric state: global symmetry residual " + std::to_string(residual));

  state.context = std::move(ctx_out);
  return state;
}

SymmetricPureState build_symmetric_state(const Representation& rep, int beta,
                                         const std::vector<PairCoefficient>& coefficients,
                                         std::uint64_t pair_seed) {
  return build_from_context(make_symmetric_context(rep, beta, pair_seed), coefficients);
}

namespace {

std::string format_charge(double q) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "q=%g", q);
  return buf;
}

// Eigenvalue clusters (gap > 1e-8) of a Hermitian operator.
struct ChargeBasis {
  std::vector<double> values;
  std::vector<Matrix> projectors;
};

ChargeBasis charge_eigenbasis(const Matrix& q) {
  const Spectrum spec = eig_hermitian(q);
  ChargeBasis basis;
  const int d = static_cast<int>(q.rows());
  int start = 0;
  while (start < d) {
    int stop = start + 1;
    while (stop < d && spec.eigenvalues(stop) - spec.eigenvalues(stop - 1) <= 1e-8) ++stop;
    const Matrix cols = spec.eigenvectors.middleCols(start, stop - start);
    basis.values.push_back(spec.eigenvalues.segment(start, stop - start).mean());
    basis.projectors.push_back(cols * cols.adjoint());
    start = stop;
  }
  return basis;
}

}  // namespace

SymmetricPureState make_u1_symmetric(const PureState& psi, const ChargeOperator& charge_a,
                                     const ChargeOperator& charge_b) {
  if (psi.dims.size() != 2)
    throw ValidationError("make_u1_symmetric: state must have exactly two subsystems");
  if (std::abs(psi.norm() - 1.0) > 1e-9)
    throw ValidationError("make_u1_symmetric: state not normalized");
  const int da = psi.dims[0], db = psi.dims[1];
  if (charge_a.matrix.rows() != da || charge_b.matrix.rows() != db)
    throw ValidationError("make_u1_symmetric: charge dimensions do not match the state");

  const Matrix total = embed_at_site(charge_a.matrix, psi.dims, 0) +
                       embed_at_site(charge_b.matrix, psi.dims, 1);
  const ChargeBasis total_basis = charge_eigenbasis(total);

  // Globally symmetric under U(1) = eigenstate of the total charge.
  int dominant = -1;
  double best = 0.0;
  for (int c = 0; c < static_cast<int>(total_basis.values.size()); ++c) {
    const double w = (total_basis.projectors[c] * psi.amplitudes).squaredNorm();
    if (w > best) {
      best = w;
      dominant = c;
    }
  }
  if (dominant < 0 || best < 1.0 - 1e-9)
    throw ValidationError("make_u1_symmetric: state is not an eigenstate of the total charge");

  SymmetricPureState state;
  state.psi = psi;
  U1Context ctx{charge_a, charge_b, total_basis.values[dominant]};

  const ChargeBasis a_basis = charge_eigenbasis(charge_a.matrix);
  for (int c = 0; c < static_cast<int>(a_basis.values.size()); ++c) {
    const Matrix proj = kron(a_basis.projectors[c], Matrix::Identity(db, db));
    Vector component = proj * psi.amplitudes;
    const double p = component.squaredNorm();
    if (p < 1e-12) continue;
    component /= std::sqrt(p);

    SectorData sec;
    sec.mu = c;
    sec.mu_bar = c;
    sec.label = format_charge(a_basis.values[c]);
    sec.probability = p;
    sec.color_dim = 1;  // U(1) irreps are one-dimensional
    const SchmidtForm schmidt = schmidt_decompose(PureState{component, psi.dims}, 1);
    sec.flavor_schmidt = truncate_schmidt(schmidt.coefficients);
    state.sectors.push_back(std::move(sec));
  }

  state.context = std::move(ctx);
  return state;
}

SymmetricPureState make_refbit() {
  PureState psi;
  psi.dims = {2, 2};
  psi.amplitudes = Vector::Zero(4);
  psi.amplitudes(1) = 1.0 / std::sqrt(2.0);  // |01>
  psi.amplitudes(2) = 1.0 / std::sqrt(2.0);  // |10>
  Matrix number = Matrix::Zero(2, 2);
  number(1, 1) = 1.0;
  return make_u1_symmetric(psi, ChargeOperator{number}, ChargeOperator{number});
}

SpinExample make_spin_plus(int n_spins) {
  if (n_spins < 1) throw ValidationError("make_spin_plus: need at least one spin");
  PureState plus;
  plus.dims = {2};
  plus.amplitudes = Vector::Constant(2, 1.0 / std::sqrt(2.0));

  PureState psi = plus;
  for (int s = 1; s < n_spins; ++s) psi = kron(psi, plus);

  Matrix jz(2, 2);
  jz << 0.5, 0.0, 0.0, -0.5;

  SpinExample example;
  example.rho = psi.density();
  example.charges.assign(n_spins, ChargeOperator{jz});
  return example;
}

PureState make_orbit_reference(const GroupPtr& group) {
  PureState psi;
  psi.dims = {group->order};
  psi.amplitudes = Vector::Zero(group->order);
  psi.amplitudes(group->identity) = 1.0;
  return psi;
}

PureState make_shared_orbit_reference(const GroupPtr& group) {
  const int n = group->order;
  PureState psi;
  psi.dims = {n, n};
  psi.amplitudes = Vector::Zero(n * n);
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  for (int h = 0; h < n; ++h) psi.amplitudes(h * n + h) = amp;
  return psi;
}

PureState random_pure_state(const std::vector<int>& dims, std::uint64_t seed) {
  const int d = dims_product(dims);
  Rng rng(seed);
  PureState psi;
  psi.dims = dims;
  psi.amplitudes.resize(d);
  for (int i = 0; i < d; ++i) psi.amplitudes(i) = rng.complex_gaussian();
  psi.amplitudes /= psi.amplitudes.norm();
  return psi;
}

DensityOperator random_state(const std::vector<int>& dims, Purity purity, std::uint64_t seed,
                             int rank) {
  const int d = dims_product(dims);
  if (purity == Purity::Pure) return random_pure_state(dims, seed).density();

  const int r = (rank >= 1 && rank <= d) ? rank : d;
  Rng rng(seed);
  Matrix a(d, r);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < r; ++j) a(i, j) = rng.complex_gaussian();
  Matrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return DensityOperator{std::move(rho), dims};
}

SymmetricPureState random_symmetric_state(const Representation& rep, int beta,
                                          std::uint64_t seed) {
  const FiniteGroupContext ctx = make_symmetric_context(rep, beta, 0x5eed);
  Rng rng(seed);
  std::vector<PairCoefficient> coeffs;
  for (int mu = 0; mu < rep.group->num_irreps(); ++mu) {
    const auto& pair = ctx.pairs[mu];
    if (ctx.decomp_a.mult[mu] == 0 || ctx.decomp_b.mult[pair.mu_bar] == 0) continue;
    for (int m = 0; m < ctx.decomp_a.mult[mu]; ++m)
      for (int mb = 0; mb < ctx.decomp_b.mult[pair.mu_bar]; ++mb)
        coeffs.push_back({mu, m, mb, rng.complex_gaussian()});
  }
  if (coeffs.empty())
    throw ValidationError("random_symmetric_state: no conjugate couples available for this beta");
  return build_from_context(ctx, coeffs);
}

DensityOperator local_twirl_closed_form(const SymmetricPureState& state) {
  const int da = state.psi.dims[0], db = state.psi.dims[1];
  DensityOperator out{Matrix::Zero(da * db, da * db), state.psi.dims};

  if (state.is_u1()) {
    // D_μ = 1: the local twirl is the incoherent mixture of the charge
    // sector components.
    const auto& ctx = std::get<U1Context>(state.context);
    const ChargeBasis a_basis = charge_eigenbasis(ctx.charge_a.matrix);
    for (const auto& proj_a : a_basis.projectors) {
      const Matrix proj = kron(proj_a, Matrix::Identity(db, db));
      const Vector comp = proj * state.psi.amplitudes;
      out.matrix += comp * comp.adjoint();
    }
    return out;
  }

  const auto& ctx = std::get<FiniteGroupContext>(state.context);
  const auto& group = *ctx.rep.group;
  for (const auto& sec : state.sectors) {
    const int mu = sec.mu;
    const int mu_bar = sec.mu_bar;
    const int d_mu = group.irreps[mu].dim;

    // |v^μ_ij> = Σ_{m,m̄} φ^μ_{m,m̄} |μ,m,i>_A |μ̄,m̄,j>_B, weight P_μ/D_μ².
    for (int i = 0; i < d_mu; ++i)
      for (int j = 0; j < d_mu; ++j) {
        Vector v = Vector::Zero(da * db);
        for (const auto& c : ctx.coefficients) {
          if (c.mu != mu) continue;
          const Vector ua = ctx.decomp_a.basis_vector(mu, c.m, i);
          const Vector ub = ctx.decomp_b.basis_vector(mu_bar, c.m_bar, j);
          const Complex phi = c.d / std::sqrt(sec.probability);
          for (int a = 0; a < da; ++a) {
            if (ua(a) == Complex(0.0, 0.0)) continue;
            v.segment(a * db, db) += phi * ua(a) * ub;
          }
        }
        out.matrix += (sec.probability / (d_mu * d_mu)) * (v * v.adjoint());
      }
  }
  return out;
}

}  // namespace ssr

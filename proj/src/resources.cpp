#include "resources.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ssr {

Symmetry Symmetry::finite(Representation rep) {
  Symmetry sym;
  sym.rep_ = std::move(rep);
  return sym;
}

Symmetry Symmetry::u1(std::vector<ChargeOperator> charges) {
  if (charges.empty()) throw ValidationError("Symmetry::u1: no charge operators");
  Symmetry sym;
  sym.charges_ = std::move(charges);
  return sym;
}

bool Symmetry::bipartite() const {
  if (is_u1()) return charges_.size() == 2;
  return rep_ && rep_->split.has_value();
}

const Representation& Symmetry::rep() const {
  if (!rep_) throw ValidationError("Symmetry: no finite-group representation present");
  return *rep_;
}

DensityOperator Symmetry::apply_twirl(const DensityOperator& rho, TwirlKind kind) const {
  if (is_u1()) return u1_dephase(rho, charges_, kind);
  return twirl(rho, rep(), kind);
}

std::string Symmetry::describe() const {
  if (is_u1()) return "U(1) x" + std::to_string(charges_.size());
  std::string s = rep_->group->name + " rep dim " + std::to_string(rep_->dim());
  if (rep_->split)
    s += " (split " + std::to_string(rep_->split->dim_a) + "x" +
         std::to_string(rep_->split->dim_b) + ")";
  return s;
}

Symmetry symmetry_of(const SymmetricPureState& state) {
  if (state.is_u1()) {
    const auto& ctx = std::get<U1Context>(state.context);
    return Symmetry::u1({ctx.charge_a, ctx.charge_b});
  }
  return Symmetry::finite(std::get<FiniteGroupContext>(state.context).rep);
}

double extractable_work(const DensityOperator& rho) {
  return std::log2(static_cast<double>(rho.dim())) - von_neumann_entropy(rho);
}

double work_under_ssr(const DensityOperator& rho, const Symmetry& sym) {
  return extractable_work(sym.apply_twirl(rho, TwirlKind::Global));
}

double asymmetry(const DensityOperator& rho, const Symmetry& sym) {
  return von_neumann_entropy(sym.apply_twirl(rho, TwirlKind::Global)) - von_neumann_entropy(rho);
}

double total_work_local_ssr(const DensityOperator& rho, const Symmetry& sym) {
  return extractable_work(sym.apply_twirl(rho, TwirlKind::Local));
}

double shared_asymmetry(const DensityOperator& rho, const Symmetry& sym) {
  return von_neumann_entropy(sym.apply_twirl(rho, TwirlKind::Local)) -
         von_neumann_entropy(sym.apply_twirl(rho, TwirlKind::Global));
}

double local_asymmetry(const DensityOperator& rho, const Symmetry& sym) {
  return von_neumann_entropy(sym.apply_twirl(rho, TwirlKind::Local)) - von_neumann_entropy(rho);
}

double holevo_chi(const std::vector<std::pair<double, DensityOperator>>& ensemble) {
  if (ensemble.empty()) throw ValidationError("holevo_chi: empty ensemble");
  double total_p = 0.0;
  for (const auto& [p, rho] : ensemble) total_p += p;
  if (std::abs(total_p - 1.0) > 1e-10)
    throw ValidationError("holevo_chi: probabilities sum to " + std::to_string(total_p));

  const int d = ensemble.front().second.dim();
  Matrix avg = Matrix::Zero(d, d);
  double mean_entropy = 0.0;
  for (const auto& [p, rho] : ensemble) {
    if (rho.dim() != d) throw ValidationError("holevo_chi: inconsistent dimensions");
    avg += p * rho.matrix;
    mean_entropy += p * von_neumann_entropy(rho);
  }
  return von_neumann_entropy(DensityOperator{avg, ensemble.front().second.dims}) - mean_entropy;
}

double entanglement_entropy(const PureState& psi, int cut) {
  const SchmidtForm schmidt = schmidt_decompose(psi, cut);
  RealVector probs = schmidt.coefficients.array().square();
  return entropy_bits(probs);
}

double local_work_pure(const PureState& psi, int cut) {
  if (std::abs(psi.norm() - 1.0) > 1e-9)
    throw ValidationError("local_work_pure: state not normalized");
  return std::log2(static_cast<double>(psi.dim())) - entanglement_entropy(psi, cut);
}

double charge_entropy(const SymmetricPureState& state) {
  double h = 0.0;
  for (const auto& sec : state.sectors)
    if (sec.probability > 0.0) h -= sec.probability * std::log2(sec.probability);
  return h;
}

double color_entropy(const SymmetricPureState& state) {
  double h = 0.0;
  for (const auto& sec : state.sectors)
    h += sec.probability * std::log2(static_cast<double>(sec.color_dim));
  return h;
}

double sector_entanglement(const SymmetricPureState& state) {
  // E = −Σ_{μ,k} P_μ Λ² log2(P_μ Λ²) + Σ_μ P_μ log2 D_μ
  double e = 0.0;
  for (const auto& sec : state.sectors) {
    for (Eigen::Index k = 0; k < sec.flavor_schmidt.size(); ++k) {
      const double w = sec.probability * sec.flavor_schmidt(k) * sec.flavor_schmidt(k);
      if (w > 0.0) e -= w * std::log2(w);
    }
    e += sec.probability * std::log2(static_cast<double>(sec.color_dim));
  }
  return e;
}

double accessible_entanglement(const SymmetricPureState& state) {
  return sector_entanglement(state) - color_entropy(state) - charge_entropy(state);
}

double local_work_under_ssr(const SymmetricPureState& state) {
  return std::log2(static_cast<double>(state.dim())) - sector_entanglement(state) -
         color_entropy(state);
}

DensityOperator joint_unipartite_state(const DensityOperator& rho1, const DensityOperator& rho2) {
  return kron(rho1, rho2);
}

namespace {

DensityOperator as_two_sites(const DensityOperator& rho, int da, int db) {
  if (da * db != rho.dim()) throw ValidationError("joint state: split dimensions inconsistent");
  return DensityOperator{rho.matrix, {da, db}};
}

std::pair<int, int> side_dims(const DensityOperator& rho, const Symmetry& sym) {
  if (sym.is_u1()) {
    if (sym.charges().size() != 2)
      throw ValidationError("bipartite quantity: need exactly two charge operators");
    return {static_cast<int>(sym.charges()[0].matrix.rows()),
            static_cast<int>(sym.charges()[1].matrix.rows())};
  }
  if (!sym.rep().split) throw ValidationError("bipartite quantity: representation has no split");
  (void)rho;
  return {sym.rep().split->dim_a, sym.rep().split->dim_b};
}

}  // namespace

DensityOperator joint_bipartite_state(const DensityOperator& rho1, const DensityOperator& rho2) {
  if (rho1.dims.size() != 2 || rho2.dims.size() != 2)
    throw ValidationError("joint_bipartite_state: inputs must have dims {A, B}");
  DensityOperator joint = kron(rho1, rho2);          // [A1, B1, A2, B2]
  joint = permute_subsystems(joint, {0, 2, 1, 3});   // [A1, A2, B1, B2]
  return as_two_sites(joint, joint.dims[0] * joint.dims[1], joint.dims[2] * joint.dims[3]);
}

Symmetry joint_unipartite_symmetry(const Symmetry& sym1, const Symmetry& sym2) {
  if (sym1.is_u1() != sym2.is_u1())
    throw ValidationError("joint symmetry: cannot mix finite-group and U(1) parts");
  if (sym1.is_u1()) {
    std::vector<ChargeOperator> charges = sym1.charges();
    charges.insert(charges.end(), sym2.charges().begin(), sym2.charges().end());
    return Symmetry::u1(std::move(charges));
  }
  Representation r1 = sym1.rep();
  r1.split.reset();
  Representation r2 = sym2.rep();
  r2.split.reset();
  return Symmetry::finite(tensor_rep(r1, r2));
}

Symmetry joint_bipartite_symmetry(const Symmetry& sym1, const Symmetry& sym2) {
  if (sym1.is_u1() != sym2.is_u1())
    throw ValidationError("joint symmetry: cannot mix finite-group and U(1) parts");
  if (sym1.is_u1()) {
    if (sym1.charges().size() != 2 || sym2.charges().size() != 2)
      throw ValidationError("joint bipartite symmetry: need two charges per system");
    const auto& qa1 = sym1.charges()[0].matrix;
    const auto& qb1 = sym1.charges()[1].matrix;
    const auto& qa2 = sym2.charges()[0].matrix;
    const auto& qb2 = sym2.charges()[1].matrix;
    const Matrix qa = kron(qa1, Matrix::Identity(qa2.rows(), qa2.rows())) +
                      kron(Matrix::Identity(qa1.rows(), qa1.rows()), qa2);
    const Matrix qb = kron(qb1, Matrix::Identity(qb2.rows(), qb2.rows())) +
                      kron(Matrix::Identity(qb1.rows(), qb1.rows()), qb2);
    return Symmetry::u1({ChargeOperator{qa}, ChargeOperator{qb}});
  }

  const auto& s1 = sym1.rep().split;
  const auto& s2 = sym2.rep().split;
  if (!s1 || !s2) throw ValidationError("joint bipartite symmetry: splits required");
  if (sym1.rep().group->name != sym2.rep().group->name)
    throw ValidationError("joint bipartite symmetry: different groups");

  Representation side_a{sym1.rep().group, s1->a, std::nullopt};
  Representation side_a2{sym2.rep().group, s2->a, std::nullopt};
  Representation side_b{sym1.rep().group, s1->b, std::nullopt};
  Representation side_b2{sym2.rep().group, s2->b, std::nullopt};
  Representation a = tensor_rep(side_a, side_a2);
  a.split.reset();
  Representation b = tensor_rep(side_b, side_b2);
  b.split.reset();
  return Symmetry::finite(tensor_rep(a, b));
}

double synergy(const std::string& quantity, const DensityOperator& rho1,
               const DensityOperator& rho2, const Symmetry& sym1, const Symmetry& sym2) {
  const bool bip = (quantity == "W_GxG" || quantity == "A_sh" || quantity == "A_lo");
  if (!bip && quantity != "W" && quantity != "W_G" && quantity != "A_G")
    throw ValidationError("synergy: unknown quantity " + quantity);

  auto eval = [&](const DensityOperator& rho, const Symmetry& sym) {
    if (quantity == "W") return extractable_work(rho);
    if (quantity == "W_G") return work_under_ssr(rho, sym);
    if (quantity == "A_G") return asymmetry(rho, sym);
    if (quantity == "W_GxG") return total_work_local_ssr(rho, sym);
    if (quantity == "A_sh") return shared_asymmetry(rho, sym);
    return local_asymmetry(rho, sym);
  };

  if (bip) {
    const auto [da1, db1] = side_dims(rho1, sym1);
    const auto [da2, db2] = side_dims(rho2, sym2);
    const DensityOperator joint = joint_bipartite_state(as_two_sites(rho1, da1, db1),
                                                        as_two_sites(rho2, da2, db2));
    return eval(joint, joint_bipartite_symmetry(sym1, sym2)) - eval(rho1, sym1) -
           eval(rho2, sym2);
  }
  const DensityOperator joint = joint_unipartite_state(rho1, rho2);
  return eval(joint, joint_unipartite_symmetry(sym1, sym2)) - eval(rho1, sym1) -
         eval(rho2, sym2);
}

CheckResult equality_check(const std::string& name, double lhs, double rhs, double tol) {
  CheckResult r{name, lhs, rhs, std::abs(lhs - rhs), tol, false, false};
  r.pass = r.margin <= tol;
  return r;
}

CheckResult upper_bound_check(const std::string& name, double value, double bound, double tol) {
  CheckResult r{name, value, bound, bound - value, tol, true, false};
  r.pass = r.margin >= -tol;
  return r;
}

CheckResult check_duality(const DensityOperator& rho, const Symmetry& sym) {
  return equality_check("W = W_G + A_G", extractable_work(rho),
                        work_under_ssr(rho, sym) + asymmetry(rho, sym), kIdentityTol);
}

CheckResult check_work_split(const DensityOperator& rho, const Symmetry& sym) {
  return equality_check("W = W_GxG + A_lo", extractable_work(rho),
                        total_work_local_ssr(rho, sym) + local_asymmetry(rho, sym), kIdentityTol);
}

CheckResult check_asymmetry_chain(const DensityOperator& rho, const Symmetry& sym) {
  return equality_check("A_lo = A_sh + A_G", local_asymmetry(rho, sym),
                        shared_asymmetry(rho, sym) + asymmetry(rho, sym), kIdentityTol);
}

CheckResult check_triality(const SymmetricPureState& state) {
  const Symmetry sym = symmetry_of(state);
  const DensityOperator rho = state.psi.density();
  const double w_g = work_under_ssr(rho, sym);
  const double rhs = local_work_under_ssr(state) + accessible_entanglement(state) +
                     shared_asymmetry(rho, sym);
  return equality_check("W_G = W_GxG-L + E_GxG + A_sh", w_g, rhs, kDecompositionTol);
}

CheckResult check_local_twirl_entropy(const SymmetricPureState& state) {
  const Symmetry sym = symmetry_of(state);
  const double lhs = von_neumann_entropy(sym.apply_twirl(state.psi.density(), TwirlKind::Local));
  return equality_check("S(G_GxG[rho^b]) = H_ch + 2 H_co", lhs,
                        charge_entropy(state) + 2.0 * color_entropy(state), kIdentityTol);
}

CheckResult check_local_twirl_closed_form(const SymmetricPureState& state) {
  const Symmetry sym = symmetry_of(state);
  const DensityOperator direct = sym.apply_twirl(state.psi.density(), TwirlKind::Local);
  const DensityOperator closed = local_twirl_closed_form(state);
  const double residual = max_abs(direct.matrix - closed.matrix);
  return equality_check("G_GxG[rho^b] closed form", residual, 0.0, kIdentityTol);
}

CheckResult check_charge_measurement_preserves_E(const SymmetricPureState& state) {
  double avg = 0.0;
  for (const auto& sec : state.sectors) avg += sec.probability * sec.flavor_entropy();
  return equality_check("E_GxG = sum_mu P_mu E(phi_mu)", accessible_entanglement(state), avg,
                        kDecompositionTol);
}

CheckResult check_twirl_composition(const DensityOperator& rho, const Symmetry& sym) {
  const DensityOperator global = sym.apply_twirl(rho, TwirlKind::Global);
  const DensityOperator local_of_global = sym.apply_twirl(global, TwirlKind::Local);
  const DensityOperator left_of_global = sym.apply_twirl(global, TwirlKind::Left);
  const DensityOperator right_of_global = sym.apply_twirl(global, TwirlKind::Right);
  const double residual =
      std::max(max_abs(local_of_global.matrix - left_of_global.matrix),
               max_abs(local_of_global.matrix - right_of_global.matrix));
  return equality_check("local.global = left.global = right.global", residual, 0.0, kIdentityTol);
}

CheckResult check_holevo_identity(const DensityOperator& rho1, const DensityOperator& rho2,
                                  const Symmetry& sym1, const Symmetry& sym2) {
  if (sym1.is_u1() || sym2.is_u1())
    throw ValidationError("check_holevo_identity: finite groups only");
  const DensityOperator joint = joint_unipartite_state(rho1, rho2);
  const Symmetry joint_sym = joint_unipartite_symmetry(sym1, sym2);

  const auto& rep = joint_sym.rep();
  const int n = rep.group->order;
  std::vector<std::pair<double, DensityOperator>> ensemble;
  for (int g = 0; g < n; ++g)
    ensemble.push_back({1.0 / n, DensityOperator{rep.matrices[g] * joint.matrix *
                                                     rep.matrices[g].adjoint(),
                                                 joint.dims}});
  return equality_check("A_G(rho1 x rho2) = chi(twirl ensemble)", asymmetry(joint, joint_sym),
                        holevo_chi(ensemble), kIdentityTol);
}

CheckResult check_u1_matches_cyclic(const DensityOperator& rho,
                                    const std::vector<ChargeOperator>& charges, int n_cyclic,
                                    TwirlKind kind) {
  const DensityOperator exact = u1_dephase(rho, charges, kind);

  // Z_N twirl generated by exp(i 2π k J/N) per site.
  auto cyclic_unitary = [&](int site, int k) {
    const Spectrum spec = eig_hermitian(charges[site].matrix);
    Matrix u = Matrix::Zero(charges[site].matrix.rows(), charges[site].matrix.cols());
    for (Eigen::Index e = 0; e < spec.eigenvalues.size(); ++e)
      u += std::polar(1.0, 2.0 * std::numbers::pi * k * spec.eigenvalues(e) / n_cyclic) *
           spec.eigenvectors.col(e) * spec.eigenvectors.col(e).adjoint();
    return u;
  };

  const int n_sites = static_cast<int>(rho.dims.size());
  auto average_site = [&](const Matrix& m, int site) {
    Matrix acc = Matrix::Zero(m.rows(), m.cols());
    for (int k = 0; k < n_cyclic; ++k) {
      const Matrix u = embed_at_site(cyclic_unitary(site, k), rho.dims, site);
      acc += u * m * u.adjoint();
    }
    return Matrix(acc / static_cast<double>(n_cyclic));
  };

  Matrix approx = rho.matrix;
  switch (kind) {
    case TwirlKind::Global: {
      Matrix acc = Matrix::Zero(rho.dim(), rho.dim());
      for (int k = 0; k < n_cyclic; ++k) {
        Matrix u = Matrix::Identity(1, 1);
        for (int s = 0; s < n_sites; ++s) u = kron(u, cyclic_unitary(s, k));
        acc += u * rho.matrix * u.adjoint();
      }
      approx = acc / static_cast<double>(n_cyclic);
      break;
    }
    case TwirlKind::Local:
      for (int s = 0; s < n_sites; ++s) approx = average_site(approx, s);
      break;
    case TwirlKind::Left:
      approx = average_site(approx, 0);
      break;
    case TwirlKind::Right:
      approx = average_site(approx, 1);
      break;
  }
  return equality_check("U(1) dephasing = Z_N twirl (N=" + std::to_string(n_cyclic) + ")",
                        max_abs(exact.matrix - approx), 0.0, kIdentityTol);
}

std::vector<CheckResult> check_theorem1(const Representation& rep, int n_trials,
                                        std::uint64_t seed) {
  if (n_trials < 1) throw ValidationError("check_theorem1: need at least one trial");
  const Symmetry sym = Symmetry::finite(rep);
  std::vector<CheckResult> results;
  results.reserve(n_trials);
  for (int t = 0; t < n_trials; ++t) {
    const std::uint64_t trial_seed = seed + static_cast<std::uint64_t>(t);
    const DensityOperator rho = random_state({rep.dim()}, Purity::Mixed, trial_seed);
    const int n_outcomes = 1 + static_cast<int>(trial_seed % 3);
    const CovariantInstrument inst =
        random_covariant_instrument(rep, n_outcomes, trial_seed ^ 0x9e3779b97f4a7c15ULL);

    double avg = 0.0;
    for (const auto& outcome : apply_instrument(rho, inst))
      avg += outcome.probability * asymmetry(outcome.state, sym);
    results.push_back(upper_bound_check("theorem1 trial " + std::to_string(t), avg,
                                        asymmetry(rho, sym), kDecompositionTol));
  }
  return results;
}

CheckResult check_theorem2_bound(const DensityOperator& rho1, const DensityOperator& rho2,
                                 const Symmetry& sym1, const Symmetry& sym2) {
  const double syn = synergy("W_G", rho1, rho2, sym1, sym2);
  const double bound = std::min(asymmetry(rho1, sym1), asymmetry(rho2, sym2));
  return upper_bound_check("theorem2: synergy(W_G) <= min A_G", syn, bound, kDecompositionTol);
}

CheckResult check_theorem2_achievability(const DensityOperator& rho1, const Symmetry& sym1) {
  if (sym1.is_u1())
    throw ValidationError("check_theorem2_achievability: finite groups only");
  const GroupPtr group = sym1.rep().group;
  const DensityOperator reference = make_orbit_reference(group).density();
  const Symmetry sym2 = Symmetry::finite(regular_representation(group));
  return equality_check("theorem2 achievability: synergy(W_G) = A_G(rho1)",
                        synergy("W_G", rho1, reference, sym1, sym2), asymmetry(rho1, sym1),
                        kDecompositionTol);
}

CheckResult check_theorem3_bound(const DensityOperator& rho1, const DensityOperator& rho2,
                                 const Symmetry& sym1, const Symmetry& sym2) {
  const double syn = synergy("W_GxG", rho1, rho2, sym1, sym2);
  const double bound = std::min(shared_asymmetry(rho1, sym1), shared_asymmetry(rho2, sym2));
  return upper_bound_check("theorem3: synergy(W_GxG) <= min A_sh", syn, bound, kDecompositionTol);
}

CheckResult check_theorem3_achievability(const DensityOperator& rho1, const Symmetry& sym1) {
  if (sym1.is_u1())
    throw ValidationError("check_theorem3_achievability: finite groups only");
  const GroupPtr group = sym1.rep().group;
  const PureState reference = make_shared_orbit_reference(group);
  const Representation regular = regular_representation(group);
  const Symmetry sym2 = Symmetry::finite(tensor_rep(regular, regular));
  return equality_check("theorem3 achievability: synergy(W_GxG) = A_sh(rho1)",
                        synergy("W_GxG", rho1, reference.density(), sym1, sym2),
                        shared_asymmetry(rho1, sym1), kDecompositionTol);
}

}  // namespace ssr

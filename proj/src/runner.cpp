#include "runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "rng.hpp"

namespace ssr {

namespace {

std::uint64_t group_seed(std::uint64_t seed, int group_index) {
  return seed * 1000003ULL + static_cast<std::uint64_t>(group_index) * 7919ULL;
}

std::vector<std::string> default_groups(const std::string& suite) {
  if (suite == "theorem1" || suite == "appendix") {
    auto names = catalog_names();  // Z1..Z12, S3, D4, Q8
    if (suite == "theorem1") names.erase(names.begin());  // Z1 carries no asymmetry
    return names;
  }
  if (suite == "theorem2" || suite == "theorem3") return {"Z2", "Z3", "Z4", "S3", "D4", "Q8"};
  return {"Z2", "Z3", "Z4", "S3", "D4"};  // identities
}

// Small side representation with at least two sectors and, where the group
// allows it, a flavor-2 isotypic component: triv ⊕ E ⊕ E or chi0 ⊕ chi1 ⊕ chi1.
Representation mid_side_rep(const GroupPtr& g) {
  int two_dim = -1;
  for (int mu = 0; mu < g->num_irreps(); ++mu)
    if (g->irreps[mu].dim == 2) {
      two_dim = mu;
      break;
    }
  const Representation triv = irrep_representation(g, 0);
  const int second = two_dim >= 0 ? two_dim : (g->num_irreps() > 1 ? 1 : 0);
  const Representation extra = irrep_representation(g, second);
  return direct_sum(direct_sum(triv, extra), extra);
}

// 2-dimensional side used where joint spaces must stay small.
Representation pair_side_rep(const GroupPtr& g) {
  for (int mu = 0; mu < g->num_irreps(); ++mu)
    if (g->irreps[mu].dim == 2) return irrep_representation(g, mu);
  const int chi1 = g->num_irreps() > 1 ? 1 : 0;
  return direct_sum(irrep_representation(g, 0), irrep_representation(g, chi1));
}

// Side with two sectors but dimension <= 3: joint local twirls over such
// sides stay cheap even when two systems are tensored together.
Representation sym_side_rep(const GroupPtr& g) {
  for (int mu = 0; mu < g->num_irreps(); ++mu)
    if (g->irreps[mu].dim == 2)
      return direct_sum(irrep_representation(g, 0), irrep_representation(g, mu));
  const int chi1 = g->num_irreps() > 1 ? 1 : 0;
  const Representation c1 = irrep_representation(g, chi1);
  return direct_sum(direct_sum(irrep_representation(g, 0), c1), c1);
}

Representation identities_bipartite_rep(const GroupPtr& g) {
  if (g->order <= 6) {
    const Representation reg = regular_representation(g);
    return tensor_rep(reg, reg);
  }
  const Representation side = mid_side_rep(g);
  return tensor_rep(side, side);
}

// verify --group accepts a catalog name or a group spec file; the suites
// only need the abstract group (they build their own representations).
GroupPtr resolve_group(const std::string& name_or_path) {
  const auto names = catalog_names();
  if (std::find(names.begin(), names.end(), name_or_path) != names.end())
    return make_group(name_or_path);
  return load_group(name_or_path).group;
}

std::vector<int> one_dim_irreps(const FiniteGroup& g) {
  std::vector<int> betas;
  for (int mu = 0; mu < g.num_irreps(); ++mu)
    if (g.irreps[mu].dim == 1) betas.push_back(mu);
  return betas;
}

SymmetricPureState random_from_context(const FiniteGroupContext& ctx, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<PairCoefficient> coeffs;
  for (int mu = 0; mu < ctx.rep.group->num_irreps(); ++mu) {
    if (ctx.decomp_a.mult[mu] == 0 || ctx.decomp_b.mult[ctx.pairs[mu].mu_bar] == 0) continue;
    for (int m = 0; m < ctx.decomp_a.mult[mu]; ++m)
      for (int mb = 0; mb < ctx.decomp_b.mult[ctx.pairs[mu].mu_bar]; ++mb)
        coeffs.push_back({mu, m, mb, rng.complex_gaussian()});
  }
  return build_from_context(ctx, coeffs);
}

// Contexts for every 1-dim beta that admits at least one conjugate couple on
// this representation (on reduced side reps some betas admit none).
std::vector<FiniteGroupContext> usable_contexts(const Representation& bip) {
  std::vector<FiniteGroupContext> out;
  for (int beta : one_dim_irreps(*bip.group)) {
    FiniteGroupContext ctx = make_symmetric_context(bip, beta);
    bool has_couple = false;
    for (int mu = 0; mu < bip.group->num_irreps(); ++mu)
      if (ctx.decomp_a.mult[mu] > 0 && ctx.decomp_b.mult[ctx.pairs[mu].mu_bar] > 0)
        has_couple = true;
    if (has_couple) out.push_back(std::move(ctx));
  }
  if (out.empty())
    throw ValidationError("no beta admits a globally symmetric state on this representation");
  return out;
}

}  // namespace

std::vector<CheckResult> suite_theorem1(const std::vector<std::string>& groups,
                                        int trials_per_group, std::uint64_t seed) {
  std::vector<CheckResult> checks;
  for (int gi = 0; gi < static_cast<int>(groups.size()); ++gi) {
    const GroupPtr g = resolve_group(groups[gi]);
    auto trial_checks =
        check_theorem1(regular_representation(g), trials_per_group, group_seed(seed, gi));
    for (auto& c : trial_checks) {
      c.name = groups[gi] + " " + c.name;
      checks.push_back(std::move(c));
    }
  }
  return checks;
}

std::vector<CheckResult> suite_theorem2(const std::vector<std::string>& groups, int bound_trials,
                                        int achievability_trials, std::uint64_t seed) {
  std::vector<CheckResult> checks;
  const int n_groups = static_cast<int>(groups.size());

  std::vector<Symmetry> syms;
  std::vector<GroupPtr> gptrs;
  for (const auto& name : groups) {
    gptrs.push_back(resolve_group(name));
    syms.push_back(Symmetry::finite(regular_representation(gptrs.back())));
  }

  for (int t = 0; t < bound_trials; ++t) {
    const int gi = t % n_groups;
    const std::uint64_t s = group_seed(seed, gi) + 2ULL * static_cast<std::uint64_t>(t);
    const int d = gptrs[gi]->order;
    const DensityOperator rho1 = random_state({d}, Purity::Mixed, s);
    const DensityOperator rho2 = random_state({d}, Purity::Mixed, s + 1);
    CheckResult c = check_theorem2_bound(rho1, rho2, syms[gi], syms[gi]);
    c.name = groups[gi] + " trial " + std::to_string(t) + ": " + c.name;
    checks.push_back(std::move(c));
  }

  for (int gi = 0; gi < n_groups; ++gi) {
    if (gptrs[gi]->order > 6) continue;  // reference state grows with |G|
    for (int t = 0; t < achievability_trials; ++t) {
      const std::uint64_t s = group_seed(seed ^ 0xabcdULL, gi) + static_cast<std::uint64_t>(t);
      const DensityOperator rho1 = random_state({gptrs[gi]->order}, Purity::Mixed, s);
      CheckResult c = check_theorem2_achievability(rho1, syms[gi]);
      c.name = groups[gi] + " trial " + std::to_string(t) + ": " + c.name;
      checks.push_back(std::move(c));
    }
  }
  return checks;
}

std::vector<CheckResult> suite_theorem3(const std::vector<std::string>& groups, int pair_trials,
                                        std::uint64_t seed) {
  std::vector<CheckResult> checks;
  const bool achievability_only = pair_trials == 0;

  // The named 16-dimensional case: refbit ⊗ refbit under the local U(1) SSR.
  if (!achievability_only) {
    const SymmetricPureState refbit = make_refbit();
    const Symmetry sym = symmetry_of(refbit);
    const DensityOperator rho = refbit.psi.density();
    CheckResult c = check_theorem3_bound(rho, rho, sym, sym);
    c.name = "refbit x refbit: " + c.name;
    checks.push_back(std::move(c));
  }

  // The A_sh bound applies to globally symmetric states (there A_G = 0 and
  // A_sh coincides with A_lo, which is what the Theorem-2-style proof
  // bounds); generic asymmetric pairs violate it, so the trial states are
  // random rho^beta superpositions and mixtures of them across beta.
  const int n_groups = static_cast<int>(groups.size());
  std::vector<Symmetry> syms;
  std::vector<GroupPtr> gptrs;
  std::vector<std::vector<FiniteGroupContext>> contexts;
  std::vector<int> sides;
  for (const auto& name : groups) {
    const GroupPtr g = resolve_group(name);
    gptrs.push_back(g);
    const Representation side = sym_side_rep(g);
    sides.push_back(side.dim());
    const Representation bip = tensor_rep(side, side);
    syms.push_back(Symmetry::finite(bip));
    contexts.push_back(usable_contexts(bip));
  }

  auto symmetric_state = [&](int gi, std::uint64_t s, int variant) {
    const auto& ctxs = contexts[gi];
    if (variant == 2 && ctxs.size() > 1) {
      // Globally symmetric mixed state: equal mixture across two betas.
      const DensityOperator a =
          random_from_context(ctxs[s % ctxs.size()], s).psi.density();
      const DensityOperator b =
          random_from_context(ctxs[(s + 1) % ctxs.size()], s + 13).psi.density();
      return DensityOperator{0.5 * a.matrix + 0.5 * b.matrix, a.dims};
    }
    return random_from_context(ctxs[s % ctxs.size()], s).psi.density();
  };

  const int symmetric_trials = achievability_only ? 0 : std::max(1, (3 * pair_trials) / 4);
  for (int t = 0; t < symmetric_trials; ++t) {
    const int gi = t % n_groups;
    const std::uint64_t s = group_seed(seed, gi) + 4ULL * static_cast<std::uint64_t>(t);
    const DensityOperator rho1 = symmetric_state(gi, s, t % 3);
    const DensityOperator rho2 = symmetric_state(gi, s + 2, (t + 1) % 3);
    CheckResult c = check_theorem3_bound(rho1, rho2, syms[gi], syms[gi]);
    c.name = groups[gi] + " trial " + std::to_string(t) + ": " + c.name;
    checks.push_back(std::move(c));
  }

  // General-state form: for arbitrary bipartite pairs the provable bound is
  // min A_lo (equal to min A_sh on the symmetric states above).
  std::vector<Symmetry> small_syms;
  std::vector<int> small_sides;
  for (const auto& g : gptrs) {
    const Representation side = pair_side_rep(g);
    small_sides.push_back(side.dim());
    small_syms.push_back(Symmetry::finite(tensor_rep(side, side)));
  }
  for (int t = 0; t < pair_trials - symmetric_trials; ++t) {
    const int gi = t % n_groups;
    const std::uint64_t s = group_seed(seed ^ 0x7177ULL, gi) + 2ULL * t;
    const int d = small_sides[gi];
    const DensityOperator rho1 = random_state({d, d}, Purity::Mixed, s);
    const DensityOperator rho2 = random_state({d, d}, Purity::Mixed, s + 1);
    const double syn = synergy("W_GxG", rho1, rho2, small_syms[gi], small_syms[gi]);
    const double bound = std::min(local_asymmetry(rho1, small_syms[gi]),
                                  local_asymmetry(rho2, small_syms[gi]));
    checks.push_back(upper_bound_check(groups[gi] + " trial " + std::to_string(t) +
                                           ": theorem3 general form: synergy(W_GxG) <= min A_lo",
                                       syn, bound, kDecompositionTol));
  }

  const int achievability_trials = achievability_only ? 10 : 3;
  for (int gi = 0; gi < n_groups; ++gi) {
    if (gptrs[gi]->order > 4) continue;  // shared reference has dimension |G|²
    for (int t = 0; t < achievability_trials; ++t) {
      const std::uint64_t s = group_seed(seed ^ 0x37ULL, gi) + static_cast<std::uint64_t>(t);
      const int d = small_sides[gi];
      const DensityOperator rho1 = random_state({d, d}, Purity::Mixed, s);
      CheckResult c = check_theorem3_achievability(rho1, small_syms[gi]);
      c.name = groups[gi] + " trial " + std::to_string(t) + ": " + c.name;
      checks.push_back(std::move(c));
    }
  }
  return checks;
}

std::vector<CheckResult> suite_identities(const std::vector<std::string>& groups,
                                          int trials_per_group, std::uint64_t seed) {
  std::vector<CheckResult> checks;

  for (int gi = 0; gi < static_cast<int>(groups.size()); ++gi) {
    const GroupPtr g = resolve_group(groups[gi]);
    const Representation bip = identities_bipartite_rep(g);
    const Symmetry sym = Symmetry::finite(bip);
    const Representation reg = regular_representation(g);
    const Symmetry sym_uni = Symmetry::finite(reg);
    const std::vector<FiniteGroupContext> contexts = usable_contexts(bip);

    const std::vector<int> bip_dims = {bip.split->dim_a, bip.split->dim_b};
    for (int t = 0; t < trials_per_group; ++t) {
      const std::uint64_t s = group_seed(seed, gi) + 16ULL * static_cast<std::uint64_t>(t);
      const std::string tag = groups[gi] + " trial " + std::to_string(t) + ": ";

      const DensityOperator rho = random_state(bip_dims, Purity::Mixed, s);
      for (CheckResult c : {check_duality(rho, sym), check_work_split(rho, sym),
                            check_asymmetry_chain(rho, sym), check_twirl_composition(rho, sym)}) {
        c.name = tag + c.name;
        checks.push_back(std::move(c));
      }

      const SymmetricPureState symmetric =
          random_from_context(contexts[t % contexts.size()], s + 1);
      for (CheckResult c :
           {check_triality(symmetric), check_local_twirl_entropy(symmetric),
            check_local_twirl_closed_form(symmetric),
            check_charge_measurement_preserves_E(symmetric)}) {
        c.name = tag + c.name;
        checks.push_back(std::move(c));
      }

      const DensityOperator rho_a = random_state({g->order}, Purity::Mixed, s + 2);
      const DensityOperator rho_b = random_state({g->order}, Purity::Mixed, s + 3);
      CheckResult holevo = check_holevo_identity(rho_a, rho_b, sym_uni, sym_uni);
      holevo.name = tag + holevo.name;
      checks.push_back(std::move(holevo));
    }
  }

  // U(1)-specific identities: exact dephasing equals a fine-enough Z_N twirl.
  {
    Matrix number = Matrix::Zero(2, 2);
    number(1, 1) = 1.0;
    Matrix jz(2, 2);
    jz << 0.5, 0.0, 0.0, -0.5;
    Matrix qutrit = Matrix::Zero(3, 3);
    qutrit(1, 1) = 1.0;
    qutrit(2, 2) = 2.0;

    struct U1Case {
      std::vector<int> dims;
      std::vector<ChargeOperator> charges;
      int n_cyclic;
      const char* label;
    };
    const std::vector<U1Case> cases = {
        {{2, 2}, {ChargeOperator{number}, ChargeOperator{number}}, 4, "number charges"},
        {{2, 2}, {ChargeOperator{jz}, ChargeOperator{jz}}, 3, "spin charges"},
        {{3, 2}, {ChargeOperator{qutrit}, ChargeOperator{number}}, 5, "qutrit charges"},
    };
    const TwirlKind kinds[4] = {TwirlKind::Global, TwirlKind::Local, TwirlKind::Left,
                                TwirlKind::Right};
    const int u1_trials = std::max(4, std::min(trials_per_group, 24));
    for (int t = 0; t < u1_trials; ++t) {
      const auto& cs = cases[t % cases.size()];
      const DensityOperator rho = random_state(cs.dims, Purity::Mixed, seed * 31ULL + t);
      CheckResult c = check_u1_matches_cyclic(rho, cs.charges, cs.n_cyclic, kinds[t % 4]);
      c.name = "U(1) trial " + std::to_string(t) + " (" + cs.label + ", " +
               to_string(kinds[t % 4]) + "): " + c.name;
      checks.push_back(std::move(c));

      // Dual-path shared asymmetry: definition vs rewritten form.
      const Symmetry sym_u1 = Symmetry::u1(cs.charges);
      const DensityOperator global = sym_u1.apply_twirl(rho, TwirlKind::Global);
      const double by_definition =
          von_neumann_entropy(sym_u1.apply_twirl(global, TwirlKind::Local)) -
          von_neumann_entropy(global);
      CheckResult dual = equality_check("A_sh definition = rewritten form", by_definition,
                                        shared_asymmetry(rho, sym_u1), kIdentityTol);
      dual.name = "U(1) trial " + std::to_string(t) + ": " + dual.name;
      checks.push_back(std::move(dual));
    }
  }
  return checks;
}

std::vector<CheckResult> suite_appendix(const std::vector<std::string>& groups,
                                        int symmetric_trials, std::uint64_t seed) {
  std::vector<CheckResult> checks;

  for (int gi = 0; gi < static_cast<int>(groups.size()); ++gi) {
    const GroupPtr g = resolve_group(groups[gi]);
    const Representation reg = regular_representation(g);
    const Representation bip = tensor_rep(reg, reg);
    const IrrepDecomposition decomp = decompose(reg);
    const auto betas = one_dim_irreps(*g);

    // Appendix A: every pair state is a T(g)-eigenstate, all β, couples,
    // flavors and elements.
    for (int beta : betas) {
      const auto pairs = find_conjugate_pairs(*g, beta);
      for (const auto& pair : pairs) {
        double worst = 0.0;
        for (int ma = 0; ma < decomp.mult[pair.mu]; ++ma)
          for (int mb = 0; mb < decomp.mult[pair.mu_bar]; ++mb) {
            const PureState psi = build_pair_state(pair, ma, mb, decomp, decomp);
            for (int e = 0; e < g->order; ++e) {
              const Complex lambda = g->irreps[beta].matrices[e](0, 0);
              worst = std::max(worst, (bip.matrices[e] * psi.amplitudes -
                                       lambda * psi.amplitudes)
                                          .norm());
            }
          }
        checks.push_back(equality_check(groups[gi] + " pair-state eigenstate residual beta=" +
                                            g->irreps[beta].label + " mu=" +
                                            g->irreps[pair.mu].label + ": eigenstate residual",
                                        worst, 0.0, 1e-10));
      }
    }

    // Appendix B: [Π_μ ⊗ 1, T_A(g) ⊗ T_B(g')] = 0 exhaustively.  The
    // commutator factorizes as [Π_μ, T_A(g)] ⊗ T_B(g'), whose max-abs entry
    // is the product of the factors' max-abs entries, so the exhaustive max
    // over (g, g') is computed exactly from the per-side maxima.
    const auto sectors = charge_sectors(decomp);
    double tb_max = 0.0;
    for (const auto& t : reg.matrices) tb_max = std::max(tb_max, max_abs(t));
    for (const auto& sec : sectors) {
      double commutator = 0.0;
      for (const auto& t : reg.matrices)
        commutator = std::max(commutator, max_abs(sec.projector * t - t * sec.projector));
      checks.push_back(equality_check(groups[gi] + " charge-projector commutator mu=" +
                                          g->irreps[sec.irrep].label +
                                          ": max |[Pi x 1, T_A x T_B]|",
                                      commutator * tb_max, 0.0, 1e-10));
    }

    // Charge measurement leaves the accessible entanglement untouched.
    if (!betas.empty() && symmetric_trials > 0) {
      const std::vector<FiniteGroupContext> contexts = usable_contexts(bip);
      for (int t = 0; t < symmetric_trials; ++t) {
        const SymmetricPureState state =
            random_from_context(contexts[t % contexts.size()], group_seed(seed, gi) + t);
        CheckResult c = check_charge_measurement_preserves_E(state);
        c.name = groups[gi] + " trial " + std::to_string(t) + ": " + c.name;
        checks.push_back(std::move(c));
      }
    }
  }
  return checks;
}

std::vector<CheckResult> suite_paper_values() {
  std::vector<CheckResult> checks;
  const double tol = 1e-9;

  // --- single spin under the U(1)-SSR --------------------------------------
  const SpinExample spin1 = make_spin_plus(1);
  const Symmetry u1_single = Symmetry::u1(spin1.charges);

  DensityOperator up{Matrix::Zero(2, 2), {2}};
  up.matrix(0, 0) = 1.0;  // |1><1| in the σ_z basis
  checks.push_back(equality_check("spin-up: W(|1>)", extractable_work(up), 1.0, tol));
  checks.push_back(equality_check("spin-up: W_U(|1>)", work_under_ssr(up, u1_single), 1.0, tol));
  checks.push_back(equality_check(
      "spin-up is symmetric: max|G_U[rho]-rho|",
      max_abs(u1_single.apply_twirl(up, TwirlKind::Global).matrix - up.matrix), 0.0, tol));

  const DensityOperator plus = spin1.rho;
  checks.push_back(equality_check("spin-plus: W(|+>)", extractable_work(plus), 1.0, tol));
  checks.push_back(equality_check("spin-plus: W_U(|+>)", work_under_ssr(plus, u1_single), 0.0, tol));
  checks.push_back(equality_check("spin-plus: A_U(|+>)", asymmetry(plus, u1_single), 1.0, tol));

  const DensityOperator plus_twirled = u1_single.apply_twirl(plus, TwirlKind::Global);
  checks.push_back(equality_check("spin-plus twirl: max|G_U[|+><+|] - (|1><1|+|-1><-1|)/2|",
                                  max_abs(plus_twirled.matrix - Matrix::Identity(2, 2) * 0.5),
                                  0.0, tol));
  checks.push_back(
      equality_check("spin-plus twirl entropy: S(G_U[|+><+|])", von_neumann_entropy(plus_twirled), 1.0, tol));

  // --- two spins ------------------------------------------------------------
  const SpinExample spin2 = make_spin_plus(2);
  const Symmetry u1_two = Symmetry::u1(spin2.charges);
  checks.push_back(equality_check("two spins: W(rho1 x rho2)", extractable_work(spin2.rho), 2.0, tol));
  checks.push_back(
      equality_check("two spins: W_U(rho1 x rho2)", work_under_ssr(spin2.rho, u1_two), 0.5, tol));
  checks.push_back(
      equality_check("two spins: A_U(rho1 x rho2)", asymmetry(spin2.rho, u1_two), 1.5, tol));

  {
    // Sector weights ¼ |1,1>, ½ (sym), ¼ |-1,-1> of the twirled state.
    const DensityOperator dephased = u1_two.apply_twirl(spin2.rho, TwirlKind::Global);
    RealVector eigs = eig_hermitian(dephased.matrix).eigenvalues;
    std::sort(eigs.data(), eigs.data() + eigs.size(), std::greater<double>());
    RealVector expected(4);
    expected << 0.5, 0.25, 0.25, 0.0;
    checks.push_back(equality_check("two spins: G_U[rho1 x rho2] spectrum residual",
                                    (eigs - expected).cwiseAbs().maxCoeff(), 0.0, tol));
  }

  checks.push_back(equality_check(
      "two spins: synergy(W_U)", synergy("W_G", spin1.rho, spin1.rho, u1_single, u1_single), 0.5, tol));
  checks.push_back(upper_bound_check(
      "two spins / theorem2: synergy(W_U) <= A_U(rho_i)",
      synergy("W_G", spin1.rho, spin1.rho, u1_single, u1_single), 1.0, tol));
  checks.push_back(equality_check("duality on |+>: W = W_G + A_G", extractable_work(plus),
                                  work_under_ssr(plus, u1_single) + asymmetry(plus, u1_single),
                                  tol));

  // --- Theorem 2 achievability with the regular-orbit reference -------------
  {
    const GroupPtr z3 = make_group("Z3");
    const Symmetry sym = Symmetry::finite(regular_representation(z3));
    const DensityOperator rho = random_state({3}, Purity::Mixed, 7);
    const DensityOperator reference = make_orbit_reference(z3).density();
    const Symmetry sym_ref = Symmetry::finite(regular_representation(z3));
    checks.push_back(equality_check("theorem2 achievability (Z3): synergy(W_G) - A_G",
                                    synergy("W_G", rho, reference, sym, sym_ref) -
                                        asymmetry(rho, sym),
                                    0.0, tol));
    checks.push_back(equality_check("theorem2 reference: A_G = log2|G| (Z3)",
                                    asymmetry(reference, sym_ref), std::log2(3.0), tol));
  }

  // --- refbit ----------------------------------------------------------------
  const SymmetricPureState refbit = make_refbit();
  const Symmetry refbit_sym = symmetry_of(refbit);
  const DensityOperator refbit_rho = refbit.psi.density();
  checks.push_back(
      equality_check("refbit: A_sh", shared_asymmetry(refbit_rho, refbit_sym), 1.0, tol));
  checks.push_back(
      equality_check("refbit: E", entanglement_entropy(refbit.psi, 1), 1.0, tol));
  checks.push_back(equality_check("refbit: H_ch", charge_entropy(refbit), 1.0, tol));
  checks.push_back(equality_check("refbit: H_co", color_entropy(refbit), 0.0, tol));
  checks.push_back(
      equality_check("refbit: E_GxG", accessible_entanglement(refbit), 0.0, tol));
  checks.push_back(
      equality_check("refbit: W_GxG-L", local_work_under_ssr(refbit), 1.0, tol));
  checks.push_back(equality_check("refbit: W_G", work_under_ssr(refbit_rho, refbit_sym),
                                  2.0, tol));
  checks.push_back(equality_check(
      "refbit triality: W_G = W_GxG-L + E_GxG + A_sh",
      work_under_ssr(refbit_rho, refbit_sym),
      local_work_under_ssr(refbit) + accessible_entanglement(refbit) +
          shared_asymmetry(refbit_rho, refbit_sym),
      tol));

  // --- local asymmetry chain and work splitting (Eqs. around A_lo) ----------
  checks.push_back(equality_check("two spins: A_lo = A_sh + A_G",
                                  local_asymmetry(spin2.rho, u1_two),
                                  shared_asymmetry(spin2.rho, u1_two) +
                                      asymmetry(spin2.rho, u1_two),
                                  tol));
  checks.push_back(equality_check("two spins: W = W_GxG + A_lo",
                                  extractable_work(spin2.rho),
                                  total_work_local_ssr(spin2.rho, u1_two) +
                                      local_asymmetry(spin2.rho, u1_two),
                                  tol));

  // --- hierarchy consistency on a fixed S3 state ρ^β -------------------------
  {
    const GroupPtr s3 = make_group("S3");
    const Representation reg = regular_representation(s3);
    const Representation bip = tensor_rep(reg, reg);
    const std::vector<PairCoefficient> coeffs = {
        {0, 0, 0, Complex(0.5, 0.0)},
        {1, 0, 0, Complex(0.0, 0.5)},
        {2, 0, 1, Complex(0.5, 0.0)},
        {2, 1, 0, Complex(-0.5, 0.0)},
    };
    const SymmetricPureState state = build_symmetric_state(bip, 0, coeffs);
    const Symmetry sym = symmetry_of(state);
    const DensityOperator rho = state.psi.density();
    const DensityOperator twirled = sym.apply_twirl(rho, TwirlKind::Global);

    checks.push_back(equality_check("rho^b (S3): G_G fixes the state",
                                    max_abs(twirled.matrix - rho.matrix), 0.0, tol));
    checks.push_back(equality_check("rho^b: W_G = W",
                                    work_under_ssr(rho, sym), extractable_work(rho), tol));
    const double e_of_twirled = von_neumann_entropy(partial_trace(twirled, {0}));
    const double e_direct = entanglement_entropy(state.psi, 1);
    checks.push_back(equality_check("rho^b: E_G = E", e_of_twirled, e_direct, tol));
    checks.push_back(equality_check("rho^b: W_G-L = W_L",
                                    std::log2(static_cast<double>(rho.dim())) - e_of_twirled,
                                    local_work_pure(state.psi, 1), tol));
    checks.push_back(equality_check("rho^b: W_GxG = W_GxG-L + E_GxG",
                                    total_work_local_ssr(rho, sym),
                                    local_work_under_ssr(state) + accessible_entanglement(state),
                                    tol));
    checks.push_back(equality_check("rho^b: W_GxG-L = W_L - H_co",
                                    local_work_under_ssr(state),
                                    local_work_pure(state.psi, 1) - color_entropy(state), tol));

    double eigenstate_residual = 0.0;
    for (int e = 0; e < s3->order; ++e)
      eigenstate_residual = std::max(
          eigenstate_residual,
          (bip.matrices[e] * state.psi.amplitudes - state.psi.amplitudes).norm());
    checks.push_back(equality_check("rho^b (S3, beta=triv): T(g)|Psi> = |Psi> residual",
                                    eigenstate_residual, 0.0, tol));
  }

  return checks;
}

// ---------------------------------------------------------------------------
// Report assembly
// ---------------------------------------------------------------------------

Json check_to_json(const CheckResult& check) {
  Json j;
  j["name"] = check.name;
  j["kind"] = check.is_bound ? "bound" : "equality";
  j["lhs"] = round_sig15(check.lhs);
  j["rhs"] = round_sig15(check.rhs);
  j["margin"] = round_sig15(check.margin);
  j["tolerance"] = check.tolerance;
  j["pass"] = check.pass;
  return j;
}

namespace {

void apply_tolerance_override(std::vector<CheckResult>& checks, std::optional<double> tol) {
  if (!tol) return;
  for (auto& c : checks) {
    c.tolerance = *tol;
    c.pass = c.pass_at(*tol);
  }
}

Json checks_section(const std::vector<CheckResult>& checks) {
  Json arr = Json::array();
  int passed = 0;
  for (const auto& c : checks) {
    arr.push_back(check_to_json(c));
    if (c.pass) ++passed;
  }
  Json section;
  section["total"] = static_cast<int>(checks.size());
  section["passed"] = passed;
  section["pass"] = passed == static_cast<int>(checks.size());
  section["results"] = std::move(arr);
  return section;
}

Json report_skeleton(const RunConfig& config) {
  Json report;
  report["tool"] = Json{{"name", "ssr"}, {"version", kToolVersion}};
  report["config"] = config_to_json(config);
  return report;
}

struct LoadedInputs {
  std::optional<GroupBundle> group;
  StateBundle state;
  std::optional<Symmetry> symmetry;
};

LoadedInputs load_resources_inputs(const RunConfig& config) {
  LoadedInputs in;
  if (!config.group.empty()) in.group = load_group(config.group);
  if (config.state.empty())
    throw ValidationError("resources: --state is required");
  in.state = load_state(config.state, in.group ? &*in.group : nullptr);
  if (!config.charges_path.empty()) in.state.charges = load_charges(config.charges_path);

  const ValidationReport density_report = validate_density(in.state.rho);
  if (!density_report.ok())
    throw ValidationError("state invalid: " + density_report.summary());

  // A user-supplied pure state that is an eigenstate of the total charge
  // gets the full rho^beta sector analysis.
  if (!in.state.symmetric && in.state.pure && in.state.charges.size() == 2 &&
      in.state.rho.dims.size() == 2) {
    try {
      in.state.symmetric =
          make_u1_symmetric(*in.state.pure, in.state.charges[0], in.state.charges[1]);
    } catch (const ValidationError&) {
      // not globally symmetric; sector quantities stay absent
    }
  }

  if (in.state.symmetric) {
    in.symmetry = symmetry_of(*in.state.symmetric);
  } else if (!in.state.charges.empty()) {
    if (in.state.charges.size() != in.state.rho.dims.size())
      throw ValidationError("charges: need one operator per subsystem");
    for (size_t s = 0; s < in.state.charges.size(); ++s)
      if (in.state.charges[s].matrix.rows() != in.state.rho.dims[s])
        throw ValidationError("charges: dimension mismatch at site " + std::to_string(s));
    in.symmetry = Symmetry::u1(in.state.charges);
  } else if (in.group) {
    if (in.group->rep.dim() != in.state.rho.dim())
      throw ValidationError("group representation dimension " +
                            std::to_string(in.group->rep.dim()) +
                            " does not match the state dimension " +
                            std::to_string(in.state.rho.dim()));
    in.symmetry = Symmetry::finite(in.group->rep);
  } else {
    throw ValidationError(
        "resources: provide --group or --charges, or use a builder state with intrinsic charges");
  }
  return in;
}

Json cmd_resources(const RunConfig& config, std::vector<CheckResult>& checks) {
  LoadedInputs in = load_resources_inputs(config);
  const DensityOperator& rho = in.state.rho;
  const Symmetry& sym = *in.symmetry;

  Json quantities;
  quantities["W"] = round_sig15(extractable_work(rho));
  quantities["W_G"] = round_sig15(work_under_ssr(rho, sym));
  quantities["A_G"] = round_sig15(asymmetry(rho, sym));

  const bool two_site = rho.dims.size() == 2;
  const bool bipartite = sym.bipartite() && two_site;
  if (bipartite) {
    quantities["W_GxG"] = round_sig15(total_work_local_ssr(rho, sym));
    quantities["A_sh"] = round_sig15(shared_asymmetry(rho, sym));
    quantities["A_lo"] = round_sig15(local_asymmetry(rho, sym));
  }
  if (in.state.pure && two_site) {
    quantities["E"] = round_sig15(entanglement_entropy(*in.state.pure, 1));
    quantities["W_L"] = round_sig15(local_work_pure(*in.state.pure, 1));
  }
  if (in.state.symmetric) {
    const auto& state = *in.state.symmetric;
    quantities["H_ch"] = round_sig15(charge_entropy(state));
    quantities["H_co"] = round_sig15(color_entropy(state));
    quantities["E_GxG"] = round_sig15(accessible_entanglement(state));
    quantities["W_GxG_L"] = round_sig15(local_work_under_ssr(state));
  }

  checks.push_back(check_duality(rho, sym));
  if (bipartite) {
    checks.push_back(check_work_split(rho, sym));
    checks.push_back(check_asymmetry_chain(rho, sym));
  }
  if (in.state.symmetric) checks.push_back(check_triality(*in.state.symmetric));

  Json body;
  body["state"] = in.state.description;
  body["symmetry"] = sym.describe();
  body["inputs_digest"] = state_digest(rho);
  body["quantities"] = std::move(quantities);
  body["tolerances"] = Json{{"identity", kIdentityTol}, {"decomposition", kDecompositionTol}};
  return body;
}

Json cmd_decompose(const RunConfig& config, std::vector<CheckResult>& checks) {
  if (config.group.empty()) throw ValidationError("decompose: --group is required");
  const GroupBundle bundle = load_group(config.group);
  const Representation& rep = bundle.rep;

  const ValidationReport rep_report = validate_representation(rep);
  if (!rep_report.ok())
    throw ValidationError("representation invalid: " + rep_report.summary());

  const auto mult = multiplicities(rep);
  const IrrepDecomposition dec = decompose(rep);
  const auto& g = *bundle.group;

  Json body;
  body["group"] = g.name;
  body["order"] = g.order;
  body["representation_dim"] = rep.dim();

  Json irreps = Json::array();
  for (int mu = 0; mu < g.num_irreps(); ++mu)
    irreps.push_back(Json{{"label", g.irreps[mu].label},
                          {"dim", g.irreps[mu].dim},
                          {"multiplicity", mult[mu]}});
  body["irreps"] = std::move(irreps);

  Json blocks = Json::array();
  for (const auto& b : dec.blocks)
    blocks.push_back(Json{{"irrep", g.irreps[b.irrep].label},
                          {"flavor", b.flavor},
                          {"offset", b.offset},
                          {"dim", g.irreps[b.irrep].dim}});
  body["blocks"] = std::move(blocks);
  body["total_blocks"] = dec.total_blocks();

  Json sectors = Json::array();
  for (const auto& sec : charge_sectors(dec))
    sectors.push_back(Json{{"irrep", g.irreps[sec.irrep].label},
                           {"flavor_dim", sec.flavor_dim},
                           {"color_dim", sec.color_dim},
                           {"rank", sec.flavor_dim * sec.color_dim}});
  body["charge_sectors"] = std::move(sectors);

  // Conjugate couples for every one-dimensional β.
  Json couples = Json::array();
  for (int beta = 0; beta < g.num_irreps(); ++beta) {
    if (g.irreps[beta].dim != 1) continue;
    for (const auto& pair : find_conjugate_pairs(g, beta)) {
      couples.push_back(Json{{"beta", g.irreps[beta].label},
                             {"mu", g.irreps[pair.mu].label},
                             {"mu_bar", g.irreps[pair.mu_bar].label},
                             {"intertwiner", matrix_to_json(pair.intertwiner)},
                             {"residual", round_sig15(pair_residual(g, pair))}});
      checks.push_back(equality_check("conjugate couple residual beta=" +
                                          g.irreps[beta].label + " mu=" + g.irreps[pair.mu].label,
                                      pair_residual(g, pair), 0.0, 1e-9));
    }
  }
  body["conjugate_couples"] = std::move(couples);

  checks.push_back(
      equality_check("grand orthogonality residual", grand_orthogonality_residual(g), 0.0, 1e-10));
  checks.push_back(equality_check("adapted basis unitarity",
                                  max_abs(dec.basis.adjoint() * dec.basis -
                                          Matrix::Identity(rep.dim(), rep.dim())),
                                  0.0, 1e-10));

  double block_residual = 0.0;
  for (int e = 0; e < g.order; ++e) {
    Matrix transformed = dec.basis.adjoint() * rep.matrices[e] * dec.basis;
    for (const auto& b : dec.blocks) {
      const int d_mu = g.irreps[b.irrep].dim;
      transformed.block(b.offset, b.offset, d_mu, d_mu) -= g.irreps[b.irrep].matrices[e];
    }
    block_residual = std::max(block_residual, max_abs(transformed));
  }
  checks.push_back(equality_check("block diagonalization residual", block_residual, 0.0, 1e-9));

  double proj_comm = 0.0;
  for (const auto& sec : charge_sectors(dec))
    for (const auto& t : rep.matrices)
      proj_comm = std::max(proj_comm, max_abs(sec.projector * t - t * sec.projector));
  checks.push_back(equality_check("[Pi_mu, T(g)] residual", proj_comm, 0.0, 1e-10));

  return body;
}

Json cmd_verify(const RunConfig& config, std::vector<CheckResult>& checks) {
  const std::string suite = config.suite.empty() ? "all" : config.suite;
  const std::vector<std::string> known = {"theorem1", "theorem2", "theorem3",
                                          "identities", "appendix", "all"};
  if (std::find(known.begin(), known.end(), suite) == known.end())
    throw ValidationError("verify: unknown suite \"" + suite + "\"");

  auto groups_for = [&](const std::string& s) {
    return config.group.empty() ? default_groups(s) : std::vector<std::string>{config.group};
  };
  const int trials = config.trials;

  if (suite == "theorem1" || suite == "all")
    for (auto& c : suite_theorem1(groups_for("theorem1"), trials > 0 ? trials : 500, config.seed))
      checks.push_back(std::move(c));
  if (suite == "theorem2" || suite == "all") {
    const int bound_trials = config.achievability ? 0 : (trials > 0 ? trials : 500);
    const int achiev_trials =
        config.achievability ? (trials > 0 ? trials : 50) : (trials > 0 ? std::max(1, trials / 25) : 20);
    for (auto& c : suite_theorem2(groups_for("theorem2"), bound_trials, achiev_trials, config.seed))
      checks.push_back(std::move(c));
  }
  if (suite == "theorem3" || suite == "all")
    for (auto& c : suite_theorem3(groups_for("theorem3"),
                                  config.achievability ? 0 : (trials > 0 ? trials : 200),
                                  config.seed))
      checks.push_back(std::move(c));
  if (suite == "identities" || suite == "all")
    for (auto& c : suite_identities(groups_for("identities"), trials > 0 ? trials : 25,
                                    config.seed))
      checks.push_back(std::move(c));
  if (suite == "appendix" || suite == "all")
    for (auto& c : suite_appendix(groups_for("appendix"), trials > 0 ? trials : 10, config.seed))
      checks.push_back(std::move(c));

  Json body;
  body["suite"] = suite;
  body["seed"] = config.seed;
  return body;
}

}  // namespace

RunResult run_command(const RunConfig& config) {
  RunResult result;
  result.report = report_skeleton(config);
  const auto start = std::chrono::steady_clock::now();

  std::vector<CheckResult> checks;
  try {
    if (config.command == "resources") {
      result.report["resources"] = cmd_resources(config, checks);
      apply_tolerance_override(checks, config.tol);
    } else if (config.command == "decompose") {
      result.report["decomposition"] = cmd_decompose(config, checks);
      apply_tolerance_override(checks, config.tol);
    } else if (config.command == "verify") {
      result.report["verify"] = cmd_verify(config, checks);
      apply_tolerance_override(checks, config.tol);
    } else if (config.command == "reproduce-paper") {
      checks = suite_paper_values();  // tolerances pinned, --tol ignored
      result.report["reproduce_paper"] = Json{{"rows", static_cast<int>(checks.size())}};
    } else {
      throw ValidationError("unknown command \"" + config.command + "\"");
    }
  } catch (const ParseError& e) {
    result.report["error"] = e.what();
    result.status = kStatusParse;
    return result;
  } catch (const ValidationError& e) {
    result.report["error"] = e.what();
    result.status = kStatusValidation;
    return result;
  }

  result.report["checks"] = checks_section(checks);
  const bool all_pass = result.report["checks"]["pass"].get<bool>();
  result.status = all_pass ? kStatusOk : kStatusCheckFailed;

  const auto stop = std::chrono::steady_clock::now();
  result.report["timings"] = Json{
      {"wall_ms",
       std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count()}};
  return result;
}

RunConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("config: expected a JSON object");
  static const std::set<std::string> known = {"command", "group",  "state", "charges",
                                              "suite",   "seed",   "trials", "tol",
                                              "achievability"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) throw ParseError("config: unknown field \"" + key + "\"");
  if (!j.contains("command")) throw ParseError("config: missing \"command\"");

  RunConfig c;
  c.command = j.at("command").get<std::string>();
  if (j.contains("group")) c.group = j.at("group").get<std::string>();
  if (j.contains("state")) c.state = j.at("state").get<std::string>();
  if (j.contains("charges")) c.charges_path = j.at("charges").get<std::string>();
  if (j.contains("suite")) c.suite = j.at("suite").get<std::string>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("trials")) {
    c.trials = j.at("trials").get<int>();
    if (c.trials < 1) throw ValidationError("config: trials must be >= 1");
  }
  if (j.contains("tol")) {
    c.tol = j.at("tol").get<double>();
    if (*c.tol <= 0.0) throw ValidationError("config: tol must be positive");
  }
  if (j.contains("achievability")) c.achievability = j.at("achievability").get<bool>();
  return c;
}

Json config_to_json(const RunConfig& config) {
  Json j;
  j["command"] = config.command;
  if (!config.group.empty()) j["group"] = config.group;
  if (!config.state.empty()) j["state"] = config.state;
  if (!config.charges_path.empty()) j["charges"] = config.charges_path;
  if (!config.suite.empty()) j["suite"] = config.suite;
  j["seed"] = config.seed;
  if (config.trials > 0) j["trials"] = config.trials;
  if (config.tol) j["tol"] = *config.tol;
  if (config.achievability) j["achievability"] = true;
  return j;
}

}  // namespace ssr

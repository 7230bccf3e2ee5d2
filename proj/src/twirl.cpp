#include "twirl.hpp"

#include <algorithm>
#include <cmath>

#include "rng.hpp"

namespace ssr {

const char* to_string(TwirlKind kind) {
  switch (kind) {
    case TwirlKind::Global: return "global";
    case TwirlKind::Local: return "local";
    case TwirlKind::Left: return "left";
    case TwirlKind::Right: return "right";
  }
  return "?";
}

DensityOperator twirl(const DensityOperator& rho, const Representation& rep, TwirlKind kind) {
  const int d = rho.dim();
  if (rep.dim() != d) throw ValidationError("twirl: representation does not act on this space");
  const int n = rep.group->order;

  DensityOperator out{Matrix::Zero(d, d), rho.dims};
  if (kind == TwirlKind::Global) {
    for (int g = 0; g < n; ++g)
      out.matrix += rep.matrices[g] * rho.matrix * rep.matrices[g].adjoint();
    out.matrix /= static_cast<double>(n);
    return out;
  }

  if (!rep.split) throw ValidationError("twirl: " + std::string(to_string(kind)) +
                                        " twirl requires a bipartite split");
  const auto& split = *rep.split;
  if (split.dim_a * split.dim_b != d)
    throw ValidationError("twirl: split dimensions do not match the state");
  const Matrix ia = Matrix::Identity(split.dim_a, split.dim_a);
  const Matrix ib = Matrix::Identity(split.dim_b, split.dim_b);

  if (kind == TwirlKind::Left) {
    for (int g = 0; g < n; ++g) {
      const Matrix t = kron(split.a[g], ib);
      out.matrix += t * rho.matrix * t.adjoint();
    }
    out.matrix /= static_cast<double>(n);
    return out;
  }
  if (kind == TwirlKind::Right) {
    for (int g = 0; g < n; ++g) {
      const Matrix t = kron(ia, split.b[g]);
      out.matrix += t * rho.matrix * t.adjoint();
    }
    out.matrix /= static_cast<double>(n);
    return out;
  }

  // Local: independent averages over both sites, Eq.-style double sum.
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      const Matrix t = kron(split.a[g], split.b[h]);
      out.matrix += t * rho.matrix * t.adjoint();
    }
  out.matrix /= static_cast<double>(n) * n;
  return out;
}

ValidationReport validate_charge(const ChargeOperator& q) {
  ValidationReport report;
  if (q.matrix.rows() != q.matrix.cols()) {
    report.issues.push_back({"square", 0.0, 0.0});
    return report;
  }
  const double herm = max_abs(q.matrix - q.matrix.adjoint());
  if (herm > 1e-10) {
    report.issues.push_back({"hermitian", herm, 1e-10});
    return report;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver((q.matrix + q.matrix.adjoint()) / 2.0);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double doubled = 2.0 * solver.eigenvalues()(i);
    worst = std::max(worst, std::abs(doubled - std::round(doubled)));
  }
  if (worst > 1e-8) report.issues.push_back({"half-integer-spectrum", worst, 1e-8});
  return report;
}

Matrix embed_at_site(const Matrix& q, const std::vector<int>& dims, int site) {
  Matrix out = Matrix::Identity(1, 1);
  for (int s = 0; s < static_cast<int>(dims.size()); ++s) {
    if (s == site)
      out = kron(out, q);
    else
      out = kron(out, Matrix::Identity(dims[s], dims[s]));
  }
  return out;
}

namespace {

// ρ → Σ_q Π_q ρ Π_q over the eigenspaces of a Hermitian charge operator.
Matrix dephase_by(const Matrix& rho, const Matrix& charge) {
  if (max_abs(charge - charge.adjoint()) > 1e-10)
    throw ValidationError("u1_dephase: charge operator is not Hermitian");
  const Spectrum spec = eig_hermitian(charge);
  const int d = static_cast<int>(rho.rows());

  Matrix out = Matrix::Zero(d, d);
  int start = 0;
  while (start < d) {
    int stop = start + 1;
    while (stop < d && spec.eigenvalues(stop) - spec.eigenvalues(stop - 1) <= 1e-8) ++stop;
    const Matrix sector = spec.eigenvectors.middleCols(start, stop - start);
    const Matrix proj = sector * sector.adjoint();
    out += proj * rho * proj;
    start = stop;
  }
  return out;
}

}  // namespace

DensityOperator u1_dephase(const DensityOperator& rho, const std::vector<ChargeOperator>& charges,
                           TwirlKind kind) {
  const int n_sites = static_cast<int>(rho.dims.size());
  if (static_cast<int>(charges.size()) != n_sites)
    throw ValidationError("u1_dephase: need one charge operator per subsystem");
  for (int s = 0; s < n_sites; ++s)
    if (charges[s].matrix.rows() != rho.dims[s] || charges[s].matrix.cols() != rho.dims[s])
      throw ValidationError("u1_dephase: charge operator dimension mismatch at site " +
                            std::to_string(s));

  DensityOperator out{rho.matrix, rho.dims};
  switch (kind) {
    case TwirlKind::Global: {
      Matrix total = Matrix::Zero(rho.dim(), rho.dim());
      for (int s = 0; s < n_sites; ++s) total += embed_at_site(charges[s].matrix, rho.dims, s);
      out.matrix = dephase_by(out.matrix, total);
      return out;
    }
    case TwirlKind::Local: {
      for (int s = 0; s < n_sites; ++s)
        out.matrix = dephase_by(out.matrix, embed_at_site(charges[s].matrix, rho.dims, s));
      return out;
    }
    case TwirlKind::Left:
    case TwirlKind::Right: {
      if (n_sites != 2)
        throw ValidationError("u1_dephase: one-sided twirl needs a bipartite state");
      const int s = (kind == TwirlKind::Left) ? 0 : 1;
      out.matrix = dephase_by(out.matrix, embed_at_site(charges[s].matrix, rho.dims, s));
      return out;
    }
  }
  throw ValidationError("u1_dephase: unknown kind");
}

std::vector<Matrix> commutant_basis(const Representation& rep) {
  const IrrepDecomposition dec = decompose(rep);
  const auto sectors = charge_sectors(dec);
  const int d = rep.dim();

  std::vector<Matrix> basis;
  for (const auto& sec : sectors) {
    const int m_mu = sec.flavor_dim;
    const int d_mu = sec.color_dim;
    const double norm = 1.0 / std::sqrt(static_cast<double>(d_mu));
    for (int m = 0; m < m_mu; ++m)
      for (int mp = 0; mp < m_mu; ++mp) {
        // (1/√D_μ) Σ_i |μ,m,i><μ,m',i| acts on flavor only.
        Matrix b = Matrix::Zero(d, d);
        for (int i = 0; i < d_mu; ++i)
          b += sec.isometry.col(m * d_mu + i) * sec.isometry.col(mp * d_mu + i).adjoint();
        basis.push_back(b * norm);
      }
  }
  return basis;
}

int CovariantInstrument::dim() const {
  for (const auto& outcome : outcomes)
    if (!outcome.empty()) return static_cast<int>(outcome.front().rows());
  return 0;
}

CovariantInstrument random_covariant_instrument(const Representation& rep, int n_outcomes,
                                                std::uint64_t seed) {
  if (n_outcomes < 1) throw ValidationError("random_covariant_instrument: need >= 1 outcome");
  const auto basis = commutant_basis(rep);
  const int d = rep.dim();
  Rng rng(seed);

  std::vector<Matrix> raw;
  for (int j = 0; j < n_outcomes; ++j) {
    Matrix a = Matrix::Zero(d, d);
    for (const auto& b : basis) a += rng.complex_gaussian() * b;
    raw.push_back(std::move(a));
  }

  Matrix gram = Matrix::Zero(d, d);
  for (const auto& a : raw) gram += a.adjoint() * a;
  const double top = eig_hermitian(gram).eigenvalues.maxCoeff();
  // Scale so Σ K†K = 1/2 at the top of the spectrum; keeps 1 − R comfortably
  // positive before the completion Kraus is added.
  const double scale = top > 0.0 ? 1.0 / std::sqrt(2.0 * top) : 0.0;

  CovariantInstrument inst;
  inst.label = "random-covariant(seed=" + std::to_string(seed) + ")";
  Matrix r = Matrix::Zero(d, d);
  for (const auto& a : raw) {
    Matrix k = a * scale;
    r += k.adjoint() * k;
    inst.outcomes.push_back({std::move(k)});
  }

  // Completion: (1 − R)^{1/2} is a function of a commutant element, hence
  // itself in the commutant and covariant.
  const Spectrum spec = eig_hermitian(Matrix::Identity(d, d) - r);
  Matrix root = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
    const double lam = std::max(0.0, spec.eigenvalues(i));
    root += std::sqrt(lam) * spec.eigenvectors.col(i) * spec.eigenvectors.col(i).adjoint();
  }
  inst.outcomes.back().push_back(std::move(root));
  return inst;
}

CovariantInstrument projective_instrument(const std::vector<Matrix>& projectors,
                                          const std::string& label) {
  CovariantInstrument inst;
  inst.label = label;
  for (const auto& p : projectors) inst.outcomes.push_back({p});
  return inst;
}

std::vector<InstrumentOutcome> apply_instrument(const DensityOperator& rho,
                                                const CovariantInstrument& inst) {
  if (inst.dim() != rho.dim()) throw ValidationError("apply_instrument: dimension mismatch");
  std::vector<InstrumentOutcome> results;
  double total = 0.0;
  for (int j = 0; j < static_cast<int>(inst.outcomes.size()); ++j) {
    Matrix post = Matrix::Zero(rho.dim(), rho.dim());
    for (const auto& k : inst.outcomes[j]) post += k * rho.matrix * k.adjoint();
    const double p = post.trace().real();
    total += p;
    if (p < 1e-12) continue;
    results.push_back({j, p, DensityOperator{post / p, rho.dims}});
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw ValidationError("apply_instrument: outcome probabilities sum to " + std::to_string(total));
  return results;
}

CovarianceReport validate_covariance(const CovariantInstrument& inst, const Representation& rep,
                                     std::uint64_t probe_seed) {
  CovarianceReport report;
  const int d = inst.dim();
  if (d != rep.dim()) throw ValidationError("validate_covariance: dimension mismatch");

  Matrix sum = Matrix::Zero(d, d);
  for (const auto& outcome : inst.outcomes)
    for (const auto& k : outcome) {
      sum += k.adjoint() * k;
      for (const auto& t : rep.matrices)
        report.kraus_commutator_residual =
            std::max(report.kraus_commutator_residual, max_abs(k * t - t * k));
    }
  report.completeness_residual = max_abs(sum - Matrix::Identity(d, d));

  // Operational residual on a fixed probe set of 8 seeded random states.
  Rng rng(probe_seed);
  for (int probe = 0; probe < 8; ++probe) {
    Matrix a(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) a(r, c) = rng.complex_gaussian();
    Matrix rho = a * a.adjoint();
    rho /= rho.trace().real();

    for (const auto& outcome : inst.outcomes) {
      auto apply = [&](const Matrix& x) {
        Matrix y = Matrix::Zero(d, d);
        for (const auto& k : outcome) y += k * x * k.adjoint();
        return y;
      };
      for (const auto& t : rep.matrices) {
        const Matrix lhs = apply(t * rho * t.adjoint());
        const Matrix rhs = t * apply(rho) * t.adjoint();
        report.operational_residual = std::max(report.operational_residual, max_abs(lhs - rhs));
      }
    }
  }
  return report;
}

}  // namespace ssr

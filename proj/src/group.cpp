#include "group.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "rng.hpp"

namespace ssr {

namespace {

constexpr double kPi = std::numbers::pi;

Matrix scalar1x1(Complex z) {
  Matrix m(1, 1);
  m(0, 0) = z;
  return m;
}

GroupPtr make_cyclic(int n) {
  auto g = std::make_shared<FiniteGroup>();
  g->name = "Z" + std::to_string(n);
  g->order = n;
  g->identity = 0;
  g->mult.assign(n, std::vector<int>(n));
  g->inverse.assign(n, 0);
  for (int a = 0; a < n; ++a) {
    g->inverse[a] = (n - a) % n;
    for (int b = 0; b < n; ++b) g->mult[a][b] = (a + b) % n;
  }
  for (int mu = 0; mu < n; ++mu) {
    Irrep ir;
    ir.label = "chi" + std::to_string(mu);
    ir.dim = 1;
    for (int k = 0; k < n; ++k)
      ir.matrices.push_back(scalar1x1(std::polar(1.0, 2.0 * kPi * ((mu * k) % n) / n)));
    g->irreps.push_back(std::move(ir));
  }
  return g;
}

using Perm = std::array<int, 3>;

Perm perm_compose(const Perm& p, const Perm& q) {
  return Perm{p[q[0]], p[q[1]], p[q[2]]};
}

int perm_sign(const Perm& p) {
  int inv = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (p[i] > p[j]) ++inv;
  return inv % 2 ? -1 : 1;
}

GroupPtr make_s3() {
  // Element order: e, the three transpositions, then the two 3-cycles.
  const std::vector<Perm> perms = {
      {0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
  const int n = 6;

  auto g = std::make_shared<FiniteGroup>();
  g->name = "S3";
  g->order = n;
  g->identity = 0;
  g->mult.assign(n, std::vector<int>(n));
  g->inverse.assign(n, 0);

  auto index_of = [&](const Perm& p) {
    for (int i = 0; i < n; ++i)
      if (perms[i] == p) return i;
    throw ValidationError("S3 construction: permutation not found");
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g->mult[a][b] = index_of(perm_compose(perms[a], perms[b]));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g->mult[a][b] == 0) g->inverse[a] = b;

  Irrep triv{"triv", 1, {}};
  Irrep sign{"sign", 1, {}};
  for (int a = 0; a < n; ++a) {
    triv.matrices.push_back(scalar1x1(1.0));
    sign.matrices.push_back(scalar1x1(static_cast<double>(perm_sign(perms[a]))));
  }

  // Standard irrep: the permutation representation restricted to the plane
  // orthogonal to (1,1,1), in the orthonormal basis below.
  Eigen::Matrix<double, 3, 2> basis;
  basis << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(6.0),
          -1.0 / std::sqrt(2.0), 1.0 / std::sqrt(6.0),
           0.0,                 -2.0 / std::sqrt(6.0);
  Irrep standard{"std", 2, {}};
  for (int a = 0; a < n; ++a) {
    Eigen::Matrix3d p = Eigen::Matrix3d::Zero();
    for (int x = 0; x < 3; ++x) p(perms[a][x], x) = 1.0;
    Eigen::Matrix2d t = basis.transpose() * p * basis;
    standard.matrices.push_back(t.cast<Complex>());
  }

  g->irreps = {std::move(triv), std::move(sign), std::move(standard)};
  return g;
}

GroupPtr make_d4() {
  // Element index f*4 + k represents s^f r^k, with s r s = r^{-1}.
  const int n = 8;
  auto g = std::make_shared<FiniteGroup>();
  g->name = "D4";
  g->order = n;
  g->identity = 0;
  g->mult.assign(n, std::vector<int>(n));
  g->inverse.assign(n, 0);

  auto idx = [](int f, int k) { return f * 4 + ((k % 4) + 4) % 4; };
  for (int f1 = 0; f1 < 2; ++f1)
    for (int k1 = 0; k1 < 4; ++k1)
      for (int f2 = 0; f2 < 2; ++f2)
        for (int k2 = 0; k2 < 4; ++k2)
          g->mult[idx(f1, k1)][idx(f2, k2)] = idx(f1 ^ f2, (f2 ? -k1 : k1) + k2);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g->mult[a][b] == 0) g->inverse[a] = b;

  auto one_dim = [&](const std::string& label, int r_sign, int s_sign) {
    Irrep ir{label, 1, {}};
    for (int f = 0; f < 2; ++f)
      for (int k = 0; k < 4; ++k) {
        const double v = std::pow(static_cast<double>(s_sign), f) *
                         std::pow(static_cast<double>(r_sign), k);
        ir.matrices.push_back(scalar1x1(v));
      }
    return ir;
  };

  Matrix rot(2, 2), refl(2, 2);
  rot << 0, -1, 1, 0;   // rotation by π/2
  refl << 1, 0, 0, -1;  // reflection
  Irrep e2{"E", 2, {}};
  for (int f = 0; f < 2; ++f)
    for (int k = 0; k < 4; ++k) {
      Matrix m = Matrix::Identity(2, 2);
      for (int t = 0; t < k; ++t) m = rot * m;
      if (f) m = refl * m;
      e2.matrices.push_back(m);
    }

  g->irreps = {one_dim("A1", 1, 1), one_dim("A2", 1, -1), one_dim("B1", -1, 1),
               one_dim("B2", -1, -1), std::move(e2)};
  return g;
}

GroupPtr make_q8() {
  // Elements 0..7: +1, -1, +i, -i, +j, -j, +k, -k.
  const int n = 8;
  auto axis = [](int e) { return e / 2; };      // 0:1, 1:i, 2:j, 3:k
  auto sign = [](int e) { return e % 2 ? -1 : 1; };
  auto encode = [](int ax, int sg) { return ax * 2 + (sg < 0 ? 1 : 0); };

  // Basis product table: i j = k, j k = i, k i = j, squares are -1.
  auto axis_mult = [](int a, int b) -> std::pair<int, int> {
    if (a == 0) return {b, 1};
    if (b == 0) return {a, 1};
    if (a == b) return {0, -1};
    static const int res[4][4] = {{0, 0, 0, 0}, {0, 0, 3, 2}, {0, 3, 0, 1}, {0, 2, 1, 0}};
    static const int sg[4][4] = {{1, 1, 1, 1}, {1, 1, 1, -1}, {1, -1, 1, 1}, {1, 1, -1, 1}};
    return {res[a][b], sg[a][b]};
  };

  auto g = std::make_shared<FiniteGroup>();
  g->name = "Q8";
  g->order = n;
  g->identity = 0;
  g->mult.assign(n, std::vector<int>(n));
  g->inverse.assign(n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto [ax, sg] = axis_mult(axis(a), axis(b));
      g->mult[a][b] = encode(ax, sg * sign(a) * sign(b));
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g->mult[a][b] == 0) g->inverse[a] = b;

  // 1-dim irreps factor through Q8/{±1} ≅ Z2×Z2.
  auto one_dim = [&](const std::string& label, int chi_i, int chi_j) {
    Irrep ir{label, 1, {}};
    const int chi[4] = {1, chi_i, chi_j, chi_i * chi_j};
    for (int e = 0; e < n; ++e) ir.matrices.push_back(scalar1x1(static_cast<double>(chi[axis(e)])));
    return ir;
  };

  const Complex I0(0.0, 1.0);
  Matrix mi(2, 2), mj(2, 2), mk(2, 2);
  mi << I0, 0, 0, -I0;
  mj << 0, 1, -1, 0;
  mk << 0, I0, I0, 0;
  Irrep e2{"E", 2, {}};
  const Matrix units[4] = {Matrix::Identity(2, 2), mi, mj, mk};
  for (int e = 0; e < n; ++e) e2.matrices.push_back(static_cast<double>(sign(e)) * units[axis(e)]);

  g->irreps = {one_dim("A1", 1, 1), one_dim("B1", 1, -1), one_dim("B2", -1, 1),
               one_dim("B3", -1, -1), std::move(e2)};
  return g;
}

}  // namespace

GroupPtr make_group(const std::string& kind) {
  if (kind.size() >= 2 && kind[0] == 'Z') {
    int n = 0;
    try {
      n = std::stoi(kind.substr(1));
    } catch (...) {
      throw ValidationError("unknown group kind: " + kind);
    }
    if (n < 1 || n > 12) throw ValidationError("cyclic catalog covers Z1..Z12, got " + kind);
    return make_cyclic(n);
  }
  if (kind == "S3") return make_s3();
  if (kind == "D4") return make_d4();
  if (kind == "Q8") return make_q8();
  throw ValidationError("unknown group kind: " + kind);
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  for (int n = 1; n <= 12; ++n) names.push_back("Z" + std::to_string(n));
  names.push_back("S3");
  names.push_back("D4");
  names.push_back("Q8");
  return names;
}

ValidationReport validate_group(const FiniteGroup& g) {
  ValidationReport report;
  const int n = g.order;
  auto fail = [&](const std::string& what, double mag, double tol) {
    report.issues.push_back({what, mag, tol});
  };

  if (n <= 0 || static_cast<int>(g.mult.size()) != n ||
      static_cast<int>(g.inverse.size()) != n) {
    fail("table-shape", static_cast<double>(g.mult.size()), 0.0);
    return report;
  }
  for (const auto& row : g.mult)
    if (static_cast<int>(row.size()) != n) {
      fail("table-shape", static_cast<double>(row.size()), 0.0);
      return report;
    }

  bool assoc = true;
  for (int a = 0; a < n && assoc; ++a)
    for (int b = 0; b < n && assoc; ++b)
      for (int c = 0; c < n && assoc; ++c)
        if (g.mult[g.mult[a][b]][c] != g.mult[a][g.mult[b][c]]) assoc = false;
  if (!assoc) fail("associativity", 1.0, 0.0);

  for (int a = 0; a < n; ++a) {
    if (g.mult[g.identity][a] != a || g.mult[a][g.identity] != a) {
      fail("identity", static_cast<double>(a), 0.0);
      break;
    }
  }
  for (int a = 0; a < n; ++a) {
    if (g.mult[a][g.inverse[a]] != g.identity || g.mult[g.inverse[a]][a] != g.identity) {
      fail("inverse", static_cast<double>(a), 0.0);
      break;
    }
  }

  int dim_sq = 0;
  for (const auto& ir : g.irreps) dim_sq += ir.dim * ir.dim;
  if (dim_sq != n) fail("sum-of-squared-dims", static_cast<double>(dim_sq), static_cast<double>(n));

  double hom = 0.0, unit = 0.0, irr = 0.0;
  for (const auto& ir : g.irreps) {
    if (static_cast<int>(ir.matrices.size()) != n) {
      fail("irrep-element-count:" + ir.label, static_cast<double>(ir.matrices.size()), 0.0);
      continue;
    }
    for (int a = 0; a < n; ++a) {
      unit = std::max(unit, max_abs(ir.matrices[a] * ir.matrices[a].adjoint() -
                                    Matrix::Identity(ir.dim, ir.dim)));
      for (int b = 0; b < n; ++b)
        hom = std::max(hom, max_abs(ir.matrices[a] * ir.matrices[b] - ir.matrices[g.mult[a][b]]));
    }
    double chi2 = 0.0;
    for (int a = 0; a < n; ++a) chi2 += std::norm(ir.character(a));
    irr = std::max(irr, std::abs(chi2 - n));
  }
  if (hom > 1e-10) fail("irrep-homomorphism", hom, 1e-10);
  if (unit > 1e-10) fail("irrep-unitarity", unit, 1e-10);
  if (irr > 1e-8) fail("irrep-irreducibility", irr, 1e-8);
  return report;
}

Representation irrep_representation(const GroupPtr& g, int mu) {
  if (mu < 0 || mu >= g->num_irreps()) throw ValidationError("irrep index out of range");
  Representation rep;
  rep.group = g;
  rep.matrices = g->irreps[mu].matrices;
  return rep;
}

Representation regular_representation(const GroupPtr& g) {
  Representation rep;
  rep.group = g;
  const int n = g->order;
  for (int a = 0; a < n; ++a) {
    Matrix m = Matrix::Zero(n, n);
    for (int h = 0; h < n; ++h) m(g->mult[a][h], h) = 1.0;
    rep.matrices.push_back(std::move(m));
  }
  return rep;
}

Representation direct_sum(const Representation& r1, const Representation& r2) {
  if (r1.group != r2.group && r1.group->name != r2.group->name)
    throw ValidationError("direct_sum: representations of different groups");
  Representation rep;
  rep.group = r1.group;
  const int d1 = r1.dim(), d2 = r2.dim();
  for (int a = 0; a < r1.group->order; ++a) {
    Matrix m = Matrix::Zero(d1 + d2, d1 + d2);
    m.topLeftCorner(d1, d1) = r1.matrices[a];
    m.bottomRightCorner(d2, d2) = r2.matrices[a];
    rep.matrices.push_back(std::move(m));
  }
  return rep;
}

Representation tensor_rep(const Representation& a, const Representation& b) {
  if (a.group != b.group && a.group->name != b.group->name)
    throw ValidationError("tensor_rep: representations of different groups");
  Representation rep;
  rep.group = a.group;
  Representation::Split split;
  split.dim_a = a.dim();
  split.dim_b = b.dim();
  split.a = a.matrices;
  split.b = b.matrices;
  for (int g = 0; g < a.group->order; ++g)
    rep.matrices.push_back(kron(a.matrices[g], b.matrices[g]));
  rep.split = std::move(split);
  return rep;
}

ValidationReport validate_representation(const Representation& rep) {
  ValidationReport report;
  const auto& g = *rep.group;
  const int d = rep.dim();
  if (static_cast<int>(rep.matrices.size()) != g.order) {
    report.issues.push_back({"element-count", static_cast<double>(rep.matrices.size()),
                             static_cast<double>(g.order)});
    return report;
  }
  double hom = 0.0, unit = 0.0;
  for (int a = 0; a < g.order; ++a) {
    unit = std::max(unit, max_abs(rep.matrices[a] * rep.matrices[a].adjoint() -
                                  Matrix::Identity(d, d)));
    for (int b = 0; b < g.order; ++b)
      hom = std::max(hom, max_abs(rep.matrices[a] * rep.matrices[b] - rep.matrices[g.mult[a][b]]));
  }
  if (hom > 1e-10) report.issues.push_back({"homomorphism", hom, 1e-10});
  if (unit > 1e-10) report.issues.push_back({"unitarity", unit, 1e-10});

  if (rep.split) {
    double fact = 0.0;
    for (int a = 0; a < g.order; ++a)
      fact = std::max(fact, max_abs(rep.matrices[a] - kron(rep.split->a[a], rep.split->b[a])));
    if (fact > 1e-10) report.issues.push_back({"factorization", fact, 1e-10});
  }
  return report;
}

std::vector<Complex> characters(const Representation& rep) {
  std::vector<Complex> chi;
  chi.reserve(rep.matrices.size());
  for (const auto& m : rep.matrices) chi.push_back(m.trace());
  return chi;
}

std::vector<int> multiplicities(const Representation& rep) {
  const auto& g = *rep.group;
  const auto chi = characters(rep);
  std::vector<int> mult(g.num_irreps(), 0);
  int total_dim = 0;
  for (int mu = 0; mu < g.num_irreps(); ++mu) {
    Complex m = 0.0;
    for (int a = 0; a < g.order; ++a) m += std::conj(g.irreps[mu].character(a)) * chi[a];
    m /= static_cast<double>(g.order);
    const double rounded = std::round(m.real());
    if (std::abs(m - Complex(rounded, 0.0)) > 1e-8 || rounded < -0.5)
      throw ValidationError("multiplicities: representation inconsistent with catalog irreps (mu=" +
                            g.irreps[mu].label + ")");
    mult[mu] = static_cast<int>(rounded);
    total_dim += mult[mu] * g.irreps[mu].dim;
  }
  if (total_dim != rep.dim())
    throw ValidationError("multiplicities: Σ M^μ D_μ does not match the representation dimension");
  return mult;
}

namespace {

// P^μ_{ij} = (D_μ/|G|) Σ_g [T^μ_{ij}(g)]* T(g): transfer operators of the
// grand orthogonality theorem.  P_{00} projects onto row-0 vectors; P_{i0}
// maps them to the row-i vector of the same irrep copy.
Matrix transfer_operator(const Representation& rep, int mu, int i, int j) {
  const auto& g = *rep.group;
  const auto& ir = g.irreps[mu];
  const int d = rep.dim();
  Matrix p = Matrix::Zero(d, d);
  for (int a = 0; a < g.order; ++a) p += std::conj(ir.matrices[a](i, j)) * rep.matrices[a];
  return p * (static_cast<double>(ir.dim) / g.order);
}

// Orthonormal basis of the range of an orthogonal projector, preferring
// first-occurrence order of the projected standard basis vectors.
std::vector<Vector> projector_range_basis(const Matrix& proj, int expected_rank) {
  const int d = static_cast<int>(proj.rows());
  std::vector<Vector> basis;
  for (int k = 0; k < d && static_cast<int>(basis.size()) < expected_rank; ++k) {
    Vector w = proj.col(k);  // P e_k
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& v : basis) w -= v * v.dot(w);
    const double nrm = w.norm();
    if (nrm > 1e-6) basis.push_back(w / nrm);
  }
  if (static_cast<int>(basis.size()) == expected_rank) return basis;

  // Gram-Schmidt selection can starve on ill-conditioned user input; fall
  // back to the spectral basis of the projector.
  basis.clear();
  Eigen::SelfAdjointEigenSolver<Matrix> solver((proj + proj.adjoint()) / 2.0);
  for (int k = d - 1; k >= 0 && static_cast<int>(basis.size()) < expected_rank; --k) {
    if (solver.eigenvalues()(k) > 0.5) basis.push_back(solver.eigenvectors().col(k));
  }
  if (static_cast<int>(basis.size()) != expected_rank)
    throw ValidationError("decompose: projector rank does not match multiplicity");
  return basis;
}

}  // namespace

Vector IrrepDecomposition::basis_vector(int mu, int flavor, int color) const {
  for (const auto& b : blocks)
    if (b.irrep == mu && b.flavor == flavor) return basis.col(b.offset + color);
  throw ValidationError("basis_vector: no such block");
}

IrrepDecomposition decompose(const Representation& rep) {
  const auto& g = *rep.group;
  IrrepDecomposition out;
  out.group = rep.group;
  out.mult = multiplicities(rep);
  const int d = rep.dim();
  out.basis = Matrix::Zero(d, d);

  int col = 0;
  for (int mu = 0; mu < g.num_irreps(); ++mu) {
    const int m_mu = out.mult[mu];
    if (m_mu == 0) continue;  // zero-dimensional isotypic component: absent
    const int d_mu = g.irreps[mu].dim;

    const Matrix p00 = transfer_operator(rep, mu, 0, 0);
    std::vector<Matrix> pi0(d_mu);
    pi0[0] = p00;
    for (int i = 1; i < d_mu; ++i) pi0[i] = transfer_operator(rep, mu, i, 0);

    const auto seeds = projector_range_basis(p00, m_mu);
    for (int m = 0; m < m_mu; ++m) {
      out.blocks.push_back({mu, m, col});
      // |μ, m, i> = P_{i0} v_m carries the catalog irrep matrices exactly.
      for (int i = 0; i < d_mu; ++i) out.basis.col(col++) = pi0[i] * seeds[m];
    }
  }
  if (col != d) throw ValidationError("decompose: adapted basis incomplete");
  return out;
}

double pair_residual(const FiniteGroup& g, const ConjugatePair& pair) {
  const auto& tmu = g.irreps[pair.mu].matrices;
  const auto& tbar = g.irreps[pair.mu_bar].matrices;
  const auto& beta = g.irreps[pair.beta].matrices;
  double residual = 0.0;
  for (int a = 0; a < g.order; ++a) {
    const Matrix rhs =
        pair.intertwiner * (beta[a](0, 0) * tbar[a].conjugate()) * pair.intertwiner.adjoint();
    residual = std::max(residual, max_abs(tmu[a] - rhs));
  }
  return residual;
}

std::vector<ConjugatePair> find_conjugate_pairs(const FiniteGroup& g, int beta,
                                                std::uint64_t seed) {
  if (beta < 0 || beta >= g.num_irreps() || g.irreps[beta].dim != 1)
    throw ValidationError("find_conjugate_pairs: beta must index a one-dimensional irrep");

  std::vector<ConjugatePair> pairs;
  Rng rng(seed);
  for (int mu = 0; mu < g.num_irreps(); ++mu) {
    const int d_mu = g.irreps[mu].dim;
    std::optional<ConjugatePair> found;
    for (int nu = 0; nu < g.num_irreps(); ++nu) {
      if (g.irreps[nu].dim != d_mu) continue;

      // M = (1/|G|) Σ_g T^μ(g) X λ^β(g)* [T^ν(g)]^T is 0 or invertible by
      // Schur's lemma; a norm in the dead zone means the seed matrix X was
      // pathological, so retry with a fresh one.
      Matrix intertwiner;
      bool is_pair = false;
      int attempt = 0;
      for (; attempt < 8; ++attempt) {
        Matrix x(d_mu, d_mu);
        for (int r = 0; r < d_mu; ++r)
          for (int c = 0; c < d_mu; ++c) x(r, c) = rng.complex_gaussian();
        Matrix m = Matrix::Zero(d_mu, d_mu);
        for (int a = 0; a < g.order; ++a)
          m += g.irreps[mu].matrices[a] * x * std::conj(g.irreps[beta].matrices[a](0, 0)) *
               g.irreps[nu].matrices[a].transpose();
        m /= static_cast<double>(g.order);

        const double scale = std::max(1.0, max_abs(x));
        const double nrm = m.norm();
        if (nrm < 1e-8 * scale) {
          is_pair = false;
          break;
        }
        if (nrm < 1e-4 * scale) continue;  // dead zone

        // Unitarize via polar decomposition: C = U V† from M = U Σ V†.
        Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
        intertwiner = svd.matrixU() * svd.matrixV().adjoint();
        is_pair = true;
        break;
      }
      if (attempt == 8)
        throw ValidationError("find_conjugate_pairs: intertwiner norm stayed ambiguous after 8 retries");
      if (!is_pair) continue;

      // Canonical phase: largest-magnitude entry made real positive.
      Eigen::Index rmax = 0, cmax = 0;
      intertwiner.cwiseAbs().maxCoeff(&rmax, &cmax);
      const Complex z = intertwiner(rmax, cmax);
      intertwiner *= std::conj(z) / std::abs(z);

      ConjugatePair cand{mu, nu, beta, intertwiner};
      if (pair_residual(g, cand) > 1e-9) continue;
      if (found)
        throw ValidationError("find_conjugate_pairs: conjugate partner not unique for irrep " +
                              g.irreps[mu].label);
      found = std::move(cand);
    }
    if (!found)
      throw ValidationError("find_conjugate_pairs: no conjugate partner for irrep " +
                            g.irreps[mu].label);
    pairs.push_back(std::move(*found));
  }
  return pairs;
}

double grand_orthogonality_residual(const FiniteGroup& g) {
  double residual = 0.0;
  for (int mu = 0; mu < g.num_irreps(); ++mu)
    for (int nu = 0; nu < g.num_irreps(); ++nu) {
      const auto& a = g.irreps[mu];
      const auto& b = g.irreps[nu];
      for (int k = 0; k < a.dim; ++k)
        for (int l = 0; l < a.dim; ++l)
          for (int n = 0; n < b.dim; ++n)
            for (int m = 0; m < b.dim; ++m) {
              Complex sum = 0.0;
              for (int e = 0; e < g.order; ++e)
                sum += a.matrices[e](k, l) * std::conj(b.matrices[e](n, m));
              const double expected =
                  (mu == nu && k == n && l == m) ? static_cast<double>(g.order) / a.dim : 0.0;
              residual = std::max(residual, std::abs(sum - Complex(expected, 0.0)));
            }
    }
  return residual;
}

std::vector<ChargeSector> charge_sectors(const IrrepDecomposition& d) {
  const auto& g = *d.group;
  std::vector<ChargeSector> sectors;
  for (int mu = 0; mu < g.num_irreps(); ++mu) {
    const int m_mu = d.mult[mu];
    if (m_mu == 0) continue;
    const int d_mu = g.irreps[mu].dim;
    ChargeSector sec;
    sec.irrep = mu;
    sec.flavor_dim = m_mu;
    sec.color_dim = d_mu;
    sec.isometry.resize(d.dim(), m_mu * d_mu);
    int col = 0;
    for (const auto& blk : d.blocks) {
      if (blk.irrep != mu) continue;
      for (int i = 0; i < d_mu; ++i) sec.isometry.col(col++) = d.basis.col(blk.offset + i);
    }
    sec.projector = sec.isometry * sec.isometry.adjoint();
    sectors.push_back(std::move(sec));
  }
  return sectors;
}

}  // namespace ssr

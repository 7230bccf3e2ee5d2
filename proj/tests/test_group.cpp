#include <doctest.h>

#include <cmath>
#include <numbers>

#include "group.hpp"
#include "rng.hpp"

using namespace ssr;

TEST_CASE("catalog: every group passes full validation") {
  for (const auto& name : catalog_names()) {
    const GroupPtr g = make_group(name);
    const ValidationReport report = validate_group(*g);
    INFO(name, ": ", report.summary());
    CHECK(report.ok());
  }
}

TEST_CASE("catalog: unknown kind throws") {
  CHECK_THROWS_AS(make_group("Z13"), ValidationError);
  CHECK_THROWS_AS(make_group("A5"), ValidationError);
}

TEST_CASE("Z2 has the trivial and sign irreps") {
  const GroupPtr g = make_group("Z2");
  CHECK(g->order == 2);
  REQUIRE(g->num_irreps() == 2);
  CHECK(g->irreps[0].matrices[1](0, 0).real() == doctest::Approx(1.0));
  CHECK(g->irreps[1].matrices[1](0, 0).real() == doctest::Approx(-1.0));
}

TEST_CASE("S3 irrep dimensions satisfy the sum-of-squares relation") {
  const GroupPtr g = make_group("S3");
  REQUIRE(g->num_irreps() == 3);
  int sum = 0;
  std::vector<int> dims;
  for (const auto& ir : g->irreps) {
    dims.push_back(ir.dim);
    sum += ir.dim * ir.dim;
  }
  CHECK(dims == std::vector<int>{1, 1, 2});
  CHECK(sum == g->order);
}

TEST_CASE("D4 character table: dims (1,1,1,1,2) and orthogonal rows") {
  const GroupPtr g = make_group("D4");
  REQUIRE(g->num_irreps() == 5);
  std::vector<int> dims;
  for (const auto& ir : g->irreps) dims.push_back(ir.dim);
  CHECK(dims == std::vector<int>{1, 1, 1, 1, 2});

  // Hand character-table oracle in the element order e, r, r2, r3, s, sr, sr2, sr3.
  // Characters of E: (2, 0, -2, 0, 0, 0, 0, 0).
  const auto& e2 = g->irreps[4];
  const double expected[8] = {2, 0, -2, 0, 0, 0, 0, 0};
  for (int a = 0; a < 8; ++a)
    CHECK(e2.character(a).real() == doctest::Approx(expected[a]).epsilon(1e-12));
}

TEST_CASE("character orthogonality holds across every catalog") {
  for (const auto& name : catalog_names()) {
    const GroupPtr g = make_group(name);
    for (int mu = 0; mu < g->num_irreps(); ++mu)
      for (int nu = 0; nu < g->num_irreps(); ++nu) {
        Complex ip = 0.0;
        for (int a = 0; a < g->order; ++a)
          ip += g->irreps[mu].character(a) * std::conj(g->irreps[nu].character(a));
        ip /= static_cast<double>(g->order);
        const double expected = mu == nu ? 1.0 : 0.0;
        INFO(name, " mu=", mu, " nu=", nu);
        CHECK(std::abs(ip - Complex(expected, 0.0)) < 1e-10);
      }
  }
}

TEST_CASE("regular representation characters: |G| at identity, zero elsewhere") {
  const GroupPtr g = make_group("S3");
  const auto chi = characters(regular_representation(g));
  CHECK(chi[0].real() == doctest::Approx(6.0));
  for (int a = 1; a < 6; ++a) CHECK(std::abs(chi[a]) < 1e-12);
}

TEST_CASE("multiplicities: regular rep of S3 is {1, 1, 2}") {
  const GroupPtr g = make_group("S3");
  const auto mult = multiplicities(regular_representation(g));

  // Character-orthogonality oracle computed by hand: M^mu = chi^mu(e).
  CHECK(mult == std::vector<int>{1, 1, 2});
}

TEST_CASE("multiplicities: an irrep contains only itself") {
  const GroupPtr g = make_group("S3");
  for (int mu = 0; mu < 3; ++mu) {
    const auto mult = multiplicities(irrep_representation(g, mu));
    for (int nu = 0; nu < 3; ++nu) CHECK(mult[nu] == (nu == mu ? 1 : 0));
  }
}

TEST_CASE("multiplicities: std x std of S3 = triv + sign + std") {
  const GroupPtr g = make_group("S3");
  const Representation std2 = irrep_representation(g, 2);
  const auto mult = multiplicities(tensor_rep(std2, std2));
  CHECK(mult == std::vector<int>{1, 1, 1});
}

TEST_CASE("validate_representation: regular rep passes, corrupted rep fails") {
  const GroupPtr g = make_group("Z4");
  Representation rep = regular_representation(g);
  CHECK(validate_representation(rep).ok());

  // Swapping two elements that are not related by an automorphism breaks the
  // homomorphism property (1 -> 2 is not invertible in Z4).
  std::swap(rep.matrices[1], rep.matrices[2]);
  const ValidationReport report = validate_representation(rep);
  REQUIRE_FALSE(report.ok());
  CHECK(report.issues.front().invariant == "homomorphism");
}

TEST_CASE("validate_representation: tensor product records its split") {
  const GroupPtr g = make_group("Z4");
  const Representation a = regular_representation(g);
  const Representation b = irrep_representation(g, 1);
  const Representation prod = tensor_rep(a, b);
  REQUIRE(prod.split.has_value());
  CHECK(prod.split->dim_a == 4);
  CHECK(prod.split->dim_b == 1);
  CHECK(validate_representation(prod).ok());
}

TEST_CASE("decompose: already-diagonal Z2 rep keeps the computational basis") {
  const GroupPtr g = make_group("Z2");
  const Representation rep =
      direct_sum(irrep_representation(g, 0), irrep_representation(g, 1));
  const IrrepDecomposition dec = decompose(rep);
  CHECK(max_abs(dec.basis - Matrix::Identity(2, 2)) < 1e-12);
  REQUIRE(dec.blocks.size() == 2);
  CHECK(dec.blocks[0].irrep == 0);
  CHECK(dec.blocks[1].irrep == 1);
}

TEST_CASE("decompose: regular rep of Z3 matches the DFT oracle") {
  const GroupPtr g = make_group("Z3");
  const Representation rep = regular_representation(g);
  const IrrepDecomposition dec = decompose(rep);
  REQUIRE(dec.blocks.size() == 3);

  // Each adapted basis vector must be the corresponding DFT column (up to
  // phase): T(1) v_mu = omega^{-mu}... verified through the block property
  // below, and the blocks carry characters 1, w, w2.
  for (int mu = 0; mu < 3; ++mu) {
    const Vector v = dec.basis_vector(mu, 0, 0);
    const Complex expected = g->irreps[mu].matrices[1](0, 0);
    const Vector transformed = rep.matrices[1] * v;
    CHECK((transformed - expected * v).norm() < 1e-10);
  }
}

TEST_CASE("decompose: regular rep of S3 yields blocks (1,1,2,2)") {
  const GroupPtr g = make_group("S3");
  const Representation rep = regular_representation(g);
  const IrrepDecomposition dec = decompose(rep);

  std::vector<int> block_dims;
  for (const auto& b : dec.blocks) block_dims.push_back(g->irreps[b.irrep].dim);
  CHECK(block_dims == std::vector<int>{1, 1, 2, 2});

  // Brute-force commutant oracle: the commutant dimension of the regular
  // representation equals sum of squared multiplicities = 1 + 1 + 4 = 6.
  // Count the kernel of the commutator system over a Hermitian basis.
  const int d = 6;
  std::vector<Matrix> herm_basis;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      Matrix m = Matrix::Zero(d, d);
      if (i == j) {
        m(i, i) = 1.0;
        herm_basis.push_back(m);
      } else {
        m(i, j) = m(j, i) = 1.0;
        herm_basis.push_back(m);
        Matrix n = Matrix::Zero(d, d);
        n(i, j) = Complex(0.0, 1.0);
        n(j, i) = Complex(0.0, -1.0);
        herm_basis.push_back(n);
      }
    }
  Eigen::MatrixXd system(static_cast<int>(herm_basis.size()),
                         2 * d * d * g->order);
  for (int k = 0; k < static_cast<int>(herm_basis.size()); ++k) {
    int col = 0;
    for (int a = 0; a < g->order; ++a) {
      const Matrix comm = herm_basis[k] * rep.matrices[a] - rep.matrices[a] * herm_basis[k];
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
          system(k, col++) = comm(r, c).real();
          system(k, col++) = comm(r, c).imag();
        }
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
  lu.setThreshold(1e-8);
  const int commutant_dim = static_cast<int>(herm_basis.size()) - lu.rank();
  CHECK(commutant_dim == 6);
}

TEST_CASE("decompose: blocks carry the catalog irrep matrices themselves") {
  for (const auto& name : {"Z4", "S3", "D4", "Q8"}) {
    const GroupPtr g = make_group(name);
    const Representation rep = regular_representation(g);
    const IrrepDecomposition dec = decompose(rep);

    CHECK(max_abs(dec.basis.adjoint() * dec.basis -
                  Matrix::Identity(rep.dim(), rep.dim())) < 1e-10);

    double residual = 0.0;
    for (int a = 0; a < g->order; ++a) {
      Matrix transformed = dec.basis.adjoint() * rep.matrices[a] * dec.basis;
      for (const auto& b : dec.blocks) {
        const int d_mu = g->irreps[b.irrep].dim;
        transformed.block(b.offset, b.offset, d_mu, d_mu) -= g->irreps[b.irrep].matrices[a];
      }
      residual = std::max(residual, max_abs(transformed));
    }
    INFO(name);
    CHECK(residual < 1e-9);
  }
}

TEST_CASE("decompose rejects a representation outside the catalog span") {
  // A 1-dim rep of Z3 with a character that is no irrep of the catalog group
  // cannot appear, so corrupt an irrep copy instead: scale breaks unitarity
  // and multiplicity rounding.
  const GroupPtr g = make_group("Z3");
  Representation rep = irrep_representation(g, 1);
  rep.matrices[1] *= 1.5;
  CHECK_THROWS_AS(multiplicities(rep), ValidationError);
}

TEST_CASE("conjugate pairs: Z_N with trivial beta pairs mu with -mu") {
  for (int n : {2, 3, 4, 6, 12}) {
    const GroupPtr g = make_group("Z" + std::to_string(n));
    const auto pairs = find_conjugate_pairs(*g, 0);
    REQUIRE(static_cast<int>(pairs.size()) == n);
    for (int mu = 0; mu < n; ++mu) {
      CHECK(pairs[mu].mu == mu);
      CHECK(pairs[mu].mu_bar == (n - mu) % n);
      CHECK(max_abs(pairs[mu].intertwiner - Matrix::Identity(1, 1)) < 1e-9);
    }
  }
}

TEST_CASE("conjugate pairs: Z_N with beta=b obeys the character product oracle") {
  const int n = 6;
  const GroupPtr g = make_group("Z6");
  for (int beta = 0; beta < n; ++beta) {
    const auto pairs = find_conjugate_pairs(*g, beta);
    for (int mu = 0; mu < n; ++mu) {
      // lambda^mu * lambda^mubar = lambda^beta  =>  mubar = (beta - mu) mod N
      CHECK(pairs[mu].mu_bar == ((beta - mu) % n + n) % n);
    }
  }
}

TEST_CASE("conjugate pairs: S3 standard irrep is self-conjugate, residual small") {
  const GroupPtr g = make_group("S3");
  for (int beta : {0, 1}) {
    const auto pairs = find_conjugate_pairs(*g, beta);
    REQUIRE(pairs.size() == 3);
    CHECK(pairs[2].mu_bar == 2);
    for (const auto& pair : pairs) CHECK(pair_residual(*g, pair) < 1e-9);
  }
}

TEST_CASE("conjugate pairs: rejects a beta that is not one-dimensional") {
  const GroupPtr g = make_group("S3");
  CHECK_THROWS_AS(find_conjugate_pairs(*g, 2), ValidationError);
}

TEST_CASE("conjugate pairs exist across the whole catalog, all betas") {
  for (const auto& name : catalog_names()) {
    const GroupPtr g = make_group(name);
    for (int beta = 0; beta < g->num_irreps(); ++beta) {
      if (g->irreps[beta].dim != 1) continue;
      const auto pairs = find_conjugate_pairs(*g, beta);
      CHECK(static_cast<int>(pairs.size()) == g->num_irreps());
      for (const auto& pair : pairs) {
        INFO(name, " beta=", beta, " mu=", pair.mu);
        CHECK(pair_residual(*g, pair) < 1e-9);
      }
    }
  }
}

TEST_CASE("grand orthogonality: catalog residuals below 1e-10") {
  for (const auto& name : {"Z4", "S3", "D4", "Q8"}) {
    const GroupPtr g = make_group(name);
    INFO(name);
    CHECK(grand_orthogonality_residual(*g) < 1e-10);
  }
}

TEST_CASE("grand orthogonality: corrupted irrep entry is loud") {
  auto g = std::make_shared<FiniteGroup>(*make_group("Z4"));
  g->irreps[1].matrices[2](0, 0) += Complex(0.05, 0.0);
  CHECK(grand_orthogonality_residual(*g) > 1e-2);
}

TEST_CASE("charge sectors: single irrep gives the identity projector") {
  const GroupPtr g = make_group("S3");
  const IrrepDecomposition dec = decompose(irrep_representation(g, 2));
  const auto sectors = charge_sectors(dec);
  REQUIRE(sectors.size() == 1);
  CHECK(max_abs(sectors[0].projector - Matrix::Identity(2, 2)) < 1e-10);
}

TEST_CASE("charge sectors: Z3 regular rep has three rank-1 projectors") {
  const GroupPtr g = make_group("Z3");
  const auto sectors = charge_sectors(decompose(regular_representation(g)));
  REQUIRE(sectors.size() == 3);
  Matrix sum = Matrix::Zero(3, 3);
  for (const auto& sec : sectors) {
    CHECK(sec.flavor_dim * sec.color_dim == 1);
    CHECK(max_abs(sec.projector * sec.projector - sec.projector) < 1e-10);
    sum += sec.projector;
  }
  CHECK(max_abs(sum - Matrix::Identity(3, 3)) < 1e-10);
}

TEST_CASE("charge sectors: S3 regular rep ranks (1,1,4), projectors commute with T") {
  const GroupPtr g = make_group("S3");
  const Representation rep = regular_representation(g);
  const auto sectors = charge_sectors(decompose(rep));
  REQUIRE(sectors.size() == 3);
  std::vector<int> ranks;
  for (const auto& sec : sectors) ranks.push_back(sec.flavor_dim * sec.color_dim);
  CHECK(ranks == std::vector<int>{1, 1, 4});

  for (const auto& sec : sectors)
    for (const auto& t : rep.matrices)
      CHECK(max_abs(sec.projector * t - t * sec.projector) < 1e-10);
}

TEST_CASE("decompose-recompose residual across tensor and sum constructions") {
  for (const auto& name : {"Z2", "Z5", "S3", "D4", "Q8"}) {
    const GroupPtr g = make_group(name);
    const Representation last = irrep_representation(g, g->num_irreps() - 1);
    const Representation rep = tensor_rep(direct_sum(irrep_representation(g, 0), last), last);
    const IrrepDecomposition dec = decompose(rep);

    double residual = 0.0;
    for (int a = 0; a < g->order; ++a) {
      Matrix rebuilt = Matrix::Zero(rep.dim(), rep.dim());
      for (const auto& b : dec.blocks) {
        const int d_mu = g->irreps[b.irrep].dim;
        rebuilt.block(b.offset, b.offset, d_mu, d_mu) = g->irreps[b.irrep].matrices[a];
      }
      residual = std::max(
          residual, max_abs(rep.matrices[a] - dec.basis * rebuilt * dec.basis.adjoint()));
    }
    INFO(name);
    CHECK(residual < 1e-9);
  }
}

TEST_CASE("appendix-B factorization: joint-space commutator equals the per-side product") {
  // The appendix suite evaluates max|[Pi x 1, T_A(g) x T_B(g')]| through the
  // identity [Pi x 1, A x B] = [Pi, A] x B and max|X x B| = max|X| max|B|.
  // Validate that identity against the brute-force joint computation.
  const GroupPtr g = make_group("S3");
  const Representation reg = regular_representation(g);
  const auto sectors = charge_sectors(decompose(reg));
  const Matrix ib = Matrix::Identity(6, 6);

  for (const auto& sec : sectors) {
    const Matrix proj_full = kron(sec.projector, ib);
    double joint = 0.0;
    for (const auto& ta : reg.matrices)
      for (const auto& tb : reg.matrices) {
        const Matrix t = kron(ta, tb);
        joint = std::max(joint, max_abs(proj_full * t - t * proj_full));
      }

    double per_side = 0.0, tb_max = 0.0;
    for (const auto& ta : reg.matrices)
      per_side = std::max(per_side, max_abs(sec.projector * ta - ta * sec.projector));
    for (const auto& tb : reg.matrices) tb_max = std::max(tb_max, max_abs(tb));
    CHECK(joint == doctest::Approx(per_side * tb_max).epsilon(1e-12));
    CHECK(joint < 1e-10);
  }
}

TEST_CASE("intertwiners realize the Frobenius-Schur type of each irrep") {
  // For beta = trivial and a self-conjugate irrep, T = C T* C^dag forces
  // C^T = c C with c = +1 for real irreps and c = -1 for quaternionic ones;
  // c is the Frobenius-Schur indicator (1/|G|) sum_g chi(g^2).  Complex
  // irreps (indicator 0) must pair with a different partner.
  for (const auto& name : catalog_names()) {
    const GroupPtr g = make_group(name);
    const auto pairs = find_conjugate_pairs(*g, 0);
    for (int mu = 0; mu < g->num_irreps(); ++mu) {
      Complex fs = 0.0;
      for (int e = 0; e < g->order; ++e)
        fs += g->irreps[mu].character(g->mult[e][e]);
      fs /= static_cast<double>(g->order);

      INFO(name, " mu=", g->irreps[mu].label, " FS=", fs.real());
      CHECK(std::abs(fs.imag()) < 1e-10);
      const double indicator = fs.real();
      if (std::abs(indicator) < 1e-10) {
        CHECK(pairs[mu].mu_bar != mu);
      } else {
        REQUIRE(pairs[mu].mu_bar == mu);
        const Matrix& c = pairs[mu].intertwiner;
        CHECK(max_abs(c.transpose() - indicator * c) < 1e-9);
      }
    }
  }
}

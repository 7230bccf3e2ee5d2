#include <doctest.h>

#include <cmath>

#include "resources.hpp"
#include "rng.hpp"
#include "states.hpp"
#include "twirl.hpp"

using namespace ssr;

namespace {

// Superoperator-matrix oracle: the twirl as a D² x D² matrix acting on
// vectorized rho (column stacking), kept out of the implementation on
// purpose so the two routes stay independent.
Matrix twirl_superoperator(const Representation& rep, TwirlKind kind) {
  const int d = rep.dim();
  const int n = rep.group->order;
  Matrix s = Matrix::Zero(d * d, d * d);
  auto add_term = [&](const Matrix& t) {
    // vec(T rho T^dag) = conj(T) (x) T vec(rho)
    s += kron(t.conjugate(), t);
  };
  switch (kind) {
    case TwirlKind::Global:
      for (int g = 0; g < n; ++g) add_term(rep.matrices[g]);
      s /= static_cast<double>(n);
      break;
    case TwirlKind::Local:
      for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) add_term(kron(rep.split->a[g], rep.split->b[h]));
      s /= static_cast<double>(n) * n;
      break;
    case TwirlKind::Left:
      for (int g = 0; g < n; ++g)
        add_term(kron(rep.split->a[g], Matrix::Identity(rep.split->dim_b, rep.split->dim_b)));
      s /= static_cast<double>(n);
      break;
    case TwirlKind::Right:
      for (int g = 0; g < n; ++g)
        add_term(kron(Matrix::Identity(rep.split->dim_a, rep.split->dim_a), rep.split->b[g]));
      s /= static_cast<double>(n);
      break;
  }
  return s;
}

Vector vectorize(const Matrix& m) {
  Vector v(m.size());
  int k = 0;
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r) v(k++) = m(r, c);
  return v;
}

Matrix sigma_z() {
  Matrix z(2, 2);
  z << 1, 0, 0, -1;
  return z;
}

}  // namespace

TEST_CASE("twirl: Z2 global twirl of |+><+| under {1, sigma_z} is I/2") {
  const GroupPtr g = make_group("Z2");
  Representation rep;
  rep.group = g;
  rep.matrices = {Matrix::Identity(2, 2), sigma_z()};

  DensityOperator plus{Matrix::Constant(2, 2, Complex(0.5, 0.0)), {2}};
  const DensityOperator twirled = twirl(plus, rep, TwirlKind::Global);

  // Two-term average written out by hand:
  // (|+><+| + sigma_z |+><+| sigma_z)/2 = I/2.
  CHECK(max_abs(twirled.matrix - Matrix::Identity(2, 2) * 0.5) < 1e-14);
}

TEST_CASE("twirl: a symmetric state suffers no loss") {
  const GroupPtr g = make_group("S3");
  const Representation rep = regular_representation(g);
  // The uniform superposition spans the trivial isotypic component.
  PureState uniform;
  uniform.dims = {6};
  uniform.amplitudes = Vector::Constant(6, 1.0 / std::sqrt(6.0));
  const DensityOperator rho = uniform.density();
  CHECK(max_abs(twirl(rho, rep, TwirlKind::Global).matrix - rho.matrix) < 1e-12);
}

TEST_CASE("twirl: local twirl of the refbit dephases the charge sectors") {
  const SymmetricPureState refbit = make_refbit();
  const DensityOperator rho = refbit.psi.density();
  const auto& ctx = std::get<U1Context>(refbit.context);
  const DensityOperator local =
      u1_dephase(rho, {ctx.charge_a, ctx.charge_b}, TwirlKind::Local);

  Matrix expected = Matrix::Zero(4, 4);
  expected(1, 1) = 0.5;  // |01><01|
  expected(2, 2) = 0.5;  // |10><10|
  CHECK(max_abs(local.matrix - expected) < 1e-12);
}

TEST_CASE("twirl agrees with the superoperator-matrix oracle on every kind") {
  const GroupPtr g = make_group("S3");
  const Representation side = irrep_representation(g, 2);
  const Representation rep = tensor_rep(side, side);
  const DensityOperator rho = random_state({2, 2}, Purity::Mixed, 1234);

  for (TwirlKind kind :
       {TwirlKind::Global, TwirlKind::Local, TwirlKind::Left, TwirlKind::Right}) {
    const Matrix oracle = twirl_superoperator(rep, kind);
    const Vector direct = vectorize(twirl(rho, rep, kind).matrix);
    CHECK((oracle * vectorize(rho.matrix) - direct).norm() < 1e-12);
  }
}

TEST_CASE("twirl: idempotence, trace, hermiticity and PSD are preserved") {
  const GroupPtr g = make_group("Z4");
  const Representation reg = regular_representation(g);
  const Representation rep = tensor_rep(reg, irrep_representation(g, 1));
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const DensityOperator rho = random_state({4, 1}, Purity::Mixed, 900 + seed);
    for (TwirlKind kind :
         {TwirlKind::Global, TwirlKind::Local, TwirlKind::Left, TwirlKind::Right}) {
      const DensityOperator once = twirl(rho, rep, kind);
      const DensityOperator twice = twirl(once, rep, kind);
      CHECK(max_abs(once.matrix - twice.matrix) < 1e-10);
      CHECK(validate_density(once).ok());
    }
  }
}

TEST_CASE("twirl: entropy never decreases") {
  const GroupPtr g = make_group("S3");
  const Representation rep = regular_representation(g);
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const DensityOperator rho = random_state({6}, Purity::Mixed, 1000 + seed);
    CHECK(von_neumann_entropy(twirl(rho, rep, TwirlKind::Global)) >=
          von_neumann_entropy(rho) - 1e-9);
  }
}

TEST_CASE("twirl: composition chain local.global = left.global = right.global") {
  const GroupPtr g = make_group("S3");
  const Representation reg = regular_representation(g);
  const Representation rep = tensor_rep(reg, reg);
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const DensityOperator rho = random_state({6, 6}, Purity::Mixed, 1100 + seed);
    const DensityOperator global = twirl(rho, rep, TwirlKind::Global);
    const Matrix local = twirl(global, rep, TwirlKind::Local).matrix;
    CHECK(max_abs(local - twirl(global, rep, TwirlKind::Left).matrix) < 1e-9);
    CHECK(max_abs(local - twirl(global, rep, TwirlKind::Right).matrix) < 1e-9);
  }
}

TEST_CASE("twirl: dimension and split mismatches throw") {
  const GroupPtr g = make_group("Z2");
  const Representation rep = regular_representation(g);
  const DensityOperator rho = random_state({3}, Purity::Mixed, 5);
  CHECK_THROWS_AS(twirl(rho, rep, TwirlKind::Global), ValidationError);
  const DensityOperator ok = random_state({2}, Purity::Mixed, 6);
  CHECK_THROWS_AS(twirl(ok, rep, TwirlKind::Local), ValidationError);
}

TEST_CASE("u1_dephase: |+> with J_z = sigma_z/2 mixes the two spin states") {
  const SpinExample spin = make_spin_plus(1);
  const DensityOperator dephased = u1_dephase(spin.rho, spin.charges, TwirlKind::Global);
  CHECK(max_abs(dephased.matrix - Matrix::Identity(2, 2) * 0.5) < 1e-12);
}

TEST_CASE("u1_dephase: two spins give sector weights (1/4, 1/2, 1/4)") {
  const SpinExample spin = make_spin_plus(2);
  const DensityOperator dephased = u1_dephase(spin.rho, spin.charges, TwirlKind::Global);

  // Brute-force sector projection oracle in the computational basis:
  // sectors {|11>}, {|1,-1>, |-1,1>}, {|-1,-1>} of total J_z.
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = 0.25;
  expected.block(1, 1, 2, 2) = Matrix::Constant(2, 2, Complex(0.25, 0.0));
  expected(3, 3) = 0.25;
  CHECK(max_abs(dephased.matrix - expected) < 1e-12);
}

TEST_CASE("u1_dephase: charge-diagonal states are fixed points") {
  Matrix number = Matrix::Zero(2, 2);
  number(1, 1) = 1.0;
  const std::vector<ChargeOperator> charges = {ChargeOperator{number}, ChargeOperator{number}};
  Matrix diag = Matrix::Zero(4, 4);
  diag.diagonal() << 0.1, 0.2, 0.3, 0.4;
  const DensityOperator rho{diag, {2, 2}};
  for (TwirlKind kind :
       {TwirlKind::Global, TwirlKind::Local, TwirlKind::Left, TwirlKind::Right})
    CHECK(max_abs(u1_dephase(rho, charges, kind).matrix - diag) < 1e-14);
}

TEST_CASE("u1_dephase: non-Hermitian charge operator is rejected") {
  Matrix bad(2, 2);
  bad << 0.0, 1.0, 0.0, 0.0;
  const DensityOperator rho = random_state({2}, Purity::Mixed, 8);
  CHECK_THROWS_AS(u1_dephase(rho, {ChargeOperator{bad}}, TwirlKind::Global), ValidationError);
}

TEST_CASE("u1_dephase equals the Z_N twirl once N exceeds the charge gap") {
  Matrix jz = sigma_z() * 0.5;
  const std::vector<ChargeOperator> charges = {ChargeOperator{jz}, ChargeOperator{jz}};
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const DensityOperator rho = random_state({2, 2}, Purity::Mixed, 1200 + seed);
    for (TwirlKind kind :
         {TwirlKind::Global, TwirlKind::Local, TwirlKind::Left, TwirlKind::Right}) {
      const CheckResult check = check_u1_matches_cyclic(rho, charges, 3, kind);
      INFO(check.name, " margin ", check.margin);
      CHECK(check.pass);
    }
  }
}

TEST_CASE("commutant basis: Schur's lemma cases") {
  const GroupPtr s3 = make_group("S3");
  // Irreducible: the commutant is spanned by the identity alone.
  const auto basis_irr = commutant_basis(irrep_representation(s3, 2));
  REQUIRE(basis_irr.size() == 1);
  CHECK(max_abs(basis_irr[0] - Matrix::Identity(2, 2) / std::sqrt(2.0)) < 1e-10);

  // Trivial group: full matrix space.
  const GroupPtr z1 = make_group("Z1");
  Representation triv;
  triv.group = z1;
  triv.matrices = {Matrix::Identity(3, 3)};
  CHECK(commutant_basis(triv).size() == 9);

  // Regular rep of Z3: dimension sum of squared multiplicities = 3.
  const GroupPtr z3 = make_group("Z3");
  CHECK(commutant_basis(regular_representation(z3)).size() == 3);
}

TEST_CASE("commutant basis: orthonormal and commuting") {
  const GroupPtr g = make_group("S3");
  const Representation rep = regular_representation(g);
  const auto basis = commutant_basis(rep);
  REQUIRE(basis.size() == 6);  // 1 + 1 + 4
  for (size_t i = 0; i < basis.size(); ++i) {
    for (size_t j = 0; j < basis.size(); ++j) {
      const Complex ip = (basis[i].adjoint() * basis[j]).trace();
      CHECK(std::abs(ip - (i == j ? Complex(1, 0) : Complex(0, 0))) < 1e-10);
    }
    for (const auto& t : rep.matrices)
      CHECK(max_abs(basis[i] * t - t * basis[i]) < 1e-10);
  }
}

TEST_CASE("random covariant instrument: completeness and covariance residuals") {
  const GroupPtr g = make_group("Z2");
  Representation rep;
  rep.group = g;
  rep.matrices = {Matrix::Identity(2, 2), sigma_z()};
  const CovariantInstrument inst = random_covariant_instrument(rep, 3, 42);
  REQUIRE(inst.outcomes.size() == 3);

  const CovarianceReport report = validate_covariance(inst, rep);
  CHECK(report.completeness_residual < 1e-9);
  CHECK(report.kraus_commutator_residual < 1e-9);
  CHECK(report.operational_residual < 1e-9);
}

TEST_CASE("random covariant instrument: one outcome is a completeness-saturating channel") {
  const GroupPtr g = make_group("Z3");
  const Representation rep = regular_representation(g);
  const CovariantInstrument inst = random_covariant_instrument(rep, 1, 7);
  Matrix sum = Matrix::Zero(3, 3);
  for (const auto& k : inst.outcomes[0]) sum += k.adjoint() * k;
  CHECK(max_abs(sum - Matrix::Identity(3, 3)) < 1e-9);

  const DensityOperator rho = random_state({3}, Purity::Mixed, 9);
  const auto outcomes = apply_instrument(rho, inst);
  REQUIRE(outcomes.size() == 1);
  CHECK(outcomes[0].probability == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("random covariant instrument: irreducible rep mixes nothing") {
  const GroupPtr g = make_group("S3");
  const Representation rep = irrep_representation(g, 2);
  const CovariantInstrument inst = random_covariant_instrument(rep, 3, 11);
  const DensityOperator rho = random_state({2}, Purity::Mixed, 12);
  for (const auto& outcome : apply_instrument(rho, inst)) {
    // Schur: every Kraus is proportional to the identity, posteriors = rho.
    CHECK(max_abs(outcome.state.matrix - rho.matrix) < 1e-9);
  }
}

TEST_CASE("apply_instrument: identity instrument returns the state") {
  const DensityOperator rho = random_state({4}, Purity::Mixed, 13);
  const CovariantInstrument identity = projective_instrument({Matrix::Identity(4, 4)}, "id");
  const auto outcomes = apply_instrument(rho, identity);
  REQUIRE(outcomes.size() == 1);
  CHECK(outcomes[0].probability == doctest::Approx(1.0));
  CHECK(max_abs(outcomes[0].state.matrix - rho.matrix) < 1e-12);
}

TEST_CASE("apply_instrument: charge measurement on a Z2-graded |+> gives (1/2, 1/2)") {
  const GroupPtr g = make_group("Z2");
  Representation rep;
  rep.group = g;
  rep.matrices = {Matrix::Identity(2, 2), sigma_z()};
  const auto sectors = charge_sectors(decompose(rep));
  std::vector<Matrix> projectors;
  for (const auto& sec : sectors) projectors.push_back(sec.projector);
  const CovariantInstrument inst = projective_instrument(projectors, "charge");

  DensityOperator plus{Matrix::Constant(2, 2, Complex(0.5, 0.0)), {2}};
  const auto outcomes = apply_instrument(plus, inst);
  REQUIRE(outcomes.size() == 2);
  CHECK(outcomes[0].probability == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(outcomes[1].probability == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("apply_instrument: outcomes resum to the non-selective channel") {
  const GroupPtr g = make_group("Z4");
  const Representation rep = regular_representation(g);
  const CovariantInstrument inst = random_covariant_instrument(rep, 3, 21);
  const DensityOperator rho = random_state({4}, Purity::Mixed, 22);

  Matrix channel = Matrix::Zero(4, 4);
  for (const auto& outcome_kraus : inst.outcomes)
    for (const auto& k : outcome_kraus) channel += k * rho.matrix * k.adjoint();

  Matrix resummed = Matrix::Zero(4, 4);
  for (const auto& outcome : apply_instrument(rho, inst))
    resummed += outcome.probability * outcome.state.matrix;
  CHECK(max_abs(channel - resummed) < 1e-10);
}

TEST_CASE("validate_covariance: fault injection is detected") {
  const GroupPtr g = make_group("Z2");
  Representation rep;
  rep.group = g;
  rep.matrices = {Matrix::Identity(2, 2), sigma_z()};

  // sigma_x anticommutes with sigma_z, so conjugation by it is actually
  // covariant; it still violates the commutant condition this validator
  // reports (sufficient, not necessary).
  CovariantInstrument inst = random_covariant_instrument(rep, 2, 31);
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  inst.outcomes[0][0] = x / std::sqrt(2.0);
  CHECK(validate_covariance(inst, rep).kraus_commutator_residual > 1e-2);

  // A projector onto |+> breaks covariance operationally as well.
  CovariantInstrument broken = random_covariant_instrument(rep, 2, 32);
  broken.outcomes[0][0] = Matrix::Constant(2, 2, Complex(0.5, 0.0));
  const CovarianceReport report = validate_covariance(broken, rep);
  CHECK(report.kraus_commutator_residual > 1e-2);
  CHECK(report.operational_residual > 1e-3);
}

TEST_CASE("charge measurement instrument is covariant (appendix recheck)") {
  const GroupPtr g = make_group("S3");
  const Representation rep = regular_representation(g);
  const auto sectors = charge_sectors(decompose(rep));
  std::vector<Matrix> projectors;
  for (const auto& sec : sectors) projectors.push_back(sec.projector);
  const CovarianceReport report =
      validate_covariance(projective_instrument(projectors, "charge"), rep);
  CHECK(report.completeness_residual < 1e-9);
  CHECK(report.kraus_commutator_residual < 1e-9);
  CHECK(report.operational_residual < 1e-9);
}

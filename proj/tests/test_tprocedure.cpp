#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_support.hpp"

#include "lgk/tprocedure.hpp"

using namespace lgk;

namespace {

const Region kPlaquette({0, 0, 0}, {1, 1, 0});
const Region kLink({0, 0, 0}, {1, 0, 0});

Matrix unit(Index d, Index i, Index j) {
  Matrix e = Matrix::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

}  // namespace

TEST_CASE("operator spans") {
  Rng rng(3);
  const Matrix a = rng.matrix(3, 3);
  const Matrix b = rng.matrix(3, 3);
  const OperatorSpan s = OperatorSpan::from_matrices(3, {a, b, a + b, 2.0 * a});
  CHECK(s.rank() == 2);
  CHECK(s.contains((a - 0.5 * b).eval()));
  CHECK(!s.contains(rng.matrix(3, 3)));

  const OperatorSpan sa = OperatorSpan::from_matrices(3, {a});
  const OperatorSpan sb = OperatorSpan::from_matrices(3, {b});
  CHECK(OperatorSpan::intersect(sa, sb).rank() == 0);
  CHECK(OperatorSpan::sum(sa, sb).rank() == 2);
  const OperatorSpan both = OperatorSpan::from_matrices(3, {a, b});
  CHECK(OperatorSpan::intersect(both, sa).equality_residual(sa) < 1e-10);

  // solve for the diagonal part of the full 2x2 span
  const OperatorSpan full = OperatorSpan::from_matrices(
      2, {unit(2, 0, 0), unit(2, 0, 1), unit(2, 1, 0), unit(2, 1, 1)});
  const Matrix pg = unit(2, 0, 0);
  const OperatorSpan diag = full.solve(
      {[&](const Matrix& m) { return (pg * m * (Matrix::Identity(2, 2) - pg)).eval(); },
       [&](const Matrix& m) {
         return ((Matrix::Identity(2, 2) - pg) * m * pg).eval();
       }});
  CHECK(diag.rank() == 2);
  CHECK(diag.contains(unit(2, 0, 0)));
  CHECK(diag.contains(unit(2, 1, 1)));
  CHECK(!diag.contains(unit(2, 0, 1)));
}

TEST_CASE("matrix algebra validation") {
  AlgebraOptions opts;
  const MatrixAlgebra full = full_matrix_algebra(4, opts);
  const auto res = full.verify();
  CHECK(res.independence > 1e-9);
  CHECK(res.adjoint_closure < 1e-12);
  CHECK(res.product_closure < 1e-12);
  CHECK(full.is_full());

  // dependent basis is rejected
  Rng rng(9);
  const Matrix a = rng.matrix(3, 3);
  CHECK_THROWS_AS(MatrixAlgebra(3, {a, (2.0 * a).eval()}, opts), Error);

  // caps give explicit errors
  CHECK_THROWS_AS(full_matrix_algebra(32, opts), Error);

  // generated algebra: a single offdiagonal unit generates the full 2x2
  const MatrixAlgebra gen = algebra_generated_by(2, {unit(2, 0, 1)}, opts);
  CHECK(gen.dim() == 4);
  // a diagonal projector generates only itself
  const MatrixAlgebra gen2 = algebra_generated_by(2, {unit(2, 0, 0)}, opts);
  CHECK(gen2.dim() == 1);
}

TEST_CASE("dirac subspace") {
  SUBCASE("no constraints: everything is fixed") {
    const ConstraintSet none;
    CHECK((dirac_subspace(none, 3) - Matrix::Identity(3, 3)).norm() < 1e-13);
  }
  SUBCASE("diag(1,-1) fixes the first basis vector") {
    ConstraintSet c;
    c.unitaries = {(Matrix(2, 2) << 1, 0, 0, -1).finished()};
    const Matrix p = dirac_subspace(c, 2);
    CHECK((p - unit(2, 0, 0)).norm() < 1e-12);
  }
  SUBCASE("non-unitary constraint is rejected") {
    ConstraintSet c;
    c.unitaries = {2.0 * Matrix::Identity(2, 2)};
    CHECK_THROWS_AS(dirac_subspace(c, 2), Error);
  }
  SUBCASE("cross-module: plaquette gauge constraints match the projector") {
    const KinematicSpace z2(build_lattice(kPlaquette), make_zn(2), 0);
    const ConstraintSet c = gauge_constraints(z2, kPlaquette);
    const Matrix p = dirac_subspace(c, z2.total_dim());
    const Matrix pg = gauss_projector(z2, kPlaquette);
    CHECK((p - pg).norm() < 1e-10);

    const KinematicSpace u1(build_lattice(kPlaquette), make_u1(), 1);
    const ConstraintSet cu = gauge_constraints(u1, kPlaquette);
    const Matrix pu = dirac_subspace(cu, u1.total_dim());
    CHECK((pu - gauss_projector(u1, kPlaquette)).norm() < 1e-9);
  }
}

TEST_CASE("left ideal") {
  AlgebraOptions opts;
  const MatrixAlgebra f = full_matrix_algebra(2, opts);
  SUBCASE("diag(1,-1): matrices killing the fixed vector") {
    ConstraintSet c;
    c.unitaries = {(Matrix(2, 2) << 1, 0, 0, -1).finished()};
    const OperatorSpan n = left_ideal(f, c);
    CHECK(n.rank() == 2);
    CHECK(n.contains(unit(2, 0, 1)));
    CHECK(n.contains(unit(2, 1, 1)));
    CHECK(!n.contains(unit(2, 0, 0)));
    // N annihilates the Dirac subspace from the right
    const Matrix pg = dirac_subspace(c, 2);
    for (Index i = 0; i < n.rank(); ++i) CHECK((n.op(i) * pg).norm() < 1e-12);
    // left-ideal property
    Rng rng(5);
    for (int s = 0; s < 10; ++s) {
      const Matrix a = rng.matrix(2, 2);
      for (Index i = 0; i < n.rank(); ++i) CHECK(n.residual(a * n.op(i)) < 1e-10);
    }
  }
  SUBCASE("empty constraints give the zero ideal") {
    const ConstraintSet none;
    CHECK(left_ideal(f, none).rank() == 0);
  }
  SUBCASE("constraint outside the algebra is rejected") {
    const MatrixAlgebra diag = diagonal_algebra(2, opts);
    ConstraintSet c;
    c.unitaries = {(Matrix(2, 2) << 0, 1, 1, 0).finished()};
    CHECK_THROWS_AS(left_ideal(diag, c), Error);
  }
}

TEST_CASE("constraint data on the 2x2 oracle") {
  AlgebraOptions opts;
  const MatrixAlgebra f = full_matrix_algebra(2, opts);
  SUBCASE("single diagonal constraint") {
    ConstraintSet c;
    c.unitaries = {(Matrix(2, 2) << 1, 0, 0, -1).finished()};
    const ConstraintData data = constraint_data(f, c);
    CHECK(data.dirac_rank == 1);
    CHECK(data.N.rank() == 2);
    CHECK(data.D.rank() == 1);
    CHECK(data.D.contains(unit(2, 1, 1)));
    CHECK(data.O.rank() == 2);
    CHECK(data.O.contains(unit(2, 0, 0)));
    CHECK(data.O.contains(unit(2, 1, 1)));
    CHECK(data.R.rank() == 1);
    CHECK(data.checks.left_ideal < 1e-10);
    CHECK(data.checks.d_two_sided_ideal < 1e-10);
    CHECK(data.checks.d_in_o < 1e-10);
    CHECK(data.checks.o_multiplier_equality < 1e-10);
    CHECK(data.checks.o_block_offdiag < 1e-10);
    CHECK(data.checks.traditional_in_o < 1e-10);
    CHECK(data.checks.r_rank_consistent);
  }
  SUBCASE("no constraints: D = 0, O = F, R = F") {
    const ConstraintSet none;
    const ConstraintData data = constraint_data(f, none);
    CHECK(data.dirac_rank == 2);
    CHECK(data.N.rank() == 0);
    CHECK(data.D.rank() == 0);
    CHECK(data.O.rank() == 4);
    CHECK(data.R.rank() == 4);
  }
  SUBCASE("scalar constraint is second class") {
    ConstraintSet c;
    c.unitaries = {std::exp(cplx(0, 0.7)) * Matrix::Identity(2, 2)};
    CHECK_THROWS_AS(constraint_data(f, c), SecondClassError);
  }
}

TEST_CASE("traditional observables") {
  AlgebraOptions opts;
  const MatrixAlgebra f = full_matrix_algebra(2, opts);
  SUBCASE("empty constraints commute with everything") {
    CHECK(traditional_observables(f, ConstraintSet{}).rank() == 4);
  }
  SUBCASE("diagonal constraint: commutant is the diagonal algebra") {
    ConstraintSet c;
    c.unitaries = {(Matrix(2, 2) << 1, 0, 0, -1).finished()};
    const OperatorSpan t = traditional_observables(f, c);
    CHECK(t.rank() == 2);
    CHECK(t.contains(unit(2, 0, 0)));
    CHECK(t.contains(unit(2, 1, 1)));
    // contained in the observables
    const ConstraintData data = constraint_data(f, c);
    CHECK(t.containment_residual(data.O) < 1e-10);
  }
}

TEST_CASE("structure theorem on the Z2 plaquette") {
  const KinematicSpace space(build_lattice(kPlaquette), make_zn(2), 0);
  const Index d = space.total_dim();
  REQUIRE(d == 16);
  AlgebraOptions opts;
  const MatrixAlgebra f = full_matrix_algebra(d, opts);
  const ConstraintSet c = gauge_constraints(space, kPlaquette);
  const ConstraintData data = constraint_data(f, c);

  const Index r = data.dirac_rank;
  CHECK(r == 2);
  CHECK(data.O.rank() == r * r + (d - r) * (d - r));
  CHECK(data.D.rank() == (d - r) * (d - r));
  CHECK(data.R.rank() == r * r);
  CHECK(data.checks.r_rank_consistent);
  CHECK(data.checks.o_multiplier_equality < 1e-9);

  // the compressions of the traditional observables and of O agree on the
  // Dirac subspace
  const OperatorSpan trad = traditional_observables(f, c);
  std::vector<Matrix> tc, oc;
  for (Index i = 0; i < trad.rank(); ++i)
    tc.push_back(data.dirac_isometry.adjoint() * trad.op(i) * data.dirac_isometry);
  const OperatorSpan trad_r = OperatorSpan::from_matrices(r, tc);
  CHECK(trad_r.equality_residual(data.R) < 1e-9);
}

TEST_CASE("subsystem theorem") {
  AlgebraOptions opts;
  SUBCASE("A = F is trivially consistent") {
    const MatrixAlgebra f = full_matrix_algebra(3, opts);
    ConstraintSet c;
    c.unitaries = {(Matrix(3, 3) << 1, 0, 0, 0, -1, 0, 0, 0, -1).finished()};
    const SubsystemReport rep = subsystem_check(f, f, c);
    CHECK(rep.pass);
  }
  SUBCASE("diagonal inside the full 4x4 with one diagonal constraint") {
    const MatrixAlgebra a = diagonal_algebra(4, opts);
    const MatrixAlgebra f = full_matrix_algebra(4, opts);
    ConstraintSet c;
    Matrix u = Matrix::Identity(4, 4);
    u(2, 2) = -1;
    u(3, 3) = -1;
    c.unitaries = {u};
    const SubsystemReport rep = subsystem_check(a, f, c);
    CHECK(rep.n_residual < 1e-9);
    CHECK(rep.d_residual < 1e-9);
    CHECK(rep.o_residual < 1e-9);
    CHECK(rep.pass);
  }
  SUBCASE("empty constraints in a nested pair") {
    const MatrixAlgebra a = diagonal_algebra(3, opts);
    const MatrixAlgebra f = full_matrix_algebra(3, opts);
    const SubsystemReport rep = subsystem_check(a, f, ConstraintSet{});
    CHECK(rep.pass);
  }
  SUBCASE("constraints must lie in the subalgebra") {
    const MatrixAlgebra a = diagonal_algebra(2, opts);
    const MatrixAlgebra f = full_matrix_algebra(2, opts);
    ConstraintSet c;
    c.unitaries = {(Matrix(2, 2) << 0, 1, 1, 0).finished()};
    CHECK_THROWS_AS(subsystem_check(a, f, c), Error);
  }
}

TEST_CASE("nesting checks") {
  SUBCASE("identical regions pass trivially") {
    const KinematicSpace space(build_lattice(kLink), make_zn(2), 0);
    const NestingReport rep = nesting_check(space, kLink, kLink);
    CHECK(rep.constraints_consistent);
    CHECK(rep.o_isotony_residual < 1e-9);
    CHECK(rep.d_isotony_residual < 1e-9);
    CHECK(rep.pass);
  }
  SUBCASE("Z2 link inside the plaquette") {
    const KinematicSpace space(build_lattice(kPlaquette), make_zn(2), 0);
    const NestingReport rep = nesting_check(space, kLink, kPlaquette);
    CHECK(rep.constraints_consistent);
    CHECK(rep.o_isotony_residual < 1e-9);
    CHECK(rep.d_isotony_residual < 1e-9);
    CHECK(rep.pass);
    CHECK(rep.dirac_rank_j == 2);
    CHECK(rep.block_dims.size() == 2);  // two charge sectors of the rest link
  }
  SUBCASE("rejects non-nested input") {
    const KinematicSpace space(build_lattice(kPlaquette), make_zn(2), 0);
    CHECK_THROWS_AS(
        nesting_check(space, Region({0, 1, 0}, {1, 1, 0}), kLink), NestingError);
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_support.hpp"

#include "lgk/observables.hpp"
#include "lgk/solver.hpp"

using namespace lgk;

namespace {

const Region kPlaquette({0, 0, 0}, {1, 1, 0});
const Region kLink({0, 0, 0}, {1, 0, 0});

KinematicSpace u1_plaquette() {
  return KinematicSpace(build_lattice(kPlaquette), make_u1(), 1);
}
KinematicSpace z2_plaquette() {
  return KinematicSpace(build_lattice(kPlaquette), make_zn(2), 0);
}
KinematicSpace u1_link_matter() {
  return KinematicSpace(build_lattice(kLink), make_u1(), 1,
                        MatterSpec{make_u1(), 1});
}

LoopPath plaquette_loop(const KinematicSpace& space) {
  return loop_from_plaquette(space.graph(), space.graph().plaquettes().at(0));
}

// per-link charge labels of a U(1) product basis state
std::vector<int> u1_charges(const KinematicSpace& space, Index idx) {
  std::vector<int> q;
  Index rest = idx;
  std::vector<Index> parts(space.factor_dims().size());
  for (std::size_t f = space.factor_dims().size(); f-- > 0;) {
    parts[f] = rest % space.factor_dims()[f];
    rest /= space.factor_dims()[f];
  }
  for (std::size_t f = 0; f < parts.size(); ++f)
    q.push_back(static_cast<int>(parts[f]) - space.cutoff());
  return q;
}

}  // namespace

TEST_CASE("loop paths") {
  const KinematicSpace space = u1_plaquette();
  const LoopPath loop = plaquette_loop(space);
  CHECK(loop.steps.size() == 4);
  validate_path(space.graph(), loop);
  validate_path(space.graph(), reversed(loop));
  validate_path(space.graph(), rotated(loop, 2));

  LoopPath broken = loop;
  std::swap(broken.steps[1], broken.steps[3]);
  CHECK_THROWS_AS(validate_path(space.graph(), broken), Error);

  LoopPath open = loop;
  open.steps.pop_back();
  open.closed = false;
  validate_path(space.graph(), open);
  CHECK_THROWS_AS(wilson_loop(space, open), Error);
}

TEST_CASE("wilson loop on the Z2 plaquette") {
  const KinematicSpace space = z2_plaquette();
  const Matrix w = wilson_loop(space, plaquette_loop(space));
  // oracle: the loop flips every link charge simultaneously (regular
  // representation: multiplication by the sign character on each factor)
  const TruncatedLinkSpace& ls = space.link_space();
  const Matrix f = oracle::zn_fourier(2);
  const Matrix flip =
      f.adjoint() * oracle::zn_defining_multiplication_delta(2) * f;
  Matrix expect = kron_all({flip, flip, flip, flip});
  CHECK((w - expect).norm() < 1e-12);
  CHECK((w * w - space.identity()).norm() < 1e-12);
  (void)ls;
}

TEST_CASE("wilson loop on the U1 plaquette raises the loop charge") {
  const KinematicSpace space = u1_plaquette();
  const Matrix w = wilson_loop(space, plaquette_loop(space));
  // traversal signs of the canonical plaquette: links 0,2 forward, 3,1
  // backward (right-handed loop)
  const auto& steps = plaquette_loop(space).steps;
  for (Index col = 0; col < space.total_dim(); ++col) {
    const auto q = u1_charges(space, col);
    auto shifted = q;
    bool in_range = true;
    for (const auto& [li, sign] : steps) {
      shifted[li] += sign;
      in_range &= std::abs(shifted[li]) <= space.cutoff();
    }
    Index nonzero = 0;
    for (Index row = 0; row < space.total_dim(); ++row) {
      if (std::abs(w(row, col)) < 1e-14) continue;
      ++nonzero;
      CHECK(u1_charges(space, row) == shifted);
      CHECK(std::abs(w(row, col) - 1.0) < 1e-13);
    }
    CHECK(nonzero == (in_range ? 1 : 0));
  }
}

TEST_CASE("wilson loop invariances") {
  Rng rng(3);
  for (const KinematicSpace& space : {u1_plaquette(), z2_plaquette()}) {
    const LoopPath loop = loop_from_plaquette(space.graph(),
                                              space.graph().plaquettes().at(0));
    const Matrix w = wilson_loop(space, loop);

    // cyclic rotations give the same operator (trace cyclicity)
    for (std::size_t s = 1; s < 4; ++s)
      CHECK((wilson_loop(space, rotated(loop, s)) - w).norm() < 1e-12);

    // reversal gives the adjoint
    CHECK((wilson_loop(space, reversed(loop)) - w.adjoint()).norm() < 1e-12);

    // gauge invariance
    const auto env = envelope(space.graph(), space.graph().region());
    for (int s = 0; s < 10; ++s) {
      const GaugeTransformation gamma =
          random_gauge_transformation(space.spec(), env, rng);
      CHECK(commutator_norm(full_gauge_unitary(space, gamma), w) < 1e-11);
    }
  }
  // zero-length closed loop traces the identity connection
  const KinematicSpace space = u1_plaquette();
  LoopPath empty;
  empty.closed = true;
  empty.base = Site{{0, 0, 0}};
  CHECK((wilson_loop(space, empty) - space.identity()).norm() < 1e-14);
}

TEST_CASE("fermion lines") {
  const KinematicSpace space = u1_link_matter();
  Rng rng(7);
  const auto env = envelope(space.graph(), space.graph().region());

  SUBCASE("zero-length line is the local density") {
    LoopPath path;
    path.base = Site{{0, 0, 0}};
    const Matrix q = fermion_line(space, path);
    const auto& fock = space.fock();
    const Matrix a = fock.mode_annihilator(fock.mode_index(0, Index(0)));
    CHECK((q - space.embed_matter_op(a.adjoint() * a)).norm() < 1e-13);
    CHECK(is_gauge_invariant(space, q, space.graph().region()).invariant);
  }
  SUBCASE("single-link line is gauge invariant") {
    LoopPath path;
    path.steps = {{0, +1}};
    const Matrix q = fermion_line(space, path);
    for (int s = 0; s < 20; ++s) {
      const GaugeTransformation gamma =
          random_gauge_transformation(space.spec(), env, rng);
      CHECK(commutator_norm(full_gauge_unitary(space, gamma), q) < 1e-11);
    }
    // adjoint is the reversed line
    const Matrix qrev = fermion_line(space, reversed(path));
    CHECK((q.adjoint() - qrev).norm() < 1e-12);
  }
  SUBCASE("matter required") {
    const KinematicSpace pure = u1_plaquette();
    LoopPath path;
    path.steps = {{0, +1}};
    CHECK_THROWS_AS(fermion_line(pure, path), Error);
  }
}

TEST_CASE("hamiltonian terms") {
  Rng rng(23);
  SUBCASE("pure gauge terms") {
    const KinematicSpace space = u1_plaquette();
    const Matrix el = electric_term(space, 1.0);
    const Matrix mag = magnetic_term(space, 1.0, 1.0);
    CHECK(hermiticity_residual(el) < 1e-13);
    CHECK(hermiticity_residual(mag) < 1e-13);
    CHECK(is_gauge_invariant(space, el, kPlaquette).invariant);
    CHECK(is_gauge_invariant(space, mag, kPlaquette).invariant);
    // electric ground energy is zero on the all-ground product state
    const Vector vac = space.vacuum_vector();
    CHECK((el * vac).norm() < 1e-13);
    Eigen::SelfAdjointEigenSolver<Matrix> es(el);
    CHECK(es.eigenvalues()(0) > -1e-12);
    CHECK_THROWS_AS(mass_term(space, 1.0, 1.0), Error);
    CHECK_THROWS_AS(hopping_term(space, 1.0), Error);
  }
  SUBCASE("matter terms") {
    const KinematicSpace space = u1_link_matter();
    const Matrix mass = mass_term(space, 0.5, 1.0);
    const Matrix hop = hopping_term(space, 1.0);
    CHECK(hermiticity_residual(mass) < 1e-13);
    CHECK(hermiticity_residual(hop) < 1e-13);
    CHECK(is_gauge_invariant(space, mass, space.graph().region()).invariant);
    CHECK(is_gauge_invariant(space, hop, space.graph().region()).invariant);
  }
  SUBCASE("full hamiltonian commutes with the projector") {
    for (const KinematicSpace& space : {u1_plaquette(), u1_link_matter()}) {
      Couplings c;
      c.mass = 0.3;
      const Matrix h = hamiltonian(space, c);
      CHECK(hermiticity_residual(h) < 1e-12);
      const Matrix p = gauss_projector(space, space.graph().region());
      CHECK((h * p - p * h).norm() < 1e-10);
      CHECK((p * h * p - h * p).norm() < 1e-10);
      const auto env = envelope(space.graph(), space.graph().region());
      for (int s = 0; s < 10; ++s) {
        const GaugeTransformation gamma =
            random_gauge_transformation(space.spec(), env, rng);
        CHECK(commutator_norm(full_gauge_unitary(space, gamma), h) < 1e-10);
      }
    }
  }
  SUBCASE("naive dirac kernel") {
    const KinematicSpace space(build_lattice(kLink), make_u1(), 1,
                               MatterSpec{make_u1(), 4});
    Couplings c;
    c.kernel = HoppingKernel::NaiveDirac;
    c.mass = 1.0;
    const Matrix h = hamiltonian(space, c);
    CHECK(hermiticity_residual(h) < 1e-12);
    CHECK(is_gauge_invariant(space, h, space.graph().region()).invariant);
    // kernel and matter must match
    CHECK_THROWS_AS(hopping_term(space, 1.0, HoppingKernel::SingleComponent),
                    Error);
  }
}

TEST_CASE("restricted spectrum against the hand-built oracle") {
  // pure gauge U(1) plaquette, cutoff 1, a = g = 1
  const KinematicSpace space = u1_plaquette();
  Couplings c;
  const Matrix h = hamiltonian(space, c);
  const Matrix p = gauss_projector(space, kPlaquette);

  // the three divergence-free states: loop charge s = -1, 0, 1 with the
  // canonical plaquette orientation signs
  const auto loop = plaquette_loop(space);
  Matrix w = Matrix::Zero(space.total_dim(), 3);
  for (int s = -1; s <= 1; ++s) {
    std::vector<int> q(4, 0);
    for (const auto& [li, sign] : loop.steps) q[li] = sign * s;
    Index idx = 0;
    for (std::size_t f = 0; f < 4; ++f)
      idx = idx * 3 + (q[f] + 1);
    w(idx, s + 1) = 1.0;
  }
  // the columns span the projector range
  CHECK((p * w - w).norm() < 1e-12);

  const Matrix h3 = w.adjoint() * h * w;
  // oracle matrix: electric diagonal (a/2) * 4 s^2 = 2 s^2, magnetic
  // off-diagonal 1/(2 g^2 a) between neighbouring loop charges
  Matrix oracle3 = Matrix::Zero(3, 3);
  oracle3(0, 0) = 2.0;
  oracle3(2, 2) = 2.0;
  oracle3(0, 1) = oracle3(1, 0) = 0.5;
  oracle3(1, 2) = oracle3(2, 1) = 0.5;
  CHECK((h3 - oracle3).norm() < 1e-12);

  // restriction spectrum sits inside the full spectrum
  const Spectrum red = eigs_dense(h3);
  const Spectrum full = eigs_dense(h);
  for (Index i = 0; i < red.values.size(); ++i) {
    double best = 1e9;
    for (Index j = 0; j < full.values.size(); ++j)
      best = std::min(best, std::abs(red.values(i) - full.values(j)));
    CHECK(best < 1e-9);
  }
}

TEST_CASE("expectation") {
  const KinematicSpace space = u1_plaquette();
  const Vector vac = space.vacuum_vector();
  const Matrix cas = space.embed_link_op(0, casimir(space.link_space()).matrix);
  CHECK(std::abs(expectation(vac, cas)) < 1e-14);

  Rng rng(5);
  const Vector v = rng.vector(space.total_dim());
  const Matrix a = rng.matrix(space.total_dim(), space.total_dim());
  const Matrix b = rng.matrix(space.total_dim(), space.total_dim());
  CHECK(std::abs(expectation(v, (a + b).eval()) -
                 (expectation(v, a) + expectation(v, b))) < 1e-9);
  const Matrix herm = 0.5 * (a + a.adjoint());
  CHECK(std::abs(expectation(v, herm).imag()) < 1e-10);
  CHECK_THROWS_AS(expectation(Vector::Zero(3), a), DimensionError);
}

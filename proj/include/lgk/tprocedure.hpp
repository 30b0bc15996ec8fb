#ifndef LGK_TPROCEDURE_HPP
#define LGK_TPROCEDURE_HPP

#include "lgk/gauge_action.hpp"
#include "lgk/operator_span.hpp"

namespace lgk {

struct AlgebraOptions {
  double span_tol = kSpanTol;
  Index max_ambient = 20;
  Index max_opspace = 400;
  std::uint64_t seed = 0x7a11;
};

// Concrete operator-span model of a *-closed, product-closed linear space.
class MatrixAlgebra {
 public:
  MatrixAlgebra(Index ambient_dim, std::vector<Matrix> basis,
                AlgebraOptions opts = {});

  Index ambient_dim() const { return ambient_; }
  const std::vector<Matrix>& basis() const { return basis_; }
  Index dim() const { return static_cast<Index>(basis_.size()); }
  const OperatorSpan& span() const { return span_; }
  const AlgebraOptions& options() const { return opts_; }
  bool is_full() const { return dim() == ambient_ * ambient_; }

  struct Residuals {
    double independence;  // smallest/largest Gram singular value ratio
    double adjoint_closure;
    double product_closure;
  };
  // Numerical verification of the algebra invariants (sampled products).
  Residuals verify(int samples = 32) const;

 private:
  Index ambient_;
  std::vector<Matrix> basis_;
  OperatorSpan span_;
  AlgebraOptions opts_;
};

MatrixAlgebra full_matrix_algebra(Index d, AlgebraOptions opts = {});
MatrixAlgebra diagonal_algebra(Index d, AlgebraOptions opts = {});

// Span-closure of products of the generators and their adjoints; iterates to
// a fixed point, throws when the dimension cap is exceeded.
MatrixAlgebra algebra_generated_by(Index d, const std::vector<Matrix>& gens,
                                   AlgebraOptions opts = {});

struct ConstraintSet {
  std::vector<Matrix> unitaries;  // constraints are C = {U - 1}

  void validate(Index ambient_dim) const;  // unitarity within 1e-12
  std::vector<Matrix> constraints() const;
};

// Projection (1 - P) onto the joint fixed space of the constraint unitaries.
Matrix dirac_subspace(const ConstraintSet& c, Index ambient_dim);

// Left ideal N = [F C].  Uses all basis products when small, otherwise a
// seeded random sample of algebra elements, verified against extra products.
OperatorSpan left_ideal(const MatrixAlgebra& f, const ConstraintSet& c);

struct ConstraintData {
  Matrix dirac_projector;   // (1 - P), rank = dirac_rank
  Matrix dirac_isometry;    // ambient x dirac_rank
  Index dirac_rank = 0;
  OperatorSpan N;           // left ideal [F C]
  OperatorSpan D;           // N cap N*
  OperatorSpan O;           // observables: block-diagonal part of F w.r.t. P
  OperatorSpan R;           // compression of O to the Dirac subspace (r x r ops)

  struct Checks {
    double left_ideal = 0.0;        // F N in N
    double d_two_sided_ideal = 0.0; // O D in D and D O in D
    double d_in_o = 0.0;
    double o_multiplier_equality = 0.0;  // O == M_F(D) as spans
    double o_block_offdiag = 0.0;        // P A (1-P) and (1-P) A P over O
    double traditional_in_o = 0.0;       // C' cap F in O
    Index r_expected_rank = 0;           // dim O - dim D (kernel of compression)
    bool r_rank_consistent = false;
  } checks;
};

// Runs the constraint reduction for (F, C): first-class check, N, D = N cap
// N*, O from the Dirac block conditions, R as the compression of O.
// Throws SecondClassError when the joint fixed space is zero.
ConstraintData constraint_data(const MatrixAlgebra& f, const ConstraintSet& c);

// Commutant of the constraint unitaries inside F.
OperatorSpan traditional_observables(const MatrixAlgebra& f, const ConstraintSet& c);

struct SubsystemReport {
  double n_residual = 0.0;
  double d_residual = 0.0;
  double o_residual = 0.0;
  bool pass = false;
};

// Verifies N_F cap A = N, D_F cap A = D, O_F cap A = O for C in A in F.
SubsystemReport subsystem_check(const MatrixAlgebra& a, const MatrixAlgebra& f,
                                const ConstraintSet& c);

struct NestingReport {
  bool constraints_consistent = false;  // generators of i = those of j in env(i)
  double o_isotony_residual = 0.0;      // O_i in O_j
  double d_isotony_residual = 0.0;      // D_i = D_j cap O_i
  std::vector<Index> block_dims;
  Index dirac_rank_i = 0;
  Index dirac_rank_j = 0;
  bool pass = false;
};

// Reduction-isotony check for nested regions of a pure-gauge abelian
// kinematic space; region_j must cover the whole graph.  The inner local
// system F_i = C*(A_i, constraint unitaries) is decomposed into charge
// sectors and solved blockwise with constraint_data.
NestingReport nesting_check(const KinematicSpace& space, const Region& region_i,
                            const Region& region_j, AlgebraOptions opts = {});

// Finite set of constraint unitaries at one site.  For abelian kinds the
// span of {U - 1} coincides exactly with that of the full one-parameter
// family; for SU2 a fixed sample of one-parameter elements is used.
std::vector<Matrix> site_constraint_unitaries(const KinematicSpace& space,
                                              std::size_t site);

// Constraint unitaries attached to every envelope site of the region.
ConstraintSet gauge_constraints(const KinematicSpace& space, const Region& region);

// Integer diagonal of the abelian site Gauss generator (outgoing minus
// incoming charge, minus the matter charge).
std::vector<long> site_charge_diagonal(const KinematicSpace& space,
                                       std::size_t site);

}  // namespace lgk

#endif

#ifndef LGK_GROUP_HPP
#define LGK_GROUP_HPP

#include <vector>

#include "lgk/linalg.hpp"
#include "lgk/types.hpp"

namespace lgk {

enum class GroupKind { ZN, U1, SU2 };

struct GroupSpec {
  GroupKind kind = GroupKind::U1;
  int n = 0;  // modulus, ZN only (n >= 2)

  Index defining_dim() const { return kind == GroupKind::SU2 ? 2 : 1; }
  Index lie_dim() const { return kind == GroupKind::SU2 ? 3 : 1; }

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) {
    return a.kind == b.kind && (a.kind != GroupKind::ZN || a.n == b.n);
  }
};

GroupSpec make_zn(int n);
GroupSpec make_u1();
GroupSpec make_su2();

// Group element; the active parameter depends on the kind.
struct GroupElement {
  GroupKind kind = GroupKind::U1;
  int zn_value = 0;
  int zn_modulus = 0;
  double angle = 0.0;           // U1: element e^{i angle}
  Eigen::Matrix2cd su2_matrix;  // SU2: defining 2x2 special-unitary matrix
};

GroupElement identity_element(const GroupSpec& spec);
GroupElement zn_element(const GroupSpec& spec, int m);
GroupElement u1_element(double angle);
GroupElement su2_element(const Eigen::Matrix2cd& u);
GroupElement su2_from_quaternion(double w, double x, double y, double z);

GroupElement multiply(const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupElement& g);
GroupElement random_element(const GroupSpec& spec, Rng& rng);

// One-parameter subgroup through the r-th Lie basis direction:
// exp_element(spec, r, t) has defining representation expm(i t Y_r).
// Not defined for ZN (no one-parameter subgroups).
GroupElement exp_element(const GroupSpec& spec, std::size_t r, double t);

// Defining representation G < U(C^k); k = 1 (abelian), 2 (SU2).
Matrix defining_rep(const GroupElement& g);

// Irreducible representation label: ZN charge in 0..N-1, U1 charge in Z,
// SU2 twice-spin 2j >= 0.
struct Irrep {
  int label = 0;
  Index dim = 1;
};

// ZN: all N irreps regardless of cutoff.  U1: |q| <= cutoff.
// SU2: 2j <= cutoff.  Always contains the trivial irrep.
std::vector<Irrep> irreps_up_to(const GroupSpec& spec, int cutoff);
Irrep trivial_irrep(const GroupSpec& spec);

// Unitary irrep matrix.  SU2 irreps use the weight basis ordered
// m = j, j-1, ..., -j with Condon-Shortley phases, so the 2j=1 irrep
// matrix coincides with the defining representation.
Matrix irrep_matrix(const GroupSpec& spec, const Irrep& pi, const GroupElement& g);

// Hermitian Lie basis {Y_r} with Tr(Y_r Y_s) = delta_rs.
// SU2: Y_r = sigma_r / sqrt(2).  Abelian kinds: the single generator [1]
// (for ZN it is formal: generator_rep still reports the charge).
std::vector<Matrix> lie_basis(const GroupSpec& spec);

// Hermitian d(pi)(Y_r), fixed by irrep_matrix(pi, exp_element(r,t)) =
// expm(i t generator_rep(pi, r)).
Matrix generator_rep(const GroupSpec& spec, const Irrep& pi, std::size_t r);

// <j1 m1; j2 m2 | J M> in the Condon-Shortley convention.  All spins are
// passed as twice their value.  Returns 0 outside the triangle rule.
double cg_coefficient(int tj1, int tm1, int tj2, int tm2, int tJ, int tM);

// Full table: rows indexed by (m1, m2) pairs (m1 descending major, m2
// descending minor), columns by M descending.  Empty on triangle violation.
Matrix clebsch_gordan(int tj1, int tj2, int tJ);

// Quadrature rule for the normalized Haar measure.  Exact (to roundoff) for
// products of two irrep matrix elements whose labels are bounded by `order`
// (|q| <= order for U1, 2j <= order for SU2; exact for all of ZN).
std::vector<std::pair<GroupElement, double>> haar_quadrature(
    const GroupSpec& spec, int order);

}  // namespace lgk

#endif

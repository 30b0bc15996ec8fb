#ifndef LGK_LINK_SPACE_HPP
#define LGK_LINK_SPACE_HPP

#include <vector>

#include "lgk/group.hpp"

namespace lgk {

// Finite electric-basis model of L^2(G) for one link: Peter-Weyl basis
// vectors (pi, m, n) <-> sqrt(dim pi) pi_mn(g), kept for irreps within the
// cutoff.  The trivial-irrep vector is the link ground state psi_0.
class TruncatedLinkSpace {
 public:
  TruncatedLinkSpace(const GroupSpec& spec, int cutoff);

  const GroupSpec& spec() const { return spec_; }
  int cutoff() const { return cutoff_; }
  Index dim() const { return dim_; }
  Index vacuum_index() const { return vacuum_index_; }

  struct Block {
    Irrep irrep;
    Index offset;  // basis index of (pi, 0, 0); labels laid out m-major
  };
  const std::vector<Block>& blocks() const { return blocks_; }
  Index basis_index(std::size_t block, Index m, Index n) const;

 private:
  GroupSpec spec_;
  int cutoff_;
  std::vector<Block> blocks_;
  Index dim_;
  Index vacuum_index_;
};

enum class LinkOperatorTag {
  LeftTranslation,
  RightTranslation,
  Multiplication,
  ElectricLeft,
  ElectricRight,
  Projection,
  Generic,
};

struct LinkOperator {
  Matrix matrix;
  LinkOperatorTag tag = LinkOperatorTag::Generic;

  // Per-tag structural residual (unitarity, hermiticity, idempotency).
  double tag_residual() const;
};

TruncatedLinkSpace build_link_space(const GroupSpec& spec, int cutoff);

// (U_g phi)(h) = phi(g^-1 h); acts on the left index by conj(pi(g)).
LinkOperator left_translation(const TruncatedLinkSpace& space, const GroupElement& g);

// (V_s phi)(h) = phi(h s); acts on the right index by pi(s).
LinkOperator right_translation(const TruncatedLinkSpace& space, const GroupElement& s);

// W_{(h,s)} phi(g) = phi(h^-1 g s) = left_translation(h) * right_translation(s).
LinkOperator link_gauge_unitary(const TruncatedLinkSpace& space,
                                const GroupElement& h, const GroupElement& s);

// Compression E T_{Phi_ij} E of the quantum-connection component, where
// Phi_ij(g) = (e_i, g e_j) and E is the cutoff projection.  Abelian kinds
// shift the charge by +1 (cyclically for ZN); SU2 couples by Clebsch-Gordan.
LinkOperator multiplication_op(const TruncatedLinkSpace& space, Index i, Index j);

// Electric generators, fixed by the sign contracts
//   left_translation(exp_element(r, t))  = expm(-i t P_r^L)
//   right_translation(exp_element(r, t)) = expm(-i t P_r^R).
LinkOperator electric_generator_left(const TruncatedLinkSpace& space, std::size_t r);
LinkOperator electric_generator_right(const TruncatedLinkSpace& space, std::size_t r);

// E_ij = sum_r (Y_r)_ij P_r^L.
LinkOperator electric_field(const TruncatedLinkSpace& space, Index i, Index j);

// sum_ij E_ij E_ji; positive semidefinite, vanishes on the trivial block.
LinkOperator casimir(const TruncatedLinkSpace& space);

// Orthogonal projection onto irreps within sub_cutoff (ZN: labels with
// min(q, N-q) <= sub_cutoff).  Commutes with every link gauge unitary.
LinkOperator truncation_projection(const TruncatedLinkSpace& space, int sub_cutoff);

// Projection onto irreps strictly below the cutoff boundary, where compressed
// multiplication operators act without truncation loss (all of the space for ZN).
LinkOperator interior_projection(const TruncatedLinkSpace& space);

}  // namespace lgk

#endif

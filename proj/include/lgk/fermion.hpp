#ifndef LGK_FERMION_HPP
#define LGK_FERMION_HPP

#include <vector>

#include "lgk/group.hpp"
#include "lgk/lattice.hpp"

namespace lgk {

// Matter internal space C^n = W (x) C^k: w non-gauge components times the
// k-dimensional color factor carrying the defining action of the gauge group.
struct MatterSpec {
  GroupSpec gauge;
  int w = 1;

  Index color_dim() const { return gauge.defining_dim(); }
  Index internal_dim() const { return w * color_dim(); }
};

// Antisymmetric Fock space over the lattice matter modes, realized by
// Jordan-Wigner over the lexicographic mode order (site order, then internal
// index (w_idx, color_idx) flattened as w_idx * k + color_idx).
class FockSpace {
 public:
  FockSpace(std::size_t num_sites, const MatterSpec& matter);

  std::size_t num_sites() const { return num_sites_; }
  const MatterSpec& matter() const { return matter_; }
  std::size_t num_modes() const { return num_modes_; }
  Index dim() const { return dim_; }

  std::size_t mode_index(std::size_t site, Index internal) const;
  std::size_t mode_index(std::size_t site, int w_idx, Index color) const;

  // Jordan-Wigner mode operator a_m (dense 2^M x 2^M).
  const Matrix& mode_annihilator(std::size_t m) const;

 private:
  std::size_t num_sites_;
  MatterSpec matter_;
  std::size_t num_modes_;
  Index dim_;
  mutable std::vector<Matrix> mode_ops_;  // built lazily, then immutable
  void build_mode_ops() const;
};

// a(f) = sum_m conj(f_m) a_m; conjugate linear in f.
Matrix annihilator(const FockSpace& space, const Vector& f);
Matrix creator(const FockSpace& space, const Vector& f);

// Second quantization of a one-particle unitary u (num_modes x num_modes):
// Gamma(u) a(f) Gamma(u)^* = a(u f), Gamma(u) Omega = Omega.
Matrix second_quantize(const FockSpace& space, const Matrix& u);

// dGamma(h) = sum_{mn} h_mn a*_m a_n.
Matrix dgamma(const FockSpace& space, const Matrix& h);

// One-particle unitary of a gauge transformation: block diagonal per site,
// identity on W, defining rep of gamma(site) on the color factor.
Matrix one_particle_gauge(const FockSpace& space,
                          const std::vector<GroupElement>& gamma);

// U^F_gamma = Gamma(one_particle_gauge(gamma)).
Matrix matter_gauge_unitary(const FockSpace& space,
                            const std::vector<GroupElement>& gamma);

// Hermitian G^F with exp(-i t G^F) = matter_gauge_unitary(exp_element(r,t)
// at site x); equals -dGamma(Y_r acting on the color factor at x).
Matrix matter_gauss_generator(const FockSpace& space, std::size_t site,
                              std::size_t r);

}  // namespace lgk

#endif

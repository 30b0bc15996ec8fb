#ifndef LGK_GAUGE_ACTION_HPP
#define LGK_GAUGE_ACTION_HPP

#include <map>
#include <memory>
#include <optional>

#include "lgk/fermion.hpp"
#include "lgk/lattice.hpp"
#include "lgk/link_space.hpp"

namespace lgk {

// Map site -> group element, identity off its support.
class GaugeTransformation {
 public:
  explicit GaugeTransformation(const GroupSpec& spec) : spec_(spec) {}

  const GroupSpec& spec() const { return spec_; }
  void set(std::size_t site_index, const GroupElement& g);
  GroupElement at(std::size_t site_index) const;
  const std::map<std::size_t, GroupElement>& support() const { return values_; }

  friend GaugeTransformation operator*(const GaugeTransformation& a,
                                       const GaugeTransformation& b);

 private:
  GroupSpec spec_;
  std::map<std::size_t, GroupElement> values_;
};

GaugeTransformation random_gauge_transformation(const GroupSpec& spec,
                                                const std::set<std::size_t>& sites,
                                                Rng& rng);

// H = H_F (x) (x)_l H_l; matter factor first, then links by index.
class KinematicSpace {
 public:
  KinematicSpace(LatticeGraph graph, const GroupSpec& spec, int cutoff,
                 std::optional<MatterSpec> matter = std::nullopt);

  const LatticeGraph& graph() const { return graph_; }
  const GroupSpec& spec() const { return spec_; }
  int cutoff() const { return cutoff_; }
  const TruncatedLinkSpace& link_space() const { return link_space_; }
  bool has_matter() const { return fock_.has_value(); }
  const FockSpace& fock() const;

  Index total_dim() const { return total_dim_; }
  const std::vector<Index>& factor_dims() const { return factor_dims_; }
  std::size_t link_factor(std::size_t link_index) const;
  std::size_t matter_factor() const;  // throws without matter

  Matrix embed_link_op(std::size_t link_index, const Matrix& op) const;
  Matrix embed_matter_op(const Matrix& op) const;
  Matrix embed(const std::vector<std::pair<std::size_t, Matrix>>& per_factor) const;
  Matrix identity() const;

  // Product of the per-link ground states (and the Fock vacuum).
  Vector vacuum_vector() const;

 private:
  LatticeGraph graph_;
  GroupSpec spec_;
  int cutoff_;
  TruncatedLinkSpace link_space_;
  std::optional<FockSpace> fock_;
  std::vector<Index> factor_dims_;
  Index total_dim_;
};

// W_hat_gamma as a tensor-factored unitary (matter factor, then links).
FactoredOperator full_gauge_unitary(const KinematicSpace& space,
                                    const GaugeTransformation& gamma);

struct GaussGenerator {
  std::size_t site;
  std::size_t lie_index;
  Matrix op;  // hermitian, dense on the full space
};

// G_{x,r} = matter part + sum_{l out of x} P^L_r(l) + sum_{l into x} P^R_r(l),
// so that exp(-i t G_{x,r}) = full_gauge_unitary(exp_element(r,t) at x).
GaussGenerator gauss_generator(const KinematicSpace& space, std::size_t site,
                               std::size_t r);

// P_alpha: product over envelope sites of the projection onto the trivial
// isotypic component of the site action.  ZN uses the exact group sum, U1 the
// integer charge selection rule, SU2 the nullspace of the local quadratic
// Casimir (threshold 1e-9 relative).
Matrix gauss_projector(const KinematicSpace& space, const Region& region);

// Same projector via Haar quadrature of the site averages (cross-validation).
Matrix gauss_projector_average(const KinematicSpace& space, const Region& region,
                               int order = 0);

// Projection onto the trivial isotypic component of the single-site action.
Matrix gauss_site_projection(const KinematicSpace& space, std::size_t site);

Index invariant_dim(const KinematicSpace& space, const Region& region);

struct GaugeInvarianceReport {
  bool invariant = false;
  double max_residual = 0.0;
};

// ||[W_gamma, op]|| over a deterministic sample of gauge transformations
// supported in the envelope, plus all Lie-direction Gauss generators.
GaugeInvarianceReport is_gauge_invariant(const KinematicSpace& space,
                                         const Matrix& op, const Region& region,
                                         double tol = kDefaultTol,
                                         int samples = 20,
                                         std::uint64_t seed = 0x5eed);

}  // namespace lgk

#endif

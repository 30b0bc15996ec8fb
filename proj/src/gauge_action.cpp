#include "lgk/gauge_action.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>

namespace lgk {

void GaugeTransformation::set(std::size_t site_index, const GroupElement& g) {
  values_[site_index] = g;
}

GroupElement GaugeTransformation::at(std::size_t site_index) const {
  auto it = values_.find(site_index);
  return it == values_.end() ? identity_element(spec_) : it->second;
}

GaugeTransformation operator*(const GaugeTransformation& a,
                              const GaugeTransformation& b) {
  GaugeTransformation out(a.spec_);
  std::set<std::size_t> sites;
  for (const auto& [x, g] : a.values_) sites.insert(x);
  for (const auto& [x, g] : b.values_) sites.insert(x);
  for (std::size_t x : sites) out.set(x, multiply(a.at(x), b.at(x)));
  return out;
}

GaugeTransformation random_gauge_transformation(const GroupSpec& spec,
                                                const std::set<std::size_t>& sites,
                                                Rng& rng) {
  GaugeTransformation gamma(spec);
  for (std::size_t x : sites) gamma.set(x, random_element(spec, rng));
  return gamma;
}

KinematicSpace::KinematicSpace(LatticeGraph graph, const GroupSpec& spec,
                               int cutoff, std::optional<MatterSpec> matter)
    : graph_(std::move(graph)),
      spec_(spec),
      cutoff_(cutoff),
      link_space_(spec, cutoff) {
  if (matter) {
    if (!(matter->gauge == spec))
      throw Error("KinematicSpace: matter color group must match gauge group");
    fock_.emplace(graph_.sites().size(), *matter);
    factor_dims_.push_back(fock_->dim());
  }
  for (std::size_t l = 0; l < graph_.links().size(); ++l)
    factor_dims_.push_back(link_space_.dim());
  total_dim_ = 1;
  for (Index d : factor_dims_) {
    total_dim_ *= d;
    if (total_dim_ > 1 << 16)
      throw Error("KinematicSpace: total dimension too large for dense engine");
  }
}

const FockSpace& KinematicSpace::fock() const {
  if (!fock_) throw Error("KinematicSpace: no matter sector");
  return *fock_;
}

std::size_t KinematicSpace::link_factor(std::size_t link_index) const {
  if (link_index >= graph_.links().size())
    throw DimensionError("link_factor: link index out of range");
  return (fock_ ? 1 : 0) + link_index;
}

std::size_t KinematicSpace::matter_factor() const {
  if (!fock_) throw Error("matter_factor: no matter sector");
  return 0;
}

Matrix KinematicSpace::embed_link_op(std::size_t link_index, const Matrix& op) const {
  return embed_on_factor(factor_dims_, link_factor(link_index), op);
}

Matrix KinematicSpace::embed_matter_op(const Matrix& op) const {
  return embed_on_factor(factor_dims_, matter_factor(), op);
}

Matrix KinematicSpace::embed(
    const std::vector<std::pair<std::size_t, Matrix>>& per_factor) const {
  return embed_on_factors(factor_dims_, per_factor);
}

Matrix KinematicSpace::identity() const {
  return Matrix::Identity(total_dim_, total_dim_);
}

Vector KinematicSpace::vacuum_vector() const {
  // Fock vacuum is basis state 0; each link ground state is its vacuum index.
  Index idx = 0;
  for (std::size_t f = 0; f < factor_dims_.size(); ++f) {
    const bool is_matter = fock_ && f == 0;
    idx = idx * factor_dims_[f] + (is_matter ? 0 : link_space_.vacuum_index());
  }
  Vector v = Vector::Zero(total_dim_);
  v(idx) = 1.0;
  return v;
}

FactoredOperator full_gauge_unitary(const KinematicSpace& space,
                                    const GaugeTransformation& gamma) {
  std::vector<Matrix> factors;
  factors.reserve(space.factor_dims().size());
  if (space.has_matter()) {
    std::vector<GroupElement> per_site;
    per_site.reserve(space.graph().sites().size());
    for (std::size_t x = 0; x < space.graph().sites().size(); ++x)
      per_site.push_back(gamma.at(x));
    factors.push_back(matter_gauge_unitary(space.fock(), per_site));
  }
  for (const Link& l : space.graph().links()) {
    const GroupElement h = gamma.at(space.graph().site_index(l.source));
    const GroupElement s = gamma.at(space.graph().site_index(l.target));
    factors.push_back(link_gauge_unitary(space.link_space(), h, s).matrix);
  }
  return FactoredOperator(space.factor_dims(), std::move(factors));
}

GaussGenerator gauss_generator(const KinematicSpace& space, std::size_t site,
                               std::size_t r) {
  const Site& x = space.graph().sites().at(site);
  auto [outgoing, incoming] = space.graph().links_at(x);
  Matrix op = Matrix::Zero(space.total_dim(), space.total_dim());
  if (space.has_matter())
    op += space.embed_matter_op(matter_gauss_generator(space.fock(), site, r));
  for (std::size_t l : outgoing)
    op += space.embed_link_op(l, electric_generator_left(space.link_space(), r).matrix);
  for (std::size_t l : incoming)
    op += space.embed_link_op(l, electric_generator_right(space.link_space(), r).matrix);
  return GaussGenerator{site, r, std::move(op)};
}

namespace {

// Integer diagonal of the abelian Gauss generator at a site (U1, and ZN when
// reduced mod N): outgoing charge minus incoming charge minus matter charge.
std::vector<long> abelian_site_charge_diagonal(const KinematicSpace& space,
                                               std::size_t site) {
  const Index n = space.total_dim();
  const auto& dims = space.factor_dims();
  const Site& x = space.graph().sites().at(site);
  auto [outgoing, incoming] = space.graph().links_at(x);

  std::vector<long> diag(static_cast<std::size_t>(n), 0);
  // per-factor charge contributions
  std::vector<std::vector<long>> contrib(dims.size());
  for (std::size_t f = 0; f < dims.size(); ++f)
    contrib[f].assign(static_cast<std::size_t>(dims[f]), 0);

  const auto& ls = space.link_space();
  auto link_charges = [&]() {
    std::vector<long> q(static_cast<std::size_t>(ls.dim()), 0);
    for (const auto& b : ls.blocks())
      for (Index i = 0; i < b.irrep.dim * b.irrep.dim; ++i)
        q[static_cast<std::size_t>(b.offset + i)] = b.irrep.label;
    return q;
  }();

  for (std::size_t l : outgoing) {
    auto& c = contrib[space.link_factor(l)];
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += link_charges[i];
  }
  for (std::size_t l : incoming) {
    auto& c = contrib[space.link_factor(l)];
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= link_charges[i];
  }
  if (space.has_matter()) {
    const FockSpace& fock = space.fock();
    auto& c = contrib[space.matter_factor()];
    const std::size_t modes = fock.num_modes();
    const Index n_int = fock.matter().internal_dim();
    for (std::size_t s = 0; s < static_cast<std::size_t>(fock.dim()); ++s) {
      long charge = 0;
      for (Index i = 0; i < n_int; ++i) {
        const std::size_t m = fock.mode_index(site, i);
        if (s & (std::size_t(1) << (modes - 1 - m))) charge += 1;
      }
      c[s] = -charge;
    }
  }

  for (Index idx = 0; idx < n; ++idx) {
    Index rest = idx;
    long total = 0;
    for (std::size_t f = dims.size(); f-- > 0;) {
      const Index part = rest % dims[f];
      rest /= dims[f];
      total += contrib[f][static_cast<std::size_t>(part)];
    }
    diag[static_cast<std::size_t>(idx)] = total;
  }
  return diag;
}

Matrix site_average_projection(const KinematicSpace& space, std::size_t site,
                               int order) {
  const GroupSpec& spec = space.spec();
  if (order <= 0) {
    const Site& x = space.graph().sites().at(site);
    auto [outgoing, incoming] = space.graph().links_at(x);
    order = static_cast<int>((outgoing.size() + incoming.size())) *
                std::max(space.cutoff(), 1) +
            (space.has_matter() ? static_cast<int>(space.fock().matter().internal_dim())
                                : 0) +
            1;
  }
  Matrix acc = Matrix::Zero(space.total_dim(), space.total_dim());
  for (const auto& [g, w] : haar_quadrature(spec, order)) {
    GaugeTransformation gamma(spec);
    gamma.set(site, g);
    acc += w * full_gauge_unitary(space, gamma).dense();
  }
  return acc;
}

Matrix site_projection(const KinematicSpace& space, std::size_t site) {
  const GroupSpec& spec = space.spec();
  const Index n = space.total_dim();
  switch (spec.kind) {
    case GroupKind::ZN: {
      // exact group sum
      Matrix acc = Matrix::Zero(n, n);
      for (int m = 0; m < spec.n; ++m) {
        GaugeTransformation gamma(spec);
        gamma.set(site, zn_element(spec, m));
        acc += full_gauge_unitary(space, gamma).dense();
      }
      return acc / static_cast<double>(spec.n);
    }
    case GroupKind::U1: {
      Matrix acc = Matrix::Zero(n, n);
      const auto diag = abelian_site_charge_diagonal(space, site);
      for (Index i = 0; i < n; ++i)
        if (diag[static_cast<std::size_t>(i)] == 0) acc(i, i) = 1.0;
      return acc;
    }
    case GroupKind::SU2: {
      // nullspace of the local quadratic Casimir
      Matrix c2 = Matrix::Zero(n, n);
      for (std::size_t r = 0; r < 3; ++r) {
        const Matrix g = gauss_generator(space, site, r).op;
        c2 += g * g;
      }
      Eigen::SelfAdjointEigenSolver<Matrix> es(c2);
      const double scale = std::max(es.eigenvalues().maxCoeff(), 1.0);
      Matrix proj = Matrix::Zero(n, n);
      for (Index i = 0; i < n; ++i) {
        if (es.eigenvalues()(i) < 1e-9 * scale) {
          const Vector v = es.eigenvectors().col(i);
          proj += v * v.adjoint();
        }
      }
      return proj;
    }
  }
  throw Error("site_projection: unknown kind");
}

}  // namespace

Matrix gauss_site_projection(const KinematicSpace& space, std::size_t site) {
  return site_projection(space, site);
}

Matrix gauss_projector(const KinematicSpace& space, const Region& region) {
  if (!is_subregion(region, space.graph().region()))
    throw NestingError("gauss_projector: region not contained in graph region");
  Matrix p = space.identity();
  for (std::size_t site : envelope(space.graph(), region))
    p = site_projection(space, site) * p;
  return p;
}

Matrix gauss_projector_average(const KinematicSpace& space, const Region& region,
                               int order) {
  if (!is_subregion(region, space.graph().region()))
    throw NestingError("gauss_projector_average: region not nested");
  Matrix p = space.identity();
  for (std::size_t site : envelope(space.graph(), region))
    p = site_average_projection(space, site, order) * p;
  return p;
}

Index invariant_dim(const KinematicSpace& space, const Region& region) {
  const Matrix p = gauss_projector(space, region);
  const double tr = p.trace().real();
  const Index rank = static_cast<Index>(std::llround(tr));
  if (std::abs(tr - static_cast<double>(rank)) > 1e-6)
    throw Error("invariant_dim: projector trace far from an integer");
  return rank;
}

GaugeInvarianceReport is_gauge_invariant(const KinematicSpace& space,
                                         const Matrix& op, const Region& region,
                                         double tol, int samples,
                                         std::uint64_t seed) {
  const auto env = envelope(space.graph(), region);
  const double scale = std::max(1.0, op.norm());
  double worst = 0.0;

  // Lie directions (continuous kinds): commutators with the Gauss generators.
  if (space.spec().kind != GroupKind::ZN) {
    for (std::size_t site : env) {
      for (std::size_t r = 0; r < static_cast<std::size_t>(space.spec().lie_dim());
           ++r) {
        const Matrix g = gauss_generator(space, site, r).op;
        const double gs = std::max(1.0, g.norm());
        worst = std::max(worst, (g * op - op * g).norm() / (scale * gs));
      }
    }
  } else {
    // all single-site group elements
    for (std::size_t site : env) {
      for (int m = 1; m < space.spec().n; ++m) {
        GaugeTransformation gamma(space.spec());
        gamma.set(site, zn_element(space.spec(), m));
        const FactoredOperator w = full_gauge_unitary(space, gamma);
        worst = std::max(worst, commutator_norm(w, op) / scale);
      }
    }
  }

  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const GaugeTransformation gamma =
        random_gauge_transformation(space.spec(), env, rng);
    const FactoredOperator w = full_gauge_unitary(space, gamma);
    worst = std::max(worst, commutator_norm(w, op) / scale);
  }
  return GaugeInvarianceReport{worst < tol, worst};
}

}  // namespace lgk

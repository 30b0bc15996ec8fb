#include "lgk/link_space.hpp"

#include <cmath>
#include <functional>

namespace lgk {

TruncatedLinkSpace::TruncatedLinkSpace(const GroupSpec& spec, int cutoff)
    : spec_(spec), cutoff_(cutoff) {
  Index offset = 0;
  vacuum_index_ = -1;
  for (const Irrep& pi : irreps_up_to(spec, cutoff)) {
    blocks_.push_back(Block{pi, offset});
    if (pi.label == 0) vacuum_index_ = offset;
    offset += pi.dim * pi.dim;
  }
  dim_ = offset;
  if (vacuum_index_ < 0) throw Error("TruncatedLinkSpace: missing trivial irrep");
}

Index TruncatedLinkSpace::basis_index(std::size_t block, Index m, Index n) const {
  const Block& b = blocks_.at(block);
  if (m < 0 || m >= b.irrep.dim || n < 0 || n >= b.irrep.dim)
    throw DimensionError("basis_index: label out of range");
  return b.offset + m * b.irrep.dim + n;
}

double LinkOperator::tag_residual() const {
  const Index d = matrix.rows();
  switch (tag) {
    case LinkOperatorTag::LeftTranslation:
    case LinkOperatorTag::RightTranslation:
      return (matrix * matrix.adjoint() - Matrix::Identity(d, d)).norm();
    case LinkOperatorTag::ElectricLeft:
    case LinkOperatorTag::ElectricRight:
      return (matrix - matrix.adjoint()).norm();
    case LinkOperatorTag::Projection:
      return std::max((matrix - matrix.adjoint()).norm(),
                      (matrix * matrix - matrix).norm());
    default:
      return 0.0;
  }
}

TruncatedLinkSpace build_link_space(const GroupSpec& spec, int cutoff) {
  return TruncatedLinkSpace(spec, cutoff);
}

namespace {

// Assembles a block-diagonal operator from per-block left/right index actions:
// block pi gets kron(left_part(pi), right_part(pi)).
template <typename LeftFn, typename RightFn>
Matrix block_kron(const TruncatedLinkSpace& space, LeftFn left, RightFn right) {
  Matrix out = Matrix::Zero(space.dim(), space.dim());
  for (const auto& b : space.blocks()) {
    const Index d2 = b.irrep.dim * b.irrep.dim;
    out.block(b.offset, b.offset, d2, d2) = kron(left(b.irrep), right(b.irrep));
  }
  return out;
}

Matrix block_diagonal_indicator(const TruncatedLinkSpace& space,
                                const std::function<bool(const Irrep&)>& keep) {
  Matrix out = Matrix::Zero(space.dim(), space.dim());
  for (const auto& b : space.blocks()) {
    if (!keep(b.irrep)) continue;
    const Index d2 = b.irrep.dim * b.irrep.dim;
    out.block(b.offset, b.offset, d2, d2) = Matrix::Identity(d2, d2);
  }
  return out;
}

}  // namespace

LinkOperator left_translation(const TruncatedLinkSpace& space, const GroupElement& g) {
  Matrix m = block_kron(
      space,
      [&](const Irrep& pi) { return irrep_matrix(space.spec(), pi, g).conjugate().eval(); },
      [&](const Irrep& pi) { return Matrix::Identity(pi.dim, pi.dim); });
  return LinkOperator{std::move(m), LinkOperatorTag::LeftTranslation};
}

LinkOperator right_translation(const TruncatedLinkSpace& space, const GroupElement& s) {
  Matrix m = block_kron(
      space, [&](const Irrep& pi) { return Matrix::Identity(pi.dim, pi.dim); },
      [&](const Irrep& pi) { return irrep_matrix(space.spec(), pi, s); });
  return LinkOperator{std::move(m), LinkOperatorTag::RightTranslation};
}

LinkOperator link_gauge_unitary(const TruncatedLinkSpace& space,
                                const GroupElement& h, const GroupElement& s) {
  Matrix m = block_kron(
      space,
      [&](const Irrep& pi) { return irrep_matrix(space.spec(), pi, h).conjugate().eval(); },
      [&](const Irrep& pi) { return irrep_matrix(space.spec(), pi, s); });
  return LinkOperator{std::move(m), LinkOperatorTag::Generic};
}

LinkOperator multiplication_op(const TruncatedLinkSpace& space, Index i, Index j) {
  const GroupSpec& spec = space.spec();
  const Index k = spec.defining_dim();
  if (i < 0 || i >= k || j < 0 || j >= k)
    throw DimensionError("multiplication_op: defining index out of range");
  Matrix out = Matrix::Zero(space.dim(), space.dim());

  if (spec.kind == GroupKind::ZN) {
    // exact cyclic charge shift q -> q+1
    for (std::size_t b = 0; b < space.blocks().size(); ++b) {
      const int q = space.blocks()[b].irrep.label;
      const std::size_t b_to = static_cast<std::size_t>((q + 1) % spec.n);
      out(space.basis_index(b_to, 0, 0), space.basis_index(b, 0, 0)) = 1.0;
    }
    return LinkOperator{std::move(out), LinkOperatorTag::Multiplication};
  }

  if (spec.kind == GroupKind::U1) {
    for (std::size_t b = 0; b < space.blocks().size(); ++b) {
      const int q = space.blocks()[b].irrep.label;
      if (q + 1 > space.cutoff()) continue;  // compressed at the boundary
      out(space.basis_index(b + 1, 0, 0), space.basis_index(b, 0, 0)) = 1.0;
    }
    return LinkOperator{std::move(out), LinkOperatorTag::Multiplication};
  }

  // SU2: <(rho,p,q)| T_ij |(pi,m,n)> =
  //   sqrt(dim pi / dim rho) <1/2 w_i; pi w_m | rho w_p><1/2 w_j; pi w_n | rho w_q>
  // with w the twice-weights in the descending basis order.
  const int twi = 1 - 2 * static_cast<int>(i);
  const int twj = 1 - 2 * static_cast<int>(j);
  for (std::size_t bf = 0; bf < space.blocks().size(); ++bf) {
    const Irrep& pi = space.blocks()[bf].irrep;
    for (std::size_t bt = 0; bt < space.blocks().size(); ++bt) {
      const Irrep& rho = space.blocks()[bt].irrep;
      if (std::abs(pi.label - rho.label) != 1) continue;
      const double norm = std::sqrt(static_cast<double>(pi.dim) / rho.dim);
      for (Index m = 0; m < pi.dim; ++m) {
        const int twm = pi.label - 2 * static_cast<int>(m);
        for (Index n = 0; n < pi.dim; ++n) {
          const int twn = pi.label - 2 * static_cast<int>(n);
          for (Index p = 0; p < rho.dim; ++p) {
            const int twp = rho.label - 2 * static_cast<int>(p);
            for (Index q = 0; q < rho.dim; ++q) {
              const int twq = rho.label - 2 * static_cast<int>(q);
              const double c1 = cg_coefficient(1, twi, pi.label, twm, rho.label, twp);
              const double c2 = cg_coefficient(1, twj, pi.label, twn, rho.label, twq);
              if (c1 == 0.0 || c2 == 0.0) continue;
              out(space.basis_index(bt, p, q), space.basis_index(bf, m, n)) =
                  norm * c1 * c2;
            }
          }
        }
      }
    }
  }
  return LinkOperator{std::move(out), LinkOperatorTag::Multiplication};
}

LinkOperator electric_generator_left(const TruncatedLinkSpace& space, std::size_t r) {
  Matrix m = block_kron(
      space,
      [&](const Irrep& pi) {
        return generator_rep(space.spec(), pi, r).transpose().eval();
      },
      [&](const Irrep& pi) { return Matrix::Identity(pi.dim, pi.dim); });
  return LinkOperator{std::move(m), LinkOperatorTag::ElectricLeft};
}

LinkOperator electric_generator_right(const TruncatedLinkSpace& space, std::size_t r) {
  Matrix m = block_kron(
      space, [&](const Irrep& pi) { return Matrix::Identity(pi.dim, pi.dim); },
      [&](const Irrep& pi) {
        return (-generator_rep(space.spec(), pi, r)).eval();
      });
  return LinkOperator{std::move(m), LinkOperatorTag::ElectricRight};
}

LinkOperator electric_field(const TruncatedLinkSpace& space, Index i, Index j) {
  const auto ys = lie_basis(space.spec());
  const Index k = space.spec().defining_dim();
  if (i < 0 || i >= k || j < 0 || j >= k)
    throw DimensionError("electric_field: defining index out of range");
  Matrix out = Matrix::Zero(space.dim(), space.dim());
  for (std::size_t r = 0; r < ys.size(); ++r)
    out += ys[r](i, j) * electric_generator_left(space, r).matrix;
  return LinkOperator{std::move(out), LinkOperatorTag::Generic};
}

LinkOperator casimir(const TruncatedLinkSpace& space) {
  const Index k = space.spec().defining_dim();
  Matrix out = Matrix::Zero(space.dim(), space.dim());
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < k; ++j)
      out += electric_field(space, i, j).matrix * electric_field(space, j, i).matrix;
  return LinkOperator{std::move(out), LinkOperatorTag::Generic};
}

LinkOperator truncation_projection(const TruncatedLinkSpace& space, int sub_cutoff) {
  if (sub_cutoff < 0 || sub_cutoff > space.cutoff())
    throw Error("truncation_projection: sub_cutoff outside [0, cutoff]");
  const GroupSpec& spec = space.spec();
  Matrix m = block_diagonal_indicator(space, [&](const Irrep& pi) {
    switch (spec.kind) {
      case GroupKind::ZN:
        return std::min(pi.label, spec.n - pi.label) <= sub_cutoff;
      case GroupKind::U1:
        return std::abs(pi.label) <= sub_cutoff;
      case GroupKind::SU2:
        return pi.label <= sub_cutoff;
    }
    return false;
  });
  return LinkOperator{std::move(m), LinkOperatorTag::Projection};
}

LinkOperator interior_projection(const TruncatedLinkSpace& space) {
  const GroupSpec& spec = space.spec();
  const int c = space.cutoff();
  Matrix m = block_diagonal_indicator(space, [&](const Irrep& pi) {
    switch (spec.kind) {
      case GroupKind::ZN:
        return true;  // the cyclic shift never truncates
      case GroupKind::U1:
        return std::abs(pi.label) <= c - 1;
      case GroupKind::SU2:
        return pi.label <= c - 1;
    }
    return false;
  });
  return LinkOperator{std::move(m), LinkOperatorTag::Projection};
}

}  // namespace lgk

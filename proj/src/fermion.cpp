#include "lgk/fermion.hpp"

#include <bit>

namespace lgk {

FockSpace::FockSpace(std::size_t num_sites, const MatterSpec& matter)
    : num_sites_(num_sites), matter_(matter) {
  num_modes_ = num_sites * static_cast<std::size_t>(matter.internal_dim());
  if (num_modes_ > 16) throw Error("FockSpace: more than 16 modes not supported");
  dim_ = Index(1) << num_modes_;
}

std::size_t FockSpace::mode_index(std::size_t site, Index internal) const {
  if (site >= num_sites_ || internal < 0 || internal >= matter_.internal_dim())
    throw DimensionError("FockSpace: mode label out of range");
  return site * static_cast<std::size_t>(matter_.internal_dim()) +
         static_cast<std::size_t>(internal);
}

std::size_t FockSpace::mode_index(std::size_t site, int w_idx, Index color) const {
  return mode_index(site, w_idx * matter_.color_dim() + color);
}

void FockSpace::build_mode_ops() const {
  if (!mode_ops_.empty()) return;
  const Matrix a_local = (Matrix(2, 2) << 0, 1, 0, 0).finished();
  const Matrix z_local = (Matrix(2, 2) << 1, 0, 0, -1).finished();
  std::vector<Index> dims(num_modes_, 2);
  mode_ops_.reserve(num_modes_);
  for (std::size_t m = 0; m < num_modes_; ++m) {
    std::vector<std::pair<std::size_t, Matrix>> ops;
    for (std::size_t p = 0; p < m; ++p) ops.emplace_back(p, z_local);
    ops.emplace_back(m, a_local);
    mode_ops_.push_back(embed_on_factors(dims, ops));
  }
}

const Matrix& FockSpace::mode_annihilator(std::size_t m) const {
  if (m >= num_modes_) throw DimensionError("mode_annihilator: index out of range");
  build_mode_ops();
  return mode_ops_[m];
}

Matrix annihilator(const FockSpace& space, const Vector& f) {
  if (f.size() != static_cast<Index>(space.num_modes()))
    throw DimensionError("annihilator: vector length does not match mode count");
  Matrix out = Matrix::Zero(space.dim(), space.dim());
  for (std::size_t m = 0; m < space.num_modes(); ++m)
    out += std::conj(f(static_cast<Index>(m))) * space.mode_annihilator(m);
  return out;
}

Matrix creator(const FockSpace& space, const Vector& f) {
  return annihilator(space, f).adjoint();
}

namespace {

std::vector<std::size_t> occupied_modes(std::size_t state, std::size_t num_modes) {
  // mode 0 is the most significant bit of the basis index
  std::vector<std::size_t> out;
  for (std::size_t m = 0; m < num_modes; ++m)
    if (state & (std::size_t(1) << (num_modes - 1 - m))) out.push_back(m);
  return out;
}

}  // namespace

Matrix second_quantize(const FockSpace& space, const Matrix& u) {
  const std::size_t modes = space.num_modes();
  if (u.rows() != static_cast<Index>(modes) || u.cols() != static_cast<Index>(modes))
    throw DimensionError("second_quantize: one-particle dimension mismatch");
  const std::size_t dim = static_cast<std::size_t>(space.dim());
  Matrix out = Matrix::Zero(space.dim(), space.dim());

  std::vector<std::vector<std::size_t>> occ(dim);
  for (std::size_t s = 0; s < dim; ++s) occ[s] = occupied_modes(s, modes);

  // Gamma(u)|S> = sum_{S'} det(u[S',S]) |S'> over equal-size subsets, with
  // both subsets in increasing mode order.
  for (std::size_t col = 0; col < dim; ++col) {
    const auto& cs = occ[col];
    for (std::size_t row = 0; row < dim; ++row) {
      const auto& rs = occ[row];
      if (rs.size() != cs.size()) continue;
      if (cs.empty()) {
        out(static_cast<Index>(row), static_cast<Index>(col)) = 1.0;
        continue;
      }
      Matrix minor(cs.size(), cs.size());
      for (std::size_t i = 0; i < rs.size(); ++i)
        for (std::size_t j = 0; j < cs.size(); ++j)
          minor(static_cast<Index>(i), static_cast<Index>(j)) =
              u(static_cast<Index>(rs[i]), static_cast<Index>(cs[j]));
      out(static_cast<Index>(row), static_cast<Index>(col)) = minor.determinant();
    }
  }
  return out;
}

Matrix dgamma(const FockSpace& space, const Matrix& h) {
  const std::size_t modes = space.num_modes();
  if (h.rows() != static_cast<Index>(modes) || h.cols() != static_cast<Index>(modes))
    throw DimensionError("dgamma: one-particle dimension mismatch");
  Matrix out = Matrix::Zero(space.dim(), space.dim());
  for (std::size_t m = 0; m < modes; ++m) {
    const Matrix am_dag = space.mode_annihilator(m).adjoint();
    for (std::size_t n = 0; n < modes; ++n) {
      const cplx c = h(static_cast<Index>(m), static_cast<Index>(n));
      if (c == cplx(0, 0)) continue;
      out += c * (am_dag * space.mode_annihilator(n));
    }
  }
  return out;
}

Matrix one_particle_gauge(const FockSpace& space,
                          const std::vector<GroupElement>& gamma) {
  if (gamma.size() != space.num_sites())
    throw DimensionError("one_particle_gauge: need one element per site");
  const Index n_int = space.matter().internal_dim();
  const Index k = space.matter().color_dim();
  Matrix u = Matrix::Zero(space.num_modes(), space.num_modes());
  for (std::size_t x = 0; x < space.num_sites(); ++x) {
    const Matrix d = defining_rep(gamma[x]);
    for (int w = 0; w < space.matter().w; ++w) {
      const Index base = static_cast<Index>(x) * n_int + w * k;
      u.block(base, base, k, k) = d;
    }
  }
  return u;
}

Matrix matter_gauge_unitary(const FockSpace& space,
                            const std::vector<GroupElement>& gamma) {
  return second_quantize(space, one_particle_gauge(space, gamma));
}

Matrix matter_gauss_generator(const FockSpace& space, std::size_t site,
                              std::size_t r) {
  if (site >= space.num_sites())
    throw DimensionError("matter_gauss_generator: site out of range");
  const Matrix y = lie_basis(space.matter().gauge).at(r);
  const Index k = space.matter().color_dim();
  Matrix h = Matrix::Zero(space.num_modes(), space.num_modes());
  for (int w = 0; w < space.matter().w; ++w) {
    const Index base =
        static_cast<Index>(site) * space.matter().internal_dim() + w * k;
    h.block(base, base, k, k) = y;
  }
  // exp(-i t G^F) = Gamma(expm(i t h)) fixes G^F = -dGamma(h)
  return -dgamma(space, h);
}

}  // namespace lgk

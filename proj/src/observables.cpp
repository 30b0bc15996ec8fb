#include "lgk/observables.hpp"

namespace lgk {

namespace {

Site step_tail(const LatticeGraph& graph, std::size_t li, int sign) {
  const Link& l = graph.links().at(li);
  return sign > 0 ? l.source : l.target;
}

Site step_head(const LatticeGraph& graph, std::size_t li, int sign) {
  const Link& l = graph.links().at(li);
  return sign > 0 ? l.target : l.source;
}

// Dirac representation gamma matrices (4x4), gamma_0 diag(1,1,-1,-1).
Matrix dirac_gamma(int mu) {
  Matrix g = Matrix::Zero(4, 4);
  if (mu == 0) {
    g(0, 0) = g(1, 1) = 1.0;
    g(2, 2) = g(3, 3) = -1.0;
    return g;
  }
  const Matrix sigma[3] = {
      (Matrix(2, 2) << 0, 1, 1, 0).finished(),
      (Matrix(2, 2) << 0, cplx(0, -1), cplx(0, 1), 0).finished(),
      (Matrix(2, 2) << 1, 0, 0, -1).finished()};
  g.block(0, 2, 2, 2) = sigma[mu - 1];
  g.block(2, 0, 2, 2) = -sigma[mu - 1];
  return g;
}

int kernel_w_dim(HoppingKernel kernel) {
  return kernel == HoppingKernel::SingleComponent ? 1 : 4;
}

Matrix kernel_gamma0(HoppingKernel kernel) {
  if (kernel == HoppingKernel::SingleComponent)
    return Matrix::Identity(1, 1);
  return dirac_gamma(0);
}

Matrix kernel_matrix(HoppingKernel kernel, int axis) {
  if (kernel == HoppingKernel::SingleComponent)
    return Matrix::Identity(1, 1);
  return dirac_gamma(axis + 1);
}

void require_matter(const KinematicSpace& space, const char* what) {
  if (!space.has_matter())
    throw Error(std::string(what) + ": matter sector not enabled");
}

void check_kernel(const KinematicSpace& space, HoppingKernel kernel,
                  const char* what) {
  if (space.fock().matter().w != kernel_w_dim(kernel))
    throw Error(std::string(what) + ": hopping kernel does not match matter w");
}

// psi_{(b,c)}(x) as a matter-factor matrix.
Matrix psi_component(const KinematicSpace& space, std::size_t site, int b, Index c) {
  const FockSpace& fock = space.fock();
  return fock.mode_annihilator(fock.mode_index(site, b, c));
}

}  // namespace

LoopPath loop_from_plaquette(const LatticeGraph& graph, const Plaquette& p) {
  LoopPath loop;
  loop.closed = true;
  for (const auto& [li, sign] : p.steps) loop.steps.emplace_back(li, sign);
  validate_path(graph, loop);
  return loop;
}

LoopPath reversed(const LoopPath& loop) {
  LoopPath out;
  out.closed = loop.closed;
  out.base = loop.base;
  for (auto it = loop.steps.rbegin(); it != loop.steps.rend(); ++it)
    out.steps.emplace_back(it->first, -it->second);
  return out;
}

LoopPath rotated(const LoopPath& loop, std::size_t shift) {
  if (!loop.closed) throw Error("rotated: loop must be closed");
  LoopPath out = loop;
  if (loop.steps.empty()) return out;
  shift %= loop.steps.size();
  std::rotate(out.steps.begin(), out.steps.begin() + static_cast<long>(shift),
              out.steps.end());
  return out;
}

void validate_path(const LatticeGraph& graph, const LoopPath& loop) {
  if (loop.steps.empty()) {
    if (!loop.base && !loop.closed)
      throw Error("validate_path: empty path needs a base site");
    return;
  }
  for (std::size_t k = 0; k + 1 < loop.steps.size(); ++k) {
    if (!(step_head(graph, loop.steps[k].first, loop.steps[k].second) ==
          step_tail(graph, loop.steps[k + 1].first, loop.steps[k + 1].second)))
      throw Error("validate_path: steps do not join head to tail");
  }
  const Site first = step_tail(graph, loop.steps.front().first, loop.steps.front().second);
  const Site last = step_head(graph, loop.steps.back().first, loop.steps.back().second);
  if (loop.closed && !(first == last))
    throw Error("validate_path: closed loop does not return to its start");
  if (!loop.closed && first == last && loop.steps.size() > 0 && false)
    throw Error("unreachable");
}

Matrix wilson_loop(const KinematicSpace& space, const LoopPath& loop) {
  if (!loop.closed) throw Error("wilson_loop: path must be closed");
  validate_path(space.graph(), loop);
  const Index k = space.spec().defining_dim();
  const std::size_t m = loop.steps.size();
  if (m == 0)  // trace of the identity connection
    return static_cast<double>(k) * space.identity();

  // component matrices per step: forward T_{ab}, backward (T_{ba})^dagger
  std::vector<std::vector<Matrix>> comp(m);  // comp[s][a*k+b]
  for (std::size_t s = 0; s < m; ++s) {
    comp[s].resize(static_cast<std::size_t>(k * k));
    for (Index a = 0; a < k; ++a)
      for (Index b = 0; b < k; ++b) {
        const auto& [li, sign] = loop.steps[s];
        Matrix t = sign > 0
                       ? multiplication_op(space.link_space(), a, b).matrix
                       : multiplication_op(space.link_space(), b, a).matrix.adjoint();
        comp[s][static_cast<std::size_t>(a * k + b)] = std::move(t);
      }
  }

  Matrix out = Matrix::Zero(space.total_dim(), space.total_dim());
  // sum over index chains i_0 -> i_1 -> ... -> i_0
  std::vector<Index> chain(m + 1, 0);
  std::function<void(std::size_t)> recurse = [&](std::size_t depth) {
    if (depth == m) {
      if (chain[m] != chain[0]) return;
      std::vector<std::pair<std::size_t, Matrix>> ops;
      for (std::size_t s = 0; s < m; ++s)
        ops.emplace_back(space.link_factor(loop.steps[s].first),
                         comp[s][static_cast<std::size_t>(chain[s] * k + chain[s + 1])]);
      out += space.embed(ops);
      return;
    }
    for (Index i = 0; i < k; ++i) {
      chain[depth + 1] = i;
      if (depth + 1 == m && i != chain[0]) continue;
      recurse(depth + 1);
    }
  };
  for (Index i0 = 0; i0 < k; ++i0) {
    chain[0] = i0;
    recurse(0);
  }
  return out;
}

Matrix fermion_line(const KinematicSpace& space, const LoopPath& path,
                    int b_start, int b_end) {
  require_matter(space, "fermion_line");
  validate_path(space.graph(), path);
  if (path.closed && !path.steps.empty())
    throw Error("fermion_line: expected an open path");
  const Index k = space.spec().defining_dim();
  const FockSpace& fock = space.fock();
  if (b_start < 0 || b_start >= fock.matter().w || b_end < 0 ||
      b_end >= fock.matter().w)
    throw Error("fermion_line: non-color component out of range");

  if (path.steps.empty()) {
    // local gauge-invariant density psi*_i(x) psi_i(x)
    const std::size_t x = space.graph().site_index(*path.base);
    Matrix local = Matrix::Zero(fock.dim(), fock.dim());
    for (Index c = 0; c < k; ++c) {
      const Matrix psi = psi_component(space, x, b_start, c);
      local += psi.adjoint() * psi_component(space, x, b_end, c);
    }
    return space.embed_matter_op(local);
  }

  const std::size_t m = path.steps.size();
  const std::size_t x1 =
      space.graph().site_index(step_tail(space.graph(), path.steps[0].first,
                                         path.steps[0].second));
  const std::size_t ym =
      space.graph().site_index(step_head(space.graph(), path.steps[m - 1].first,
                                         path.steps[m - 1].second));

  Matrix out = Matrix::Zero(space.total_dim(), space.total_dim());
  std::vector<Index> chain(m + 1, 0);
  std::function<void(std::size_t)> recurse = [&](std::size_t depth) {
    if (depth == m) {
      const Matrix psi_dag = psi_component(space, x1, b_start, chain[0]).adjoint();
      const Matrix psi = psi_component(space, ym, b_end, chain[m]);
      std::vector<std::pair<std::size_t, Matrix>> ops;
      ops.emplace_back(space.matter_factor(), psi_dag * psi);
      for (std::size_t s = 0; s < m; ++s) {
        const auto& [li, sign] = path.steps[s];
        Matrix t = sign > 0
                       ? multiplication_op(space.link_space(), chain[s], chain[s + 1]).matrix
                       : multiplication_op(space.link_space(), chain[s + 1], chain[s])
                             .matrix.adjoint();
        ops.emplace_back(space.link_factor(li), std::move(t));
      }
      out += space.embed(ops);
      return;
    }
    for (Index i = 0; i < k; ++i) {
      chain[depth + 1] = i;
      recurse(depth + 1);
    }
  };
  for (Index i0 = 0; i0 < k; ++i0) {
    chain[0] = i0;
    recurse(0);
  }
  return out;
}

Matrix electric_term(const KinematicSpace& space, double a) {
  if (a <= 0) throw Error("electric_term: lattice spacing must be positive");
  Matrix out = Matrix::Zero(space.total_dim(), space.total_dim());
  const Matrix cas = casimir(space.link_space()).matrix;
  for (std::size_t l = 0; l < space.graph().links().size(); ++l)
    out += space.embed_link_op(l, cas);
  return 0.5 * a * out;
}

Matrix magnetic_term(const KinematicSpace& space, double g, double a) {
  if (a <= 0 || g <= 0) throw Error("magnetic_term: couplings must be positive");
  Matrix out = Matrix::Zero(space.total_dim(), space.total_dim());
  for (const Plaquette& p : space.graph().plaquettes()) {
    const Matrix w = wilson_loop(space, loop_from_plaquette(space.graph(), p));
    out += w + w.adjoint();
  }
  return out / (2.0 * g * g * a);
}

Matrix mass_term(const KinematicSpace& space, double m, double a,
                 HoppingKernel kernel) {
  require_matter(space, "mass_term");
  check_kernel(space, kernel, "mass_term");
  if (a <= 0) throw Error("mass_term: lattice spacing must be positive");
  const FockSpace& fock = space.fock();
  const Index k = space.spec().defining_dim();
  const Matrix g0 = kernel_gamma0(kernel);
  Matrix local = Matrix::Zero(fock.dim(), fock.dim());
  // bar psi psi = psi*_n (gamma_0)_{n n'} psi_{n'} per site and color
  for (std::size_t x = 0; x < fock.num_sites(); ++x)
    for (int n = 0; n < fock.matter().w; ++n)
      for (int np = 0; np < fock.matter().w; ++np) {
        if (g0(n, np) == cplx(0, 0)) continue;
        for (Index c = 0; c < k; ++c)
          local += g0(n, np) * psi_component(space, x, n, c).adjoint() *
                   psi_component(space, x, np, c);
      }
  return (m * a * a * a) * space.embed_matter_op(local);
}

Matrix hopping_term(const KinematicSpace& space, double a, HoppingKernel kernel) {
  require_matter(space, "hopping_term");
  check_kernel(space, kernel, "hopping_term");
  if (a <= 0) throw Error("hopping_term: lattice spacing must be positive");
  const Index k = space.spec().defining_dim();
  const Matrix g0 = kernel_gamma0(kernel);
  Matrix out = Matrix::Zero(space.total_dim(), space.total_dim());
  for (const Link& l : space.graph().links()) {
    const Matrix coeff = g0 * kernel_matrix(kernel, l.axis);  // gamma_0 gamma.e
    const std::size_t x = space.graph().site_index(l.source);
    const std::size_t y = space.graph().site_index(l.target);
    Matrix term = Matrix::Zero(space.total_dim(), space.total_dim());
    for (int n = 0; n < space.fock().matter().w; ++n)
      for (int np = 0; np < space.fock().matter().w; ++np) {
        if (coeff(n, np) == cplx(0, 0)) continue;
        for (Index c = 0; c < k; ++c)
          for (Index cp = 0; cp < k; ++cp) {
            const Matrix bilinear = psi_component(space, x, n, c).adjoint() *
                                    psi_component(space, y, np, cp);
            term += coeff(n, np) *
                    space.embed({{space.matter_factor(), bilinear},
                                 {space.link_factor(l.index),
                                  multiplication_op(space.link_space(), c, cp).matrix}});
          }
      }
    const Matrix half = cplx(0, 0.5 * a) * term;
    out += half + half.adjoint();
  }
  return out;
}

Matrix hamiltonian(const KinematicSpace& space, const Couplings& c) {
  Matrix h = electric_term(space, c.lattice_spacing) +
             magnetic_term(space, c.gauge_coupling, c.lattice_spacing);
  if (space.has_matter()) {
    h += mass_term(space, c.mass, c.lattice_spacing, c.kernel);
    h += hopping_term(space, c.lattice_spacing, c.kernel);
  }
  return h;
}

cplx expectation(const Vector& state, const Matrix& op) {
  if (state.size() != op.rows())
    throw DimensionError("expectation: state/operator size mismatch");
  return state.dot(op * state);
}

}  // namespace lgk

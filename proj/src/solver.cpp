#include "lgk/solver.hpp"

#include <Eigen/Eigenvalues>

namespace lgk {

Spectrum eigs_dense(const Matrix& h, bool want_vectors) {
  if (!is_hermitian(h, 1e-10)) throw Error("eigs_dense: operator not hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(
      0.5 * (h + h.adjoint()),
      want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  Spectrum out;
  out.values = es.eigenvalues();
  if (want_vectors) {
    out.vectors = es.eigenvectors();
    out.residuals = RealVector::Zero(out.values.size());
    for (Index i = 0; i < out.values.size(); ++i)
      out.residuals(i) =
          (h * out.vectors.col(i) - out.values(i) * out.vectors.col(i)).norm();
  }
  return out;
}

Spectrum eigs_lanczos(const MatVec& apply, Index dim, const SpectrumRequest& req) {
  if (req.k < 1) throw Error("eigs_lanczos: k must be >= 1");
  if (req.k > dim) throw Error("eigs_lanczos: k exceeds the dimension");
  if (req.tol <= 0) throw Error("eigs_lanczos: tol must be positive");
  const Index max_iter = std::min(req.max_iter, dim + req.k);

  Rng rng(req.seed);
  Vector v = rng.vector(dim);

  std::vector<Vector> basis;  // full reorthogonalization keeps every vector
  std::vector<double> alpha, beta;

  auto reorthogonalize = [&](Vector& w) {
    for (int pass = 0; pass < 2; ++pass)
      for (const Vector& b : basis) w -= b * b.dot(w);
  };

  v.normalize();
  basis.push_back(v);

  double best_residual = std::numeric_limits<double>::infinity();
  bool have_snapshot = false;
  Eigen::VectorXd snapshot;

  auto tridiagonal = [&]() {
    const Index m = static_cast<Index>(alpha.size());
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
    for (Index i = 0; i < m; ++i) {
      tri(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i + 1 < m) {
        tri(i, i + 1) = beta[static_cast<std::size_t>(i)];
        tri(i + 1, i) = beta[static_cast<std::size_t>(i)];
      }
    }
    return tri;
  };

  auto finalize = [&](const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>& es) {
    const Index m = static_cast<Index>(alpha.size());
    Spectrum out;
    out.values = es.eigenvalues().head(req.k);
    out.residuals = RealVector::Zero(req.k);
    Matrix ritz(dim, req.k);
    for (Index j = 0; j < req.k; ++j) {
      Vector y = Vector::Zero(dim);
      for (Index i = 0; i < m; ++i)
        y += es.eigenvectors()(i, j) * basis[static_cast<std::size_t>(i)];
      y.normalize();
      ritz.col(j) = y;
      out.residuals(j) = (apply(y) - out.values(j) * y).norm();
    }
    if (req.want_vectors) out.vectors = ritz;
    return out;
  };

  for (Index it = 0; it < max_iter; ++it) {
    Vector w = apply(basis.back());
    const double a = basis.back().dot(w).real();
    alpha.push_back(a);
    reorthogonalize(w);
    const double b = w.norm();
    const Index m = static_cast<Index>(alpha.size());

    if (b >= 1e-14 && m >= req.k) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tridiagonal());
      // residual estimate of the lowest Ritz pairs: |beta * last component|
      double worst = 0.0;
      for (Index j = 0; j < req.k; ++j)
        worst = std::max(worst, std::abs(b * es.eigenvectors()(m - 1, j)));
      best_residual = std::min(best_residual, worst);
      if (worst < req.tol && !have_snapshot) {
        // converged within this Krylov space; restart once to pick up
        // possible multiplicity of the lowest eigenvalues
        snapshot = es.eigenvalues().head(req.k);
        have_snapshot = true;
      } else if (worst < req.tol && have_snapshot) {
        const Eigen::VectorXd cur = es.eigenvalues().head(req.k);
        if ((cur - snapshot).cwiseAbs().maxCoeff() < 10 * req.tol)
          return finalize(es);
        snapshot = cur;
      }
    }

    if (m == dim) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tridiagonal());
      return finalize(es);
    }

    if (b < 1e-14) {
      // invariant subspace exhausted: either finish or restart with a fresh
      // direction to resolve degenerate multiplicities
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tridiagonal());
      if (m >= req.k) {
        const Eigen::VectorXd cur = es.eigenvalues().head(req.k);
        if (have_snapshot &&
            (cur - snapshot).cwiseAbs().maxCoeff() < 10 * req.tol)
          return finalize(es);
        snapshot = cur;
        have_snapshot = true;
      }
      Vector fresh = rng.vector(dim);
      reorthogonalize(fresh);
      if (fresh.norm() < 1e-8) return finalize(es);
      fresh.normalize();
      beta.push_back(0.0);
      basis.push_back(fresh);
    } else {
      beta.push_back(b);
      basis.push_back(w / b);
    }
  }

  throw ConvergenceError("eigs_lanczos: no convergence within max_iter",
                         best_residual);
}

Spectrum eigs(const Matrix& h, const SpectrumRequest& req) {
  if (req.mode == SolverMode::Dense) return eigs_dense(h, req.want_vectors);
  if (!is_hermitian(h, 1e-10)) throw Error("eigs: operator not hermitian");
  const Matrix hs = 0.5 * (h + h.adjoint());
  return eigs_lanczos([&hs](const Vector& x) { return (hs * x).eval(); },
                      hs.rows(), req);
}

}  // namespace lgk

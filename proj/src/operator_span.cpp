#include "lgk/operator_span.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace lgk {

Vector vec(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unvec(const Vector& v, Index rows, Index cols) {
  if (v.size() != rows * cols) throw DimensionError("unvec: size mismatch");
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

namespace {

// Thin orthonormal basis of the column space.  Rank decisions use
// rank-revealing pivoted QR against a global relative threshold (the stable
// surrogate for singular-value thresholding at rel_tol; Eigen's
// divide-and-conquer SVD miscomputes on the degenerate matrices produced
// here).  Large column counts are processed in chunks against the
// accumulated basis.
Matrix orthonormal_columns(const Matrix& cols, double rel_tol,
                           double scale_floor = 0.0) {
  const Index rows = cols.rows();
  if (cols.cols() == 0) return Matrix(rows, 0);

  double global_scale = 0.0;
  for (Index j = 0; j < cols.cols(); ++j)
    global_scale = std::max(global_scale, cols.col(j).norm());
  if (global_scale <= 0.0 && scale_floor <= 0.0) return Matrix(rows, 0);
  const double cut = rel_tol * std::max(global_scale, scale_floor);

  Matrix basis(rows, 0);
  const Index chunk = 256;
  for (Index start = 0; start < cols.cols(); start += chunk) {
    const Index len = std::min(chunk, cols.cols() - start);
    Matrix block = cols.middleCols(start, len);
    if (basis.cols() > 0) {
      block -= basis * (basis.adjoint() * block);
      block -= basis * (basis.adjoint() * block);  // second pass
    }
    Eigen::ColPivHouseholderQR<Matrix> qr(block);
    // pivot magnitudes |R_ii| decrease; keep those above the global cut
    Index r = 0;
    const Index maxr = std::min(rows, len);
    const auto& rmat = qr.matrixR();
    while (r < maxr && std::abs(rmat(r, r)) > cut) ++r;
    if (r == 0) continue;
    Matrix q = qr.householderQ() * Matrix::Identity(rows, r);
    Matrix merged(rows, basis.cols() + r);
    merged << basis, q;
    basis = std::move(merged);
  }
  return basis;
}

// Orthonormal basis of the orthogonal complement of range(q) in C^n,
// for q with orthonormal columns.
Matrix orthogonal_complement(const Matrix& q, Index n) {
  if (q.cols() == 0) return Matrix::Identity(n, n);
  Eigen::HouseholderQR<Matrix> qr(q);
  const Matrix full = qr.householderQ() * Matrix::Identity(n, n);
  return full.rightCols(n - q.cols());
}

}  // namespace

OperatorSpan OperatorSpan::from_matrices(Index d, const std::vector<Matrix>& ops,
                                         double rel_tol) {
  Matrix cols(d * d, static_cast<Index>(ops.size()));
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (ops[i].rows() != d || ops[i].cols() != d)
      throw DimensionError("OperatorSpan: operator dimension mismatch");
    cols.col(static_cast<Index>(i)) = vec(ops[i]);
  }
  return from_columns(d, cols, rel_tol);
}

OperatorSpan OperatorSpan::from_columns(Index d, const Matrix& columns,
                                        double rel_tol) {
  if (columns.rows() != d * d)
    throw DimensionError("OperatorSpan: column length must be d^2");
  OperatorSpan s;
  s.d_ = d;
  s.q_ = orthonormal_columns(columns, rel_tol);
  return s;
}

Matrix OperatorSpan::op(Index i) const { return unvec(q_.col(i), d_, d_); }

double OperatorSpan::residual(const Matrix& m) const {
  const Vector v = vec(m);
  const Vector proj = q_ * (q_.adjoint() * v);
  return (v - proj).norm() / std::max(1.0, v.norm());
}

bool OperatorSpan::contains(const Matrix& m, double tol) const {
  return residual(m) < tol;
}

double OperatorSpan::containment_residual(const OperatorSpan& larger) const {
  double worst = 0.0;
  for (Index i = 0; i < rank(); ++i) {
    const Vector v = q_.col(i);
    const Vector proj = larger.q_ * (larger.q_.adjoint() * v);
    worst = std::max(worst, (v - proj).norm());
  }
  return worst;
}

double OperatorSpan::equality_residual(const OperatorSpan& other) const {
  return std::max(containment_residual(other), other.containment_residual(*this));
}

OperatorSpan OperatorSpan::adjoint_span() const {
  std::vector<Matrix> adj;
  adj.reserve(static_cast<std::size_t>(rank()));
  for (Index i = 0; i < rank(); ++i) adj.push_back(op(i).adjoint());
  return from_matrices(d_, adj);
}

Matrix OperatorSpan::vec_projector() const { return q_ * q_.adjoint(); }

OperatorSpan OperatorSpan::intersect(const OperatorSpan& a, const OperatorSpan& b,
                                     double rel_tol) {
  if (a.d_ != b.d_) throw DimensionError("intersect: ambient mismatch");
  if (a.rank() == 0 || b.rank() == 0) {
    OperatorSpan s;
    s.d_ = a.d_;
    s.q_ = Matrix(a.d_ * a.d_, 0);
    return s;
  }
  // ranges of two orthogonal projectors intersect where their sum has
  // eigenvalue 2; work in the coordinates of span a
  const Matrix cross = a.q_.adjoint() * b.q_;       // ra x rb
  const Matrix h = cross * cross.adjoint();         // compression of P_b to a
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  std::vector<Index> keep;
  for (Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > 1.0 - 1e-7) keep.push_back(i);
  Matrix cols(a.d_ * a.d_, static_cast<Index>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i)
    cols.col(static_cast<Index>(i)) = a.q_ * es.eigenvectors().col(keep[i]);
  return from_columns(a.d_, cols, rel_tol);
}

OperatorSpan OperatorSpan::sum(const OperatorSpan& a, const OperatorSpan& b,
                               double rel_tol) {
  if (a.d_ != b.d_) throw DimensionError("sum: ambient mismatch");
  Matrix cols(a.d_ * a.d_, a.rank() + b.rank());
  cols << a.q_, b.q_;
  return from_columns(a.d_, cols, rel_tol);
}

OperatorSpan OperatorSpan::solve(
    const std::vector<std::function<Matrix(const Matrix&)>>& conditions,
    double rel_tol) const {
  if (rank() == 0) return *this;
  std::vector<Vector> stacked(static_cast<std::size_t>(rank()));
  for (Index j = 0; j < rank(); ++j) {
    const Matrix a = op(j);
    Index total = 0;
    std::vector<Vector> parts;
    for (const auto& cond : conditions) {
      parts.push_back(vec(cond(a)));
      total += parts.back().size();
    }
    Vector col(total);
    Index at = 0;
    for (const auto& p : parts) {
      col.segment(at, p.size()) = p;
      at += p.size();
    }
    stacked[static_cast<std::size_t>(j)] = std::move(col);
  }
  Matrix s(stacked[0].size(), rank());
  for (Index j = 0; j < rank(); ++j) s.col(j) = stacked[static_cast<std::size_t>(j)];
  const Matrix null = nullspace(s, rel_tol);
  OperatorSpan out;
  out.d_ = d_;
  out.q_ = orthonormal_columns(q_ * null, rel_tol);
  return out;
}

Matrix nullspace(const Matrix& m, double rel_tol, double scale_floor) {
  if (m.cols() == 0) return Matrix(0, 0);
  if (m.rows() == 0) return Matrix::Identity(m.cols(), m.cols());
  // ker(m) is the orthogonal complement of the column space of m^dagger; the
  // scale floor keeps roundoff-sized matrices from acquiring spurious rank
  const Matrix row_space = orthonormal_columns(m.adjoint(), rel_tol, scale_floor);
  return orthogonal_complement(row_space, m.cols());
}

}  // namespace lgk

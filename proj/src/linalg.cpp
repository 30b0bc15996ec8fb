#include "lgk/linalg.hpp"

#include <Eigen/Eigenvalues>

namespace lgk {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix kron_all(const std::vector<Matrix>& factors) {
  if (factors.empty()) return Matrix::Identity(1, 1);
  Matrix out = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) out = kron(out, factors[k]);
  return out;
}

Matrix embed_on_factor(const std::vector<Index>& dims, std::size_t k,
                       const Matrix& op) {
  return embed_on_factors(dims, {{k, op}});
}

Matrix embed_on_factors(const std::vector<Index>& dims,
                        const std::vector<std::pair<std::size_t, Matrix>>& ops) {
  std::vector<Matrix> factors(dims.size());
  for (std::size_t k = 0; k < dims.size(); ++k)
    factors[k] = Matrix::Identity(dims[k], dims[k]);
  for (const auto& [k, op] : ops) {
    if (k >= dims.size()) throw DimensionError("embed: factor index out of range");
    if (op.rows() != dims[k] || op.cols() != dims[k])
      throw DimensionError("embed: operator does not match factor dimension");
    factors[k] = factors[k] * op;  // allows repeated factors in `ops`
  }
  return kron_all(factors);
}

double frobenius_norm(const Matrix& a) { return a.norm(); }

double hermiticity_residual(const Matrix& a) {
  double scale = std::max(1.0, a.norm());
  return (a - a.adjoint()).norm() / scale;
}

bool is_hermitian(const Matrix& a, double tol) {
  return (a - a.adjoint()).norm() <= tol * std::max(1.0, a.norm());
}

bool is_unitary(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  Matrix d = a * a.adjoint() - Matrix::Identity(a.rows(), a.rows());
  return d.norm() <= tol * std::sqrt(static_cast<double>(a.rows()));
}

Matrix hermitian_phase_exp(const Matrix& h, double s) {
  if (!is_hermitian(h, 1e-10))
    throw Error("hermitian_phase_exp: input not hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const auto& vals = es.eigenvalues();
  const Matrix& vecs = es.eigenvectors();
  Vector phases(vals.size());
  for (Index i = 0; i < vals.size(); ++i)
    phases(i) = std::exp(cplx(0.0, s * vals(i)));
  return vecs * phases.asDiagonal() * vecs.adjoint();
}

FactoredOperator::FactoredOperator(std::vector<Index> dims,
                                   std::vector<Matrix> factors)
    : dims_(std::move(dims)), factors_(std::move(factors)) {
  if (dims_.size() != factors_.size())
    throw DimensionError("FactoredOperator: dims/factors size mismatch");
  total_ = 1;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (factors_[k].rows() != dims_[k] || factors_[k].cols() != dims_[k])
      throw DimensionError("FactoredOperator: factor dimension mismatch");
    total_ *= dims_[k];
  }
}

Matrix FactoredOperator::dense() const { return kron_all(factors_); }

namespace {

// In-place application of B along tensor axis k of the row index of A.
void apply_axis_left(const std::vector<Index>& dims, std::size_t k,
                     const Matrix& b, Matrix& a) {
  Index left = 1, right = 1;
  for (std::size_t i = 0; i < k; ++i) left *= dims[i];
  for (std::size_t i = k + 1; i < dims.size(); ++i) right *= dims[i];
  const Index d = dims[k];
  if (d == 1) {
    a *= b(0, 0);
    return;
  }
  Matrix slice(d, a.cols());
  for (Index l = 0; l < left; ++l) {
    for (Index r = 0; r < right; ++r) {
      const Index base = l * d * right + r;
      for (Index i = 0; i < d; ++i) slice.row(i) = a.row(base + i * right);
      slice = b * slice;
      for (Index i = 0; i < d; ++i) a.row(base + i * right) = slice.row(i);
    }
  }
}

}  // namespace

Vector FactoredOperator::apply(const Vector& v) const {
  Matrix a = v;
  for (std::size_t k = 0; k < dims_.size(); ++k)
    apply_axis_left(dims_, k, factors_[k], a);
  return a.col(0);
}

Matrix FactoredOperator::apply_left(const Matrix& a) const {
  if (a.rows() != total_) throw DimensionError("FactoredOperator: row mismatch");
  Matrix out = a;
  for (std::size_t k = 0; k < dims_.size(); ++k)
    apply_axis_left(dims_, k, factors_[k], out);
  return out;
}

Matrix FactoredOperator::apply_right(const Matrix& a) const {
  if (a.cols() != total_) throw DimensionError("FactoredOperator: col mismatch");
  // a * (x)f_k = ((x)f_k^T * a^T)^T
  Matrix out = a.transpose();
  for (std::size_t k = 0; k < dims_.size(); ++k)
    apply_axis_left(dims_, k, factors_[k].transpose().eval(), out);
  return out.transpose();
}

FactoredOperator FactoredOperator::adjoint() const {
  std::vector<Matrix> adj(factors_.size());
  for (std::size_t k = 0; k < factors_.size(); ++k)
    adj[k] = factors_[k].adjoint();
  return FactoredOperator(dims_, std::move(adj));
}

double FactoredOperator::unitarity_residual() const {
  double worst = 0.0;
  for (const auto& f : factors_) {
    Matrix d = f * f.adjoint() - Matrix::Identity(f.rows(), f.rows());
    worst = std::max(worst, d.norm());
  }
  return worst;
}

double commutator_norm(const FactoredOperator& u, const Matrix& a) {
  return (u.apply_left(a) - u.apply_right(a)).norm();
}

double Rng::uniform(double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  return dist(gen_);
}

double Rng::gaussian() {
  std::normal_distribution<double> dist(0.0, 1.0);
  return dist(gen_);
}

int Rng::uniform_int(int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  return dist(gen_);
}

cplx Rng::gaussian_cplx() {
  double re = gaussian();
  double im = gaussian();
  return cplx(re, im);
}

Vector Rng::vector(Index n) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = gaussian_cplx();
  return v;
}

Matrix Rng::matrix(Index rows, Index cols) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = gaussian_cplx();
  return m;
}

Matrix Rng::hermitian(Index n) {
  Matrix m = matrix(n, n);
  return 0.5 * (m + m.adjoint());
}

}  // namespace lgk

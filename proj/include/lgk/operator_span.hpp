#ifndef LGK_OPERATOR_SPAN_HPP
#define LGK_OPERATOR_SPAN_HPP

#include <functional>
#include <vector>

#include "lgk/linalg.hpp"

namespace lgk {

Vector vec(const Matrix& m);
Matrix unvec(const Vector& v, Index rows, Index cols);

// Closed linear space of d x d matrices, held as an orthonormal set of
// vectorized operators.  Rank decisions use singular-value thresholding at
// `rel_tol` relative to the largest singular value.
class OperatorSpan {
 public:
  OperatorSpan() = default;

  static OperatorSpan from_matrices(Index d, const std::vector<Matrix>& ops,
                                    double rel_tol = kSpanTol);
  static OperatorSpan from_columns(Index d, const Matrix& columns,
                                   double rel_tol = kSpanTol);

  Index ambient_dim() const { return d_; }
  Index rank() const { return q_.cols(); }
  const Matrix& columns() const { return q_; }
  Matrix op(Index i) const;  // i-th orthonormal basis operator

  // ||M - proj_span(M)|| / max(1, ||M||)
  double residual(const Matrix& m) const;
  bool contains(const Matrix& m, double tol = kSpanTol) const;

  // max residual of either span's basis in the other
  double equality_residual(const OperatorSpan& other) const;
  double containment_residual(const OperatorSpan& larger) const;

  OperatorSpan adjoint_span() const;

  // Projector QQ^dagger on the d^2-dimensional vectorized operator space.
  Matrix vec_projector() const;

  static OperatorSpan intersect(const OperatorSpan& a, const OperatorSpan& b,
                                double rel_tol = kSpanTol);
  static OperatorSpan sum(const OperatorSpan& a, const OperatorSpan& b,
                          double rel_tol = kSpanTol);

  // Subspan {A in span : L_k(A) = 0 for all conditions}, via the nullspace of
  // the stacked condition map restricted to the span.
  OperatorSpan solve(const std::vector<std::function<Matrix(const Matrix&)>>&
                         conditions,
                     double rel_tol = kSpanTol) const;

 private:
  Index d_ = 0;
  Matrix q_;  // d^2 x rank, orthonormal columns
};

// Nullspace basis (orthonormal columns).  Singular values are thresholded
// at rel_tol relative to max(largest singular value, scale_floor); the floor
// suits condition matrices built from unit-norm operators, where values at
// roundoff scale mean an exactly satisfied condition.
Matrix nullspace(const Matrix& m, double rel_tol = kSpanTol,
                 double scale_floor = 1.0);

}  // namespace lgk

#endif

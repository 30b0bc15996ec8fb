#ifndef LGK_LINALG_HPP
#define LGK_LINALG_HPP

#include <functional>
#include <random>
#include <vector>

#include "lgk/types.hpp"

namespace lgk {

Matrix kron(const Matrix& a, const Matrix& b);

// Kronecker product of a list, first factor most significant.
Matrix kron_all(const std::vector<Matrix>& factors);

// Embeds `op` acting on factor `k` of a tensor product with the given
// factor dimensions (identity on all other factors).
Matrix embed_on_factor(const std::vector<Index>& dims, std::size_t k,
                       const Matrix& op);

// Embeds a product of operators acting on distinct factors.
Matrix embed_on_factors(const std::vector<Index>& dims,
                        const std::vector<std::pair<std::size_t, Matrix>>& ops);

double frobenius_norm(const Matrix& a);

// ||a - a^dagger||_F relative to scale.
double hermiticity_residual(const Matrix& a);

bool is_hermitian(const Matrix& a, double tol = 1e-12);
bool is_unitary(const Matrix& a, double tol = 1e-12);

// exp(i s h) for hermitian h, via eigendecomposition.
Matrix hermitian_phase_exp(const Matrix& h, double s);

// A tensor-factored operator op = f_0 (x) f_1 (x) ... on a product space.
// Stores one small matrix per factor so that multiplication against a full
// matrix costs N^2 * sum(d_k) instead of N^3.
class FactoredOperator {
 public:
  FactoredOperator(std::vector<Index> dims, std::vector<Matrix> factors);

  Index total_dim() const { return total_; }
  const std::vector<Matrix>& factors() const { return factors_; }

  Matrix dense() const;
  Vector apply(const Vector& v) const;
  Matrix apply_left(const Matrix& a) const;   // (this) * a
  Matrix apply_right(const Matrix& a) const;  // a * (this)
  FactoredOperator adjoint() const;

  // max_k ||f_k f_k^dagger - 1||, zero for tensor products of unitaries
  double unitarity_residual() const;

 private:
  std::vector<Index> dims_;
  std::vector<Matrix> factors_;
  Index total_;
};

// Frobenius norm of [u, a] without forming dense u.
double commutator_norm(const FactoredOperator& u, const Matrix& a);

// Deterministic pseudo-random data (tests and sampled invariants).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo, double hi);
  double gaussian();
  int uniform_int(int lo, int hi);  // inclusive
  cplx gaussian_cplx();
  Vector vector(Index n);
  Matrix matrix(Index rows, Index cols);
  Matrix hermitian(Index n);
  std::mt19937_64& raw() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace lgk

#endif

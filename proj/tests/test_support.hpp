#ifndef LGK_TEST_SUPPORT_HPP
#define LGK_TEST_SUPPORT_HPP

#include <doctest.h>

#include <numbers>

#include "lgk/group.hpp"
#include "lgk/link_space.hpp"

// Independent oracles used to freeze expected values.  Everything here stays
// on the definition side: regular representations, quadrature of explicit
// functions, brute-force diagonalization.  None of it calls the operator
// constructions it is used to check.
namespace oracle {

using namespace lgk;

// --- cyclic group in the group-delta basis -------------------------------

// Unitary Fourier matrix F_{mq} = omega^{qm} / sqrt(N) mapping the electric
// (character) basis to the group-delta basis.
inline Matrix zn_fourier(int n) {
  Matrix f(n, n);
  const double w = 2 * std::numbers::pi / n;
  for (int m = 0; m < n; ++m)
    for (int q = 0; q < n; ++q)
      f(m, q) = std::exp(cplx(0, w * q * m)) / std::sqrt(static_cast<double>(n));
  return f;
}

// Left translation by m0 on delta functions: delta_m -> delta_{m+m0}.
inline Matrix zn_left_translation_delta(int n, int m0) {
  Matrix p = Matrix::Zero(n, n);
  for (int m = 0; m < n; ++m) p((m + m0) % n, m) = 1.0;
  return p;
}

// Multiplication by the defining character in the delta basis.
inline Matrix zn_defining_multiplication_delta(int n) {
  Matrix d = Matrix::Zero(n, n);
  for (int m = 0; m < n; ++m)
    d(m, m) = std::exp(cplx(0, 2 * std::numbers::pi * m / n));
  return d;
}

// --- Peter-Weyl matrix elements by quadrature ----------------------------

// Normalized basis function of the electric basis label (pi, m, n).
inline cplx basis_function(const GroupSpec& spec, const Irrep& pi, Index m,
                           Index n, const GroupElement& g) {
  return std::sqrt(static_cast<double>(pi.dim)) *
         irrep_matrix(spec, pi, g)(m, n);
}

// <(rho,p,q)| T_f |(pi,m,n)> for a multiplication operator by the function
// f(g), via the Haar quadrature rule.
template <typename Fn>
cplx multiplication_element(const GroupSpec& spec, int order, const Irrep& rho,
                            Index p, Index q, const Irrep& pi, Index m, Index n,
                            Fn f) {
  cplx acc = 0.0;
  for (const auto& [g, w] : haar_quadrature(spec, order))
    acc += w * std::conj(basis_function(spec, rho, p, q, g)) * f(g) *
           basis_function(spec, pi, m, n, g);
  return acc;
}

// <(rho,p,q)| U_g |(pi,m,n)> for the left translation by g0.
inline cplx left_translation_element(const GroupSpec& spec, int order,
                                     const Irrep& rho, Index p, Index q,
                                     const Irrep& pi, Index m, Index n,
                                     const GroupElement& g0) {
  cplx acc = 0.0;
  const GroupElement g0inv = inverse(g0);
  for (const auto& [g, w] : haar_quadrature(spec, order))
    acc += w * std::conj(basis_function(spec, rho, p, q, g)) *
           basis_function(spec, pi, m, n, multiply(g0inv, g));
  return acc;
}

// --- brute-force spin coupling --------------------------------------------

// Spin matrices for twice-spin tj in the descending weight basis.
inline Matrix spin_z(int tj) {
  Matrix s = Matrix::Zero(tj + 1, tj + 1);
  for (int i = 0; i <= tj; ++i) s(i, i) = 0.5 * tj - i;
  return s;
}

inline Matrix spin_plus(int tj) {
  Matrix s = Matrix::Zero(tj + 1, tj + 1);
  const double j = 0.5 * tj;
  for (int i = 1; i <= tj; ++i) {
    const double m = j - i;
    s(i - 1, i) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  return s;
}

// Clebsch-Gordan column <.|J M> from diagonalizing the total spin on the
// product space, with the Condon-Shortley phase fixed by ladder descent from
// the highest state.
inline Matrix cg_columns_bruteforce(int tj1, int tj2, int tJ) {
  const Index d1 = tj1 + 1, d2 = tj2 + 1;
  const Matrix sz = kron(spin_z(tj1), Matrix::Identity(d2, d2)) +
                    kron(Matrix::Identity(d1, d1), spin_z(tj2));
  const Matrix sp = kron(spin_plus(tj1), Matrix::Identity(d2, d2)) +
                    kron(Matrix::Identity(d1, d1), spin_plus(tj2));
  const Matrix sm = sp.adjoint();
  const Matrix s2 =
      0.5 * (sp * sm + sm * sp) + sz * sz;  // total spin squared

  const double J = 0.5 * tJ;
  const double target = J * (J + 1);

  // highest-weight state: S^2 = J(J+1), Sz = J, unique
  const Matrix shift = sz - J * Matrix::Identity(d1 * d2, d1 * d2);
  Eigen::SelfAdjointEigenSolver<Matrix> es(s2 + 1000.0 * shift * shift);
  Vector top;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (std::abs(es.eigenvalues()(i) - target) < 1e-8) {
      top = es.eigenvectors().col(i);
      break;
    }
  }
  if (top.size() == 0) return Matrix(0, 0);
  // Condon-Shortley: <j1 j1; j2 J-j1 | J J> > 0, i.e. the first nonzero
  // component in the (m1 descending, m2 descending) order is positive.
  for (Index i = 0; i < top.size(); ++i) {
    if (std::abs(top(i)) > 1e-8) {
      top *= std::conj(top(i)) / std::abs(top(i));
      break;
    }
  }
  Matrix cols(d1 * d2, tJ + 1);
  Vector cur = top;
  cols.col(0) = cur;
  for (int step = 1; step <= tJ; ++step) {
    cur = sm * cur;
    cur.normalize();
    cols.col(step) = cur;
  }
  return cols;
}

// --- gauge-sector counts by enumeration -----------------------------------

// Number of U(1) link configurations (charges |q| <= cutoff per link) with
// zero divergence at every site given the incidence lists.
inline long count_divergence_free(
    const std::vector<std::pair<std::vector<int>, std::vector<int>>>& incidence,
    std::size_t n_links, int cutoff) {
  const long radix = 2 * cutoff + 1;
  long total = 1;
  for (std::size_t l = 0; l < n_links; ++l) total *= radix;
  long count = 0;
  std::vector<int> q(n_links, 0);
  for (long cfg = 0; cfg < total; ++cfg) {
    long rest = cfg;
    for (std::size_t l = 0; l < n_links; ++l) {
      q[l] = static_cast<int>(rest % radix) - cutoff;
      rest /= radix;
    }
    bool ok = true;
    for (const auto& [out, in] : incidence) {
      int div = 0;
      for (int l : out) div += q[static_cast<std::size_t>(l)];
      for (int l : in) div -= q[static_cast<std::size_t>(l)];
      if (div != 0) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
  }
  return count;
}

}  // namespace oracle

#endif

#include "lgk/group.hpp"

#include <cmath>
#include <numbers>

namespace lgk {

namespace {

constexpr double kPi = std::numbers::pi;

const Eigen::Matrix2cd& pauli(std::size_t r) {
  static const Eigen::Matrix2cd sx = (Eigen::Matrix2cd() << 0, 1, 1, 0).finished();
  static const Eigen::Matrix2cd sy =
      (Eigen::Matrix2cd() << 0, cplx(0, -1), cplx(0, 1), 0).finished();
  static const Eigen::Matrix2cd sz = (Eigen::Matrix2cd() << 1, 0, 0, -1).finished();
  static const Eigen::Matrix2cd* mats[3] = {&sx, &sy, &sz};
  if (r >= 3) throw Error("pauli: index out of range");
  return *mats[r];
}

double factorial(int n) {
  static std::vector<double> table = {1.0};
  if (n < 0) throw Error("factorial: negative argument");
  while (static_cast<int>(table.size()) <= n)
    table.push_back(table.back() * static_cast<double>(table.size()));
  return table[static_cast<std::size_t>(n)];
}

double binomial(int n, int k) {
  return factorial(n) / (factorial(k) * factorial(n - k));
}

// Spin matrices S_x, S_y, S_z for spin j = tj/2 in the weight basis ordered
// m = j .. -j, Condon-Shortley ladder phases.
Matrix spin_matrix(int tj, std::size_t r) {
  const Index d = tj + 1;
  Matrix sp = Matrix::Zero(d, d);
  const double j = 0.5 * tj;
  for (Index i = 1; i < d; ++i) {
    const double m = j - static_cast<double>(i);  // S+ : m -> m+1, row i-1
    sp(i - 1, i) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  Matrix sm = sp.adjoint();
  switch (r) {
    case 0: return 0.5 * (sp + sm);
    case 1: return cplx(0, -0.5) * (sp - sm);
    case 2: {
      Matrix sz = Matrix::Zero(d, d);
      for (Index i = 0; i < d; ++i) sz(i, i) = j - static_cast<double>(i);
      return sz;
    }
    default: throw Error("spin_matrix: index out of range");
  }
}

// Wigner matrix for SU(2) from the defining 2x2 matrix via the symmetric
// power construction; basis m = j .. -j.
Matrix wigner_d(int tj, const Eigen::Matrix2cd& u) {
  const Index d = tj + 1;
  Matrix out = Matrix::Zero(d, d);
  // column index c corresponds to m = j - c, i.e. monomial x^{tj-c} y^{c}
  for (Index c = 0; c < d; ++c) {
    const int p = tj - static_cast<int>(c);  // power of (u11 x + u21 y)
    const int q = static_cast<int>(c);       // power of (u12 x + u22 y)
    // expand and collect x^{tj-rw} y^{rw}
    for (int k = 0; k <= p; ++k) {
      for (int l = 0; l <= q; ++l) {
        const int xpow = k + l;
        const int rw = tj - xpow;  // row index, m' = j - rw
        cplx term = binomial(p, k) * binomial(q, l) *
                    std::pow(u(0, 0), k) * std::pow(u(1, 0), p - k) *
                    std::pow(u(0, 1), l) * std::pow(u(1, 1), q - l);
        out(rw, c) += term;
      }
    }
  }
  for (Index rw = 0; rw < d; ++rw) {
    for (Index c = 0; c < d; ++c) {
      const double norm = std::sqrt(
          (factorial(tj - static_cast<int>(rw)) * factorial(static_cast<int>(rw))) /
          (factorial(tj - static_cast<int>(c)) * factorial(static_cast<int>(c))));
      out(rw, c) *= norm;
    }
  }
  return out;
}

}  // namespace

GroupSpec make_zn(int n) {
  if (n < 2) throw Error("ZN requires N >= 2");
  return GroupSpec{GroupKind::ZN, n};
}
GroupSpec make_u1() { return GroupSpec{GroupKind::U1, 0}; }
GroupSpec make_su2() { return GroupSpec{GroupKind::SU2, 0}; }

GroupElement identity_element(const GroupSpec& spec) {
  GroupElement g;
  g.kind = spec.kind;
  g.zn_modulus = spec.n;
  g.su2_matrix = Eigen::Matrix2cd::Identity();
  return g;
}

GroupElement zn_element(const GroupSpec& spec, int m) {
  if (spec.kind != GroupKind::ZN) throw Error("zn_element: wrong group kind");
  GroupElement g = identity_element(spec);
  g.zn_value = ((m % spec.n) + spec.n) % spec.n;
  return g;
}

GroupElement u1_element(double angle) {
  GroupElement g;
  g.kind = GroupKind::U1;
  g.angle = std::remainder(angle, 2 * kPi);
  g.su2_matrix = Eigen::Matrix2cd::Identity();
  return g;
}

GroupElement su2_element(const Eigen::Matrix2cd& u) {
  GroupElement g;
  g.kind = GroupKind::SU2;
  g.su2_matrix = u;
  Eigen::Matrix2cd resid = u * u.adjoint() - Eigen::Matrix2cd::Identity();
  if (resid.norm() > 1e-12 || std::abs(u.determinant() - cplx(1, 0)) > 1e-12)
    throw Error("su2_element: matrix not special unitary");
  return g;
}

GroupElement su2_from_quaternion(double w, double x, double y, double z) {
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  if (std::abs(n - 1.0) > 1e-12) throw Error("su2_from_quaternion: not normalized");
  Eigen::Matrix2cd u = w * Eigen::Matrix2cd::Identity() +
                       cplx(0, 1) * (x * pauli(0) + y * pauli(1) + z * pauli(2));
  return su2_element(u);
}

GroupElement multiply(const GroupElement& a, const GroupElement& b) {
  if (a.kind != b.kind) throw Error("multiply: mixed group kinds");
  GroupElement g = a;
  switch (a.kind) {
    case GroupKind::ZN:
      g.zn_value = (a.zn_value + b.zn_value) % a.zn_modulus;
      break;
    case GroupKind::U1:
      g.angle = std::remainder(a.angle + b.angle, 2 * kPi);
      break;
    case GroupKind::SU2:
      g.su2_matrix = a.su2_matrix * b.su2_matrix;
      break;
  }
  return g;
}

GroupElement inverse(const GroupElement& g) {
  GroupElement out = g;
  switch (g.kind) {
    case GroupKind::ZN:
      out.zn_value = (g.zn_modulus - g.zn_value) % g.zn_modulus;
      break;
    case GroupKind::U1:
      out.angle = -g.angle;
      break;
    case GroupKind::SU2:
      out.su2_matrix = g.su2_matrix.adjoint();
      break;
  }
  return out;
}

GroupElement random_element(const GroupSpec& spec, Rng& rng) {
  switch (spec.kind) {
    case GroupKind::ZN:
      return zn_element(spec, rng.uniform_int(0, spec.n - 1));
    case GroupKind::U1:
      return u1_element(rng.uniform(0.0, 2 * kPi));
    case GroupKind::SU2: {
      double q[4];
      double norm = 0.0;
      do {
        norm = 0.0;
        for (double& c : q) {
          c = rng.gaussian();
          norm += c * c;
        }
      } while (norm < 1e-12);
      norm = std::sqrt(norm);
      return su2_from_quaternion(q[0] / norm, q[1] / norm, q[2] / norm, q[3] / norm);
    }
  }
  throw Error("random_element: unknown kind");
}

GroupElement exp_element(const GroupSpec& spec, std::size_t r, double t) {
  switch (spec.kind) {
    case GroupKind::ZN:
      throw Error("exp_element: ZN has no one-parameter subgroups");
    case GroupKind::U1:
      if (r != 0) throw Error("exp_element: U1 has a single Lie direction");
      return u1_element(t);
    case GroupKind::SU2: {
      if (r >= 3) throw Error("exp_element: SU2 Lie index out of range");
      // expm(i t sigma_r / sqrt(2))
      const double s = t / std::sqrt(2.0);
      Eigen::Matrix2cd u = std::cos(s) * Eigen::Matrix2cd::Identity() +
                           cplx(0, std::sin(s)) * pauli(r);
      return su2_element(u);
    }
  }
  throw Error("exp_element: unknown kind");
}

Matrix defining_rep(const GroupElement& g) {
  switch (g.kind) {
    case GroupKind::ZN: {
      Matrix m(1, 1);
      m(0, 0) = std::exp(cplx(0, 2 * kPi * g.zn_value / g.zn_modulus));
      return m;
    }
    case GroupKind::U1: {
      Matrix m(1, 1);
      m(0, 0) = std::exp(cplx(0, g.angle));
      return m;
    }
    case GroupKind::SU2:
      return g.su2_matrix;
  }
  throw Error("defining_rep: unknown kind");
}

std::vector<Irrep> irreps_up_to(const GroupSpec& spec, int cutoff) {
  if (cutoff < 0) throw Error("irreps_up_to: cutoff must be >= 0");
  std::vector<Irrep> out;
  switch (spec.kind) {
    case GroupKind::ZN:
      for (int q = 0; q < spec.n; ++q) out.push_back(Irrep{q, 1});
      break;
    case GroupKind::U1:
      for (int q = -cutoff; q <= cutoff; ++q) out.push_back(Irrep{q, 1});
      break;
    case GroupKind::SU2:
      for (int tj = 0; tj <= cutoff; ++tj) out.push_back(Irrep{tj, tj + 1});
      break;
  }
  return out;
}

Irrep trivial_irrep(const GroupSpec&) { return Irrep{0, 1}; }

Matrix irrep_matrix(const GroupSpec& spec, const Irrep& pi, const GroupElement& g) {
  switch (spec.kind) {
    case GroupKind::ZN: {
      Matrix m(1, 1);
      m(0, 0) = std::exp(cplx(0, 2 * kPi * pi.label * g.zn_value / g.zn_modulus));
      return m;
    }
    case GroupKind::U1: {
      Matrix m(1, 1);
      m(0, 0) = std::exp(cplx(0, pi.label * g.angle));
      return m;
    }
    case GroupKind::SU2:
      return wigner_d(pi.label, g.su2_matrix);
  }
  throw Error("irrep_matrix: unknown kind");
}

std::vector<Matrix> lie_basis(const GroupSpec& spec) {
  if (spec.kind == GroupKind::SU2) {
    std::vector<Matrix> out;
    for (std::size_t r = 0; r < 3; ++r)
      out.push_back(Matrix(pauli(r)) / std::sqrt(2.0));
    return out;
  }
  Matrix one(1, 1);
  one(0, 0) = 1.0;
  return {one};
}

Matrix generator_rep(const GroupSpec& spec, const Irrep& pi, std::size_t r) {
  switch (spec.kind) {
    case GroupKind::ZN:
    case GroupKind::U1: {
      if (r != 0) throw Error("generator_rep: abelian kinds accept only r = 0");
      Matrix m(1, 1);
      m(0, 0) = static_cast<double>(pi.label);
      return m;
    }
    case GroupKind::SU2:
      if (r >= 3) throw Error("generator_rep: Lie index out of range");
      return std::sqrt(2.0) * spin_matrix(pi.label, r);
  }
  throw Error("generator_rep: unknown kind");
}

double cg_coefficient(int tj1, int tm1, int tj2, int tm2, int tJ, int tM) {
  if (tm1 + tm2 != tM) return 0.0;
  if (tJ < std::abs(tj1 - tj2) || tJ > tj1 + tj2) return 0.0;
  if ((tj1 + tj2 + tJ) % 2 != 0) return 0.0;
  if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tM) > tJ) return 0.0;
  if ((tj1 + tm1) % 2 != 0 || (tj2 + tm2) % 2 != 0 || (tJ + tM) % 2 != 0)
    return 0.0;

  auto f2 = [](int twice) { return factorial(twice / 2); };

  const double delta =
      std::sqrt(f2(tj1 + tj2 - tJ) * f2(tj1 - tj2 + tJ) * f2(-tj1 + tj2 + tJ) /
                f2(tj1 + tj2 + tJ + 2));
  const double pref =
      std::sqrt(static_cast<double>(tJ + 1)) * delta *
      std::sqrt(f2(tJ + tM) * f2(tJ - tM) * f2(tj1 - tm1) * f2(tj1 + tm1) *
                f2(tj2 - tm2) * f2(tj2 + tm2));

  double sum = 0.0;
  for (int k = 0;; ++k) {
    const int a = (tj1 + tj2 - tJ) / 2 - k;
    const int b = (tj1 - tm1) / 2 - k;
    const int c = (tj2 + tm2) / 2 - k;
    const int d = (tJ - tj2 + tm1) / 2 + k;
    const int e = (tJ - tj1 - tm2) / 2 + k;
    if (a < 0 || b < 0 || c < 0) break;
    if (d < 0 || e < 0) continue;
    const double term = ((k % 2 == 0) ? 1.0 : -1.0) /
                        (factorial(k) * factorial(a) * factorial(b) *
                         factorial(c) * factorial(d) * factorial(e));
    sum += term;
  }
  return pref * sum;
}

Matrix clebsch_gordan(int tj1, int tj2, int tJ) {
  if (tJ < std::abs(tj1 - tj2) || tJ > tj1 + tj2 || (tj1 + tj2 + tJ) % 2 != 0)
    return Matrix(0, 0);
  const Index d1 = tj1 + 1, d2 = tj2 + 1, dJ = tJ + 1;
  Matrix out = Matrix::Zero(d1 * d2, dJ);
  for (Index i1 = 0; i1 < d1; ++i1) {
    const int tm1 = tj1 - 2 * static_cast<int>(i1);
    for (Index i2 = 0; i2 < d2; ++i2) {
      const int tm2 = tj2 - 2 * static_cast<int>(i2);
      for (Index iJ = 0; iJ < dJ; ++iJ) {
        const int tM = tJ - 2 * static_cast<int>(iJ);
        out(i1 * d2 + i2, iJ) = cg_coefficient(tj1, tm1, tj2, tm2, tJ, tM);
      }
    }
  }
  return out;
}

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2 * k + 1) * x * p1 - k * p2) / (k + 1);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
}

}  // namespace

std::vector<std::pair<GroupElement, double>> haar_quadrature(
    const GroupSpec& spec, int order) {
  if (order < 1) throw Error("haar_quadrature: order must be >= 1");
  std::vector<std::pair<GroupElement, double>> out;
  switch (spec.kind) {
    case GroupKind::ZN: {
      for (int m = 0; m < spec.n; ++m)
        out.emplace_back(zn_element(spec, m), 1.0 / spec.n);
      return out;
    }
    case GroupKind::U1: {
      const int points = 2 * order + 2;
      for (int k = 0; k < points; ++k)
        out.emplace_back(u1_element(2 * kPi * k / points), 1.0 / points);
      return out;
    }
    case GroupKind::SU2: {
      // Euler-angle product rule; alpha and gamma run over [0, 4pi) so that
      // half-integer frequencies are handled by the uniform rules.
      const int m_ang = 2 * order + 2;
      const int q_leg = order + 2;
      std::vector<double> nodes, weights;
      gauss_legendre(q_leg, nodes, weights);
      for (int ia = 0; ia < m_ang; ++ia) {
        const double alpha = 4 * kPi * ia / m_ang;
        for (int ib = 0; ib < q_leg; ++ib) {
          const double beta = std::acos(nodes[ib]);
          for (int ic = 0; ic < m_ang; ++ic) {
            const double gamma = 4 * kPi * ic / m_ang;
            Eigen::Matrix2cd rz1, ry, rz2;
            rz1 << std::exp(cplx(0, alpha / 2)), 0, 0, std::exp(cplx(0, -alpha / 2));
            ry << std::cos(beta / 2), std::sin(beta / 2), -std::sin(beta / 2),
                std::cos(beta / 2);
            rz2 << std::exp(cplx(0, gamma / 2)), 0, 0, std::exp(cplx(0, -gamma / 2));
            const double w = weights[ib] / (2.0 * m_ang * m_ang);
            out.emplace_back(su2_element(rz1 * ry * rz2), w);
          }
        }
      }
      return out;
    }
  }
  throw Error("haar_quadrature: unknown kind");
}

}  // namespace lgk

#ifndef SUPERHEIS_HEISGROUP_HPP
#define SUPERHEIS_HEISGROUP_HPP

#include <array>
#include <random>

#include "superheis/grassmann.hpp"

namespace superheis {

/// Element of the 3|3 group: even coordinates a, b, c (real body) and odd
/// coordinates alpha, beta, gamma, all valued in one Grassmann algebra.
struct GroupElement {
  GrassmannElement a, b, alpha, beta, c, gamma;

  static GroupElement identity(const PoolPtr& pool) {
    GrassmannElement z(pool);
    return {z, z, z, z, z, z};
  }

  void check_parities() const {
    auto even_ok = [](const GrassmannElement& x) {
      return x.parity() == Parity::Even && std::abs(x.body().imag()) < 1e-12;
    };
    auto odd_ok = [](const GrassmannElement& x) {
      return x.is_zero() || x.parity() == Parity::Odd;
    };
    if (!even_ok(a) || !even_ok(b) || !even_ok(c))
      throw std::invalid_argument("GroupElement: even coordinate with wrong parity or complex body");
    if (!odd_ok(alpha) || !odd_ok(beta) || !odd_ok(gamma))
      throw std::invalid_argument("GroupElement: odd coordinate with wrong parity");
  }
};

/// Element of the body group G_o = R^3 (standard Heisenberg group).
struct BodyElement {
  double a = 0.0, b = 0.0, c = 0.0;
};

/// Group multiplication. The c and gamma entries carry the half-commutator
/// corrections mixing even and odd coordinates.
inline GroupElement multiply(const GroupElement& g, const GroupElement& h) {
  g.check_parities();
  h.check_parities();
  cplx half{0.5, 0.0};
  GroupElement r = g;
  r.a = g.a + h.a;
  r.b = g.b + h.b;
  r.alpha = g.alpha + h.alpha;
  r.beta = g.beta + h.beta;
  r.c = g.c + h.c + half * (g.a * h.b - g.b * h.a - g.alpha * h.beta - g.beta * h.alpha);
  r.gamma = g.gamma + h.gamma + half * (g.a * h.beta - g.beta * h.a + g.b * h.alpha - g.alpha * h.b);
  return r;
}

inline GroupElement inverse(const GroupElement& g) {
  return {-g.a, -g.b, -g.alpha, -g.beta, -g.c, -g.gamma};
}

inline BodyElement multiply(const BodyElement& g, const BodyElement& h) {
  return {g.a + h.a, g.b + h.b, g.c + h.c + 0.5 * (g.a * h.b - g.b * h.a)};
}

/// Vector in the super Lie algebra over the basis (e0, e1, e2, f0, f1, f2);
/// slots 0-2 are even, 3-5 odd. Coefficients may be Grassmann-valued for
/// derived vectors, plain reals for the basis itself.
struct AlgebraVector {
  std::array<GrassmannElement, 6> coeff;

  static AlgebraVector zero(const PoolPtr& pool) {
    GrassmannElement z(pool);
    return {{z, z, z, z, z, z}};
  }
  static AlgebraVector basis(const PoolPtr& pool, int i) {
    AlgebraVector v = zero(pool);
    v.coeff[i] = GrassmannElement::scalar(pool, 1.0);
    return v;
  }

  static int slot_parity(int i) { return i < 3 ? 0 : 1; }

  AlgebraVector& operator+=(const AlgebraVector& o) {
    for (int i = 0; i < 6; ++i) coeff[i] += o.coeff[i];
    return *this;
  }
  AlgebraVector& operator-=(const AlgebraVector& o) {
    for (int i = 0; i < 6; ++i) coeff[i] -= o.coeff[i];
    return *this;
  }
  friend AlgebraVector operator+(AlgebraVector a, const AlgebraVector& b) { return a += b; }
  friend AlgebraVector operator-(AlgebraVector a, const AlgebraVector& b) { return a -= b; }
  friend AlgebraVector operator*(AlgebraVector a, cplx s) {
    for (auto& c : a.coeff) c *= s;
    return a;
  }

  double max_abs() const {
    double m = 0.0;
    for (auto& c : coeff) m = std::max(m, c.max_abs());
    return m;
  }
};

namespace detail {
// Structure constants: brackets[i][j] = (target slot, sign) or absent.
// [e1,e2] = e0 = [f1,f2], [e1,f2] = f0 = [e2,f1]; graded skew-symmetry
// makes the odd-odd entries symmetric and the even-odd entries antisymmetric.
struct StructEntry {
  int target = -1;
  double sign = 0.0;
};
inline StructEntry struct_const(int i, int j) {
  if (i == 1 && j == 2) return {0, 1.0};
  if (i == 2 && j == 1) return {0, -1.0};
  if (i == 4 && j == 5) return {0, 1.0};
  if (i == 5 && j == 4) return {0, 1.0};
  if (i == 1 && j == 5) return {3, 1.0};
  if (i == 5 && j == 1) return {3, -1.0};
  if (i == 2 && j == 4) return {3, 1.0};
  if (i == 4 && j == 2) return {3, -1.0};
  return {};
}
}  // namespace detail

/// Bilinear extension of the structure-constant table.
inline AlgebraVector bracket(const AlgebraVector& X, const AlgebraVector& Y) {
  const PoolPtr& pool = X.coeff[0].pool();
  AlgebraVector r = AlgebraVector::zero(pool);
  for (int i = 0; i < 6; ++i) {
    if (X.coeff[i].is_zero()) continue;
    for (int j = 0; j < 6; ++j) {
      if (Y.coeff[j].is_zero()) continue;
      auto e = detail::struct_const(i, j);
      if (e.target < 0) continue;
      r.coeff[e.target] += X.coeff[i] * Y.coeff[j] * cplx{e.sign};
    }
  }
  return r;
}

/// Graded Jacobi identity over all basis triples; returns the max residual
/// (exactly zero for this two-step nilpotent algebra).
inline double check_graded_jacobi(const PoolPtr& pool) {
  double worst = 0.0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      for (int k = 0; k < 6; ++k) {
        AlgebraVector X = AlgebraVector::basis(pool, i);
        AlgebraVector Y = AlgebraVector::basis(pool, j);
        AlgebraVector Z = AlgebraVector::basis(pool, k);
        auto sgn = [](int p, int q) { return (p * q) % 2 == 0 ? 1.0 : -1.0; };
        int pi = AlgebraVector::slot_parity(i), pj = AlgebraVector::slot_parity(j),
            pk = AlgebraVector::slot_parity(k);
        AlgebraVector res = bracket(X, bracket(Y, Z)) * cplx{sgn(pi, pk)} +
                            bracket(Y, bracket(Z, X)) * cplx{sgn(pj, pi)} +
                            bracket(Z, bracket(X, Y)) * cplx{sgn(pk, pj)};
        worst = std::max(worst, res.max_abs());
      }
  return worst;
}

/// Adjoint action of the body group on the algebra, per the action table.
inline AlgebraVector adjoint_action(const BodyElement& g, const AlgebraVector& X) {
  const PoolPtr& pool = X.coeff[0].pool();
  AlgebraVector r = X;
  // e1 -> e1 - b e0, e2 -> e2 + a e0, f1 -> f1 + b f0, f2 -> f2 + a f0
  r.coeff[0] += X.coeff[1] * cplx{-g.b} + X.coeff[2] * cplx{g.a};
  r.coeff[3] += X.coeff[4] * cplx{g.b} + X.coeff[5] * cplx{g.a};
  (void)pool;
  return r;
}

struct ShcpReport {
  double parity_residual = 0.0;       // action preserves the grading
  double action_residual = 0.0;       // (g h) . X = g . (h . X)
  double automorphism_residual = 0.0; // g . [X,Y] = [g.X, g.Y]
  double infinitesimal_residual = 0.0;// d/dt exp(tX).Y |_0 = [X,Y]
  double max_residual() const {
    return std::max({parity_residual, action_residual, automorphism_residual,
                     infinitesimal_residual});
  }
};

/// Harish-Chandra pair axioms over seeded random body elements and all basis
/// vectors. The action is affine in each coordinate, so the infinitesimal
/// check uses the exact secant (action at t=1 minus identity).
inline ShcpReport check_shcp_axioms(const PoolPtr& pool, std::mt19937_64& rng, int samples) {
  ShcpReport rep;
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  for (int s = 0; s < samples; ++s) {
    BodyElement g{U(rng), U(rng), U(rng)};
    BodyElement h{U(rng), U(rng), U(rng)};
    for (int i = 0; i < 6; ++i) {
      AlgebraVector X = AlgebraVector::basis(pool, i);
      // SHCP2: grading preserved
      AlgebraVector gX = adjoint_action(g, X);
      for (int j = 0; j < 6; ++j)
        if (AlgebraVector::slot_parity(j) != AlgebraVector::slot_parity(i))
          rep.parity_residual = std::max(rep.parity_residual, gX.coeff[j].max_abs());
      // group action property
      AlgebraVector lhs = adjoint_action(multiply(g, h), X);
      AlgebraVector rhs = adjoint_action(g, adjoint_action(h, X));
      rep.action_residual = std::max(rep.action_residual, (lhs - rhs).max_abs());
      for (int j = 0; j < 6; ++j) {
        AlgebraVector Y = AlgebraVector::basis(pool, j);
        AlgebraVector lb = adjoint_action(g, bracket(X, Y));
        AlgebraVector rb = bracket(adjoint_action(g, X), adjoint_action(g, Y));
        rep.automorphism_residual = std::max(rep.automorphism_residual, (lb - rb).max_abs());
      }
    }
  }
  // SHCP1+3: the derivative of the coordinate-line action matches the bracket.
  for (int i = 0; i < 3; ++i) {
    BodyElement line{};
    if (i == 1) line.a = 1.0;
    if (i == 2) line.b = 1.0;
    if (i == 0) line.c = 1.0;
    for (int j = 0; j < 6; ++j) {
      AlgebraVector Y = AlgebraVector::basis(pool, j);
      AlgebraVector deriv = adjoint_action(line, Y) - Y;
      AlgebraVector expect = bracket(AlgebraVector::basis(pool, i), Y);
      rep.infinitesimal_residual =
          std::max(rep.infinitesimal_residual, (deriv - expect).max_abs());
    }
  }
  return rep;
}

}  // namespace superheis

#endif  // SUPERHEIS_HEISGROUP_HPP

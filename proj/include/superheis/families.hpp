#ifndef SUPERHEIS_FAMILIES_HPP
#define SUPERHEIS_FAMILIES_HPP

#include <functional>
#include <optional>
#include <random>
#include <sstream>

#include "superheis/heisgroup.hpp"
#include "superheis/superspace.hpp"

namespace superheis {

/// One shared generator pool for parameters, odd variables and the auxiliary
/// differentiation/sampling generators. The odd variables xi, eta must stay
/// in ascending canonical order for the Berezin normalization.
struct Context {
  PoolPtr pool;
  int kappa, lambda;    // odd parameters
  int xi, eta;          // odd variables
  int theta;            // auxiliary generator for odd-direction derivatives
  int eps1, eps2;       // their product is the even dual unit
  int s1, s2;           // parameter generators for sampled souls

  static Context make() {
    auto pool = std::make_shared<GeneratorPool>(std::vector<std::pair<std::string, GenRole>>{
        {"kappa", GenRole::Parameter},
        {"lambda", GenRole::Parameter},
        {"xi", GenRole::Variable},
        {"eta", GenRole::Variable},
        {"theta", GenRole::Auxiliary},
        {"eps1", GenRole::Auxiliary},
        {"eps2", GenRole::Auxiliary},
        {"s1", GenRole::Parameter},
        {"s2", GenRole::Parameter},
    });
    Context c;
    c.pool = pool;
    c.kappa = pool->index("kappa");
    c.lambda = pool->index("lambda");
    c.xi = pool->index("xi");
    c.eta = pool->index("eta");
    c.theta = pool->index("theta");
    c.eps1 = pool->index("eps1");
    c.eps2 = pool->index("eps2");
    c.s1 = pool->index("s1");
    c.s2 = pool->index("s2");
    return c;
  }

  GrassmannElement scalar(cplx v) const { return GrassmannElement::scalar(pool, v); }
  GrassmannElement gen(int i) const { return GrassmannElement::generator(pool, i); }
  GrassmannElement zero() const { return GrassmannElement(pool); }
  GrassmannElement one() const { return scalar(1.0); }
  GrassmannElement i() const { return scalar(cplx{0.0, 1.0}); }
};

/// Parameters of one of the seven families. Odd parameters are present or
/// absent references to the shared kappa / lambda generators.
struct FamilyParams {
  int family = 1;
  double k = 0.0, ell = 0.0, p = 0.0;
  bool kappa = false, lambda = false;

  void validate() const {
    auto fail = [&](const std::string& msg) {
      throw std::invalid_argument("family " + std::to_string(family) + " " + msg);
    };
    if (family < 1 || family > 7) throw std::invalid_argument("family id must be 1..7");
    switch (family) {
      case 2:
        if (!kappa) fail("requires nonzero odd parameter kappa");
        break;
      case 3:
        if (k == 0.0) fail("requires nonzero k");
        break;
      case 4:
        if (!kappa) fail("requires nonzero odd parameter kappa");
        break;
      case 5:
        if (k == 0.0) fail("requires nonzero k");
        if (!kappa) fail("requires nonzero odd parameter kappa");
        break;
      case 6:
        if (!kappa) fail("requires nonzero odd parameter kappa");
        break;
      case 7:
        if (k == 0.0) fail("requires nonzero k");
        if (p == 0.0) fail("requires nonzero p");
        if (!kappa) fail("requires nonzero odd parameter kappa");
        break;
      default:
        break;
    }
  }

  static FamilyParams defaults(int family) {
    FamilyParams fp;
    fp.family = family;
    fp.k = 1.5;
    fp.ell = 0.7;
    fp.p = 0.5;
    fp.kappa = true;
    fp.lambda = true;
    return fp;
  }
};

/// Hilbert-space shape and super-pairing descriptor of a family.
inline SuperHilbertSpec hilbert_spec(const Context& ctx, const FamilyParams& fp) {
  SuperHilbertSpec s;
  s.pool = ctx.pool;
  auto diagonal = std::vector<PairingTerm>{{0u, 0u, 1.0}};
  auto odd_q1 = std::vector<PairingTerm>{{0u, 1u, 1.0}, {1u, 0u, 1.0}};
  // components over (xi, eta): 0, xi=1, eta=2, xi eta=3
  auto q2 = std::vector<PairingTerm>{{0u, 3u, 1.0}, {3u, 0u, 1.0}, {1u, 2u, 1.0}, {2u, 1u, -1.0}};
  switch (fp.family) {
    case 1:
      s.p = 0; s.q = 0; s.super_pairing = diagonal;
      break;
    case 2:
      s.p = 2; s.q = 0; s.super_pairing = diagonal;
      break;
    case 3:
    case 4:
    case 5:
      s.p = 1; s.q = 1; s.odd_gen = {ctx.xi, -1}; s.super_pairing = odd_q1;
      break;
    case 6:
      s.p = 0; s.q = 2; s.odd_gen = {ctx.xi, ctx.eta}; s.super_pairing = q2;
      break;
    case 7:
      s.p = 1; s.q = 2; s.odd_gen = {ctx.xi, ctx.eta}; s.super_pairing = q2;
      break;
    default:
      throw std::invalid_argument("invalid family id");
  }
  return s;
}

namespace detail {

/// Phase factor exp(coef_x * x_axis + rest) as a PolyGauss multiplier.
inline PolyGauss phase(const Context& ctx, int nvars, int axis,
                       const GrassmannElement& coef_x, const GrassmannElement& rest) {
  PolyGauss f = PolyGauss::constant(ctx.pool, nvars, exp(rest));
  if (!coef_x.is_zero()) f = f * PolyGauss::exp_linear(ctx.pool, nvars, axis, coef_x);
  return f;
}

inline PolyGauss phase(const Context& ctx, int nvars, const GrassmannElement& rest) {
  return PolyGauss::constant(ctx.pool, nvars, exp(rest));
}

}  // namespace detail

/// The integrated representation rho of the full super group, exactly as the
/// seven displayed formulas: argument substitution followed by the phase
/// factors in printed order.
inline SuperFunction rho(const Context& ctx, const FamilyParams& fp, const GroupElement& g,
                         const SuperFunction& psi) {
  fp.validate();
  g.check_parities();
  const SuperHilbertSpec spec = psi.spec();
  const GrassmannElement iu = ctx.i();
  const GrassmannElement kap = fp.kappa ? ctx.gen(ctx.kappa) : ctx.zero();
  const GrassmannElement lam = fp.lambda ? ctx.gen(ctx.lambda) : ctx.zero();
  const cplx half{0.5, 0.0};
  const GrassmannElement& a = g.a;
  const GrassmannElement& b = g.b;
  const GrassmannElement& al = g.alpha;
  const GrassmannElement& be = g.beta;
  const GrassmannElement& c = g.c;
  const GrassmannElement& ga = g.gamma;
  const GrassmannElement xi_g = spec.q >= 1 ? ctx.gen(spec.odd_gen[0]) : ctx.zero();
  const GrassmannElement eta_g = spec.q >= 2 ? ctx.gen(spec.odd_gen[1]) : ctx.zero();

  SuperFunction shifted(spec);
  std::vector<PolyGauss> phases;
  switch (fp.family) {
    case 1: {
      // e^{i(ak + b l + alpha kappa + beta lambda)} psi
      shifted = psi;
      phases.push_back(detail::phase(
          ctx, spec.p, iu * (a * cplx{fp.k} + b * cplx{fp.ell} + al * kap + be * lam)));
      break;
    }
    case 2: {
      // psi(x+b, y+a) e^{i alpha kappa x} e^{i beta kappa y}
      // e^{i(gamma + 1/2(beta a + b alpha)) kappa}
      shifted = psi.substitute({}, {{0, b}, {1, a}});
      phases.push_back(detail::phase(ctx, spec.p, 0, iu * (al * kap), ctx.zero()));
      phases.push_back(detail::phase(ctx, spec.p, 1, iu * (be * kap), ctx.zero()));
      phases.push_back(detail::phase(ctx, spec.p, iu * ((ga + half * (be * a + b * al)) * kap)));
      break;
    }
    case 3: {
      // psi(x + k a, xi - k alpha) e^{ibx} e^{-i beta xi}
      // e^{ik(c + 1/2(ab - alpha beta))}
      shifted = psi.substitute({{0, al * cplx{-fp.k}}}, {{0, a * cplx{fp.k}}});
      phases.push_back(detail::phase(ctx, spec.p, 0, iu * b, ctx.zero()));
      phases.push_back(detail::phase(ctx, spec.p, -iu * (be * xi_g)));
      phases.push_back(detail::phase(
          ctx, spec.p, iu * cplx{fp.k} * (c + half * (a * b - al * be))));
      break;
    }
    case 4: {
      // psi(x + a, xi - alpha) e^{ib(k + xi kappa)} e^{i beta kappa x}
      // e^{i(gamma + 1/2(beta a - b alpha)) kappa}
      shifted = psi.substitute({{0, -al}}, {{0, a}});
      phases.push_back(detail::phase(ctx, spec.p, iu * (b * (ctx.scalar(fp.k) + xi_g * kap))));
      phases.push_back(detail::phase(ctx, spec.p, 0, iu * (be * kap), ctx.zero()));
      phases.push_back(detail::phase(ctx, spec.p, iu * ((ga + half * (be * a - b * al)) * kap)));
      break;
    }
    case 5: {
      // psi(x + a, xi - alpha) e^{ib(xk + xi kappa)} e^{i beta(x kappa - xi k)}
      // e^{i(gamma + 1/2(beta a - b alpha)) kappa} e^{ik(c + 1/2(ab + beta alpha))}
      shifted = psi.substitute({{0, -al}}, {{0, a}});
      phases.push_back(detail::phase(ctx, spec.p, 0, iu * b * cplx{fp.k}, iu * (b * (xi_g * kap))));
      phases.push_back(
          detail::phase(ctx, spec.p, 0, iu * (be * kap), -iu * (be * xi_g) * cplx{fp.k}));
      phases.push_back(detail::phase(ctx, spec.p, iu * ((ga + half * (be * a - b * al)) * kap)));
      phases.push_back(detail::phase(
          ctx, spec.p, iu * cplx{fp.k} * (c + half * (a * b + be * al))));
      break;
    }
    case 6: {
      // psi(xi - beta, eta - alpha) e^{ia(xi kappa + k)} e^{ib(eta kappa + l)}
      // e^{i(gamma - 1/2(beta a + b alpha)) kappa}
      shifted = psi.substitute({{0, -be}, {1, -al}}, {});
      phases.push_back(detail::phase(ctx, spec.p, iu * (a * (xi_g * kap + ctx.scalar(fp.k)))));
      phases.push_back(detail::phase(ctx, spec.p, iu * (b * (eta_g * kap + ctx.scalar(fp.ell)))));
      phases.push_back(detail::phase(ctx, spec.p, iu * ((ga - half * (be * a + b * al)) * kap)));
      break;
    }
    case 7: {
      // psi(x + a - pb, xi - alpha, eta - beta) e^{ib(xk + xi kappa + p eta kappa)}
      // e^{i beta(x kappa - xi k)} e^{i(gamma - pb beta + 1/2(beta a - b alpha)) kappa}
      // e^{ik(c + 1/2(ab + beta alpha - p b^2))}
      shifted = psi.substitute({{0, -al}, {1, -be}}, {{0, a - b * cplx{fp.p}}});
      phases.push_back(detail::phase(ctx, spec.p, 0, iu * b * cplx{fp.k},
                                     iu * (b * (xi_g * kap + (eta_g * kap) * cplx{fp.p}))));
      phases.push_back(
          detail::phase(ctx, spec.p, 0, iu * (be * kap), -iu * (be * xi_g) * cplx{fp.k}));
      phases.push_back(detail::phase(
          ctx, spec.p,
          iu * ((ga - (b * be) * cplx{fp.p} + half * (be * a - b * al)) * kap)));
      phases.push_back(detail::phase(
          ctx, spec.p,
          iu * cplx{fp.k} * (c + half * (a * b + be * al - (b * b) * cplx{fp.p}))));
      break;
    }
    default:
      throw std::invalid_argument("invalid family id");
  }

  PolyGauss total = shifted.to_total();
  for (auto& ph : phases) total = total * ph;
  return SuperFunction::from_total(spec, total);
}

/// rho with the odd coordinates set to zero.
inline SuperFunction rho_o(const Context& ctx, const FamilyParams& fp, const BodyElement& g0,
                           const SuperFunction& psi) {
  GroupElement g = GroupElement::identity(ctx.pool);
  g.a = ctx.scalar(g0.a);
  g.b = ctx.scalar(g0.b);
  g.c = ctx.scalar(g0.c);
  return rho(ctx, fp, g, psi);
}

/// Infinitesimal representation tau, derived from rho by differentiating the
/// matching coordinate at the identity: even directions use the even dual
/// unit eps1 eps2, odd directions a fresh odd generator with a left
/// derivative. Basis-to-coordinate matching: e1~a, e2~b, e0~c, f1~alpha,
/// f2~beta, f0~gamma.
inline SuperFunction tau_basis(const Context& ctx, const FamilyParams& fp, int slot,
                               const SuperFunction& psi) {
  GroupElement g = GroupElement::identity(ctx.pool);
  bool even_dir = slot < 3;
  GrassmannElement dir =
      even_dir ? ctx.gen(ctx.eps1) * ctx.gen(ctx.eps2) : ctx.gen(ctx.theta);
  switch (slot) {
    case 0: g.c = dir; break;
    case 1: g.a = dir; break;
    case 2: g.b = dir; break;
    case 3: g.gamma = dir; break;
    case 4: g.alpha = dir; break;
    case 5: g.beta = dir; break;
    default: throw std::invalid_argument("tau: non-basis vector");
  }
  SuperFunction moved = rho(ctx, fp, g, psi);
  // differentiate on the total form: the direction generator has to move left
  // past the odd variables, which per-component extraction would miss
  PolyGauss total = moved.to_total();
  PolyGauss extracted =
      even_dir ? total.map_coefficients([&](const GrassmannElement& c) {
          return left_coefficient(left_coefficient(c, ctx.eps1), ctx.eps2);
        })
               : total.map_coefficients([&](const GrassmannElement& c) {
                   return left_coefficient(c, ctx.theta);
                 });
  return SuperFunction::from_total(psi.spec(), extracted);
}

/// Linear extension of tau to algebra vectors with real coefficients.
inline SuperFunction tau(const Context& ctx, const FamilyParams& fp, const AlgebraVector& X,
                         const SuperFunction& psi) {
  SuperFunction out(psi.spec());
  for (int i = 0; i < 6; ++i) {
    if (X.coeff[i].is_zero()) continue;
    cplx c = X.coeff[i].body();
    if ((X.coeff[i] - GrassmannElement::scalar(ctx.pool, c)).max_abs() > 1e-14)
      throw std::invalid_argument("tau: algebra vector must have scalar coefficients");
    out += tau_basis(ctx, fp, i, psi) * c;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sampling and test vectors

/// Hermite-type test suite {h_n(x) e^{-x^2/2}, n <= 3} plus one modulated
/// translate, distributed over the family's components.
inline std::vector<SuperFunction> test_vectors(const Context& ctx, const SuperHilbertSpec& spec) {
  std::vector<SuperFunction> out;
  auto one = [&](GrassmannElement c) { return c; };
  (void)one;
  // 1-variable building blocks h_n(x) e^{-x^2/2}
  auto hermite_pg = [&](int nvars, int axis, int n) {
    // physicists' Hermite polynomials H_0..H_3
    static const std::vector<std::vector<double>> H = {
        {1.0}, {0.0, 2.0}, {-2.0, 0.0, 4.0}, {0.0, -12.0, 0.0, 8.0}};
    PolyGauss f = PolyGauss::zero(ctx.pool, nvars);
    for (int d = 0; d <= n; ++d)
      if (H[n][d] != 0.0)
        f += PolyGauss::monomial_gauss(ctx.pool, nvars, axis, d, ctx.scalar(H[n][d]),
                                       cplx{-0.5}, cplx{});
    return f;
  };
  auto modulated = [&](int nvars, int axis) {
    PolyGauss f = PolyGauss::monomial_gauss(ctx.pool, nvars, axis, 0, ctx.one(), cplx{-0.5},
                                            cplx{0.3, 1.1});
    return f;
  };
  int ncomp = 1 << spec.q;
  if (spec.p == 0) {
    // constant coefficients; spread over components
    static const cplx vals[] = {{1.0, 0.0}, {0.4, -0.3}, {-0.7, 0.2}, {0.1, 0.9}};
    for (int v = 0; v < 4; ++v) {
      SuperFunction f(spec);
      f.set_component(static_cast<oddsub>(v % ncomp),
                      PolyGauss::constant(ctx.pool, 0, vals[v]));
      out.push_back(f);
    }
    SuperFunction mix(spec);
    mix.set_component(0, PolyGauss::constant(ctx.pool, 0, cplx{0.6, 0.0}));
    mix.set_component(static_cast<oddsub>(ncomp - 1),
                      PolyGauss::constant(ctx.pool, 0, cplx{0.0, 0.8}));
    out.push_back(mix);
  } else if (spec.p == 1) {
    // equal Hermite degrees sit in dual component pairs so the odd super
    // pairing is non-degenerate on the suite
    oddsub dual0 = static_cast<oddsub>(ncomp - 1);
    oddsub c1 = (spec.q == 2) ? 1u : 0u;
    oddsub dual1 = (spec.q == 2) ? 2u : dual0;
    auto vec = [&](oddsub s, PolyGauss g) {
      SuperFunction f(spec);
      f.set_component(s, std::move(g));
      return f;
    };
    out.push_back(vec(0, hermite_pg(1, 0, 0)));
    out.push_back(vec(dual0, hermite_pg(1, 0, 0) + hermite_pg(1, 0, 2) * cplx{0.3}));
    out.push_back(vec(c1, hermite_pg(1, 0, 1)));
    out.push_back(vec(dual1, hermite_pg(1, 0, 1) + hermite_pg(1, 0, 3) * cplx{0.2}));
    SuperFunction f(spec);
    f.set_component(0, modulated(1, 0));
    f.set_component(dual0, hermite_pg(1, 0, 1) * cplx{0.5});
    out.push_back(f);
  } else {
    // p = 2: separable products
    for (int n = 0; n <= 3; ++n) {
      SuperFunction f(spec);
      f.set_component(0, hermite_pg(2, 0, n) * hermite_pg(2, 1, (n + 1) % 4));
      out.push_back(f);
    }
    SuperFunction f(spec);
    f.set_component(0, modulated(2, 0) * hermite_pg(2, 1, 0));
    out.push_back(f);
  }
  for (auto& f : out) f = f * cplx{1.0 / norm(f)};
  return out;
}

/// Seeded random group element: real bodies in [-2,2], souls over at most
/// the two sampling parameter generators, coefficients in [-1,1].
inline GroupElement sample_group_element(const Context& ctx, std::mt19937_64& rng,
                                         bool with_souls = true) {
  std::uniform_real_distribution<double> body(-2.0, 2.0);
  std::uniform_real_distribution<double> soul(-1.0, 1.0);
  GroupElement g = GroupElement::identity(ctx.pool);
  GrassmannElement s1 = ctx.gen(ctx.s1), s2 = ctx.gen(ctx.s2);
  GrassmannElement s12 = s1 * s2;
  auto even_coord = [&]() {
    GrassmannElement e = ctx.scalar(body(rng));
    if (with_souls) e += s12 * cplx{soul(rng)};
    return e;
  };
  auto odd_coord = [&]() {
    GrassmannElement e = ctx.zero();
    if (with_souls) e = s1 * cplx{soul(rng)} + s2 * cplx{soul(rng)};
    return e;
  };
  g.a = even_coord();
  g.b = even_coord();
  g.c = even_coord();
  g.alpha = odd_coord();
  g.beta = odd_coord();
  g.gamma = odd_coord();
  return g;
}

inline BodyElement sample_body_element(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> body(-2.0, 2.0);
  return {body(rng), body(rng), body(rng)};
}

// ---------------------------------------------------------------------------
// Checks

inline double check_homomorphism(const Context& ctx, const FamilyParams& fp, int pairs,
                                 std::mt19937_64& rng,
                                 const std::vector<SuperFunction>& vectors) {
  double worst = 0.0;
  for (int s = 0; s < pairs; ++s) {
    GroupElement g = sample_group_element(ctx, rng);
    GroupElement h = sample_group_element(ctx, rng);
    GroupElement gh = multiply(g, h);
    for (auto& psi : vectors) {
      SuperFunction lhs = rho(ctx, fp, g, rho(ctx, fp, h, psi));
      SuperFunction rhs = rho(ctx, fp, gh, psi);
      worst = std::max(worst, sup_residual(lhs - rhs));
    }
  }
  return worst;
}

inline double check_unitarity_rho_o(const Context& ctx, const FamilyParams& fp, int samples,
                                    std::mt19937_64& rng,
                                    const std::vector<SuperFunction>& vectors) {
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    BodyElement g = sample_body_element(rng);
    for (auto& chi : vectors)
      for (auto& psi : vectors) {
        GrassmannElement lhs =
            inner_product(rho_o(ctx, fp, g, chi), rho_o(ctx, fp, g, psi));
        GrassmannElement rhs = inner_product(chi, psi);
        worst = std::max(worst, (lhs - rhs).max_abs());
      }
  }
  return worst;
}

enum class SkewConvention { A, B };

/// SUR'3 graded skew-symmetry of tau(X) for the super scalar product.
/// Convention A: <<tau(X)chi, psi>> + (-1)^{|X||chi|} <<chi, tau(X)psi>> = 0;
/// convention B adds an extra sign (-1)^{|X|} on the second term.
inline double check_graded_skew(const Context& ctx, const FamilyParams& fp, int slot,
                                const std::vector<SuperFunction>& vectors,
                                SkewConvention conv) {
  int xpar = AlgebraVector::slot_parity(slot);
  double worst = 0.0;
  for (auto& chi : vectors)
    for (auto& psi : vectors) {
      for (int pc = 0; pc < 2; ++pc) {
        SuperFunction hc(chi.spec());
        for (auto& [s, f] : chi.components())
          if (chi.spec().component_parity(s) == pc) hc.set_component(s, f);
        if (hc.components().empty()) continue;
        double sign = ((xpar * pc) % 2 == 0) ? 1.0 : -1.0;
        if (conv == SkewConvention::B && xpar == 1) sign = -sign;
        GrassmannElement lhs = super_inner_product(tau_basis(ctx, fp, slot, hc), psi);
        GrassmannElement rhs = super_inner_product(hc, tau_basis(ctx, fp, slot, psi));
        worst = std::max(worst, (lhs + rhs * cplx{sign}).max_abs());
      }
    }
  return worst;
}

/// Bracket compatibility tau(X)tau(Y) -+ tau(Y)tau(X) = tau([X,Y]) over all
/// 15 unordered basis pairs.
inline double check_bracket_compat(const Context& ctx, const FamilyParams& fp,
                                   const std::vector<SuperFunction>& vectors) {
  double worst = 0.0;
  for (int i = 0; i < 6; ++i)
    for (int j = i; j < 6; ++j) {
      int pi = AlgebraVector::slot_parity(i), pj = AlgebraVector::slot_parity(j);
      double sign = ((pi * pj) % 2 == 0) ? 1.0 : -1.0;
      AlgebraVector br =
          bracket(AlgebraVector::basis(ctx.pool, i), AlgebraVector::basis(ctx.pool, j));
      for (auto& psi : vectors) {
        SuperFunction lhs = tau_basis(ctx, fp, i, tau_basis(ctx, fp, j, psi)) -
                            tau_basis(ctx, fp, j, tau_basis(ctx, fp, i, psi)) * cplx{sign};
        SuperFunction rhs = tau(ctx, fp, br, psi);
        worst = std::max(worst, sup_residual(lhs - rhs));
      }
    }
  return worst;
}

/// SUR'4 equivariance tau(g.X) = rho_o(g) tau(X) rho_o(g^{-1}) for odd X.
inline double check_equivariance(const Context& ctx, const FamilyParams& fp, int samples,
                                 std::mt19937_64& rng,
                                 const std::vector<SuperFunction>& vectors) {
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    BodyElement g = sample_body_element(rng);
    BodyElement ginv{-g.a, -g.b, -g.c};
    for (int slot = 3; slot < 6; ++slot) {
      AlgebraVector gX = adjoint_action(g, AlgebraVector::basis(ctx.pool, slot));
      for (auto& psi : vectors) {
        SuperFunction lhs = tau(ctx, fp, gX, psi);
        SuperFunction rhs = rho_o(
            ctx, fp, g, tau_basis(ctx, fp, slot, rho_o(ctx, fp, ginv, psi)));
        worst = std::max(worst, sup_residual(lhs - rhs));
      }
    }
  }
  return worst;
}

/// Constructive closure of the test-function class under tau-words.
inline bool check_domain_closure(const Context& ctx, const FamilyParams& fp,
                                 const std::vector<SuperFunction>& vectors, int max_word) {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<int> pick(0, 5);
  for (auto& psi : vectors) {
    for (int w = 0; w < 8; ++w) {
      SuperFunction cur = psi;
      for (int step = 0; step < max_word; ++step) cur = tau_basis(ctx, fp, pick(rng), cur);
      // class closure: components stay PolyGauss with finite coefficients
      for (auto& [s, f] : cur.components())
        for (auto& t : f.terms())
          for (auto& [d, c] : t.poly)
            if (!std::isfinite(c.max_abs())) return false;
    }
  }
  return true;
}

/// Berezin realization vs the displayed component formula.
inline double check_berezin_realization(const Context& ctx,
                                        const std::vector<SuperFunction>& vectors) {
  double worst = 0.0;
  for (auto& chi : vectors)
    for (auto& psi : vectors) {
      GrassmannElement a = super_inner_product(chi, psi);
      GrassmannElement b = super_inner_product_components(chi, psi);
      worst = std::max(worst, (a - b).max_abs());
    }
  return worst;
}

// ---------------------------------------------------------------------------
// The R^{0|1} introductory demonstration

struct DemoR01Report {
  bool standard_shs_consistent = false;  // the skewness system has a solution
  std::string inconsistency;             // what forces the contradiction
  double odd_pairing_skew_residual = 0.0;
  double tau_square_residual = 0.0;
};

/// C^{1|1} with tau(f) = d/dxi, i.e. the nilpotent matrix [[0,1],[0,0]].
/// Under the standard super-Hilbert conditions the super scalar product is
/// block diagonal, diag(d0, i d1) with d0, d1 > 0, and skewness of tau(f)
/// forces d0 = 0 -- inconsistent with non-degeneracy. The odd pairing
/// <<chi,psi>> = conj(chi_0) psi_1 + conj(chi_1) psi_0 makes tau(f) skew.
inline DemoR01Report demo_r01() {
  DemoR01Report rep;
  const cplx iu{0.0, 1.0};
  // basis e0 (even), e1 (odd); tau(f) e1 = e0, tau(f) e0 = 0.
  auto tauf = [](std::array<cplx, 2> v) { return std::array<cplx, 2>{v[1], cplx{}}; };
  auto pair_std = [&](std::array<cplx, 2> x, std::array<cplx, 2> y, cplx d0, cplx d1) {
    return std::conj(x[0]) * y[0] * d0 + std::conj(x[1]) * y[1] * (iu * d1);
  };
  // Skewness for odd tau(f): <<tau f x, y>> + (-1)^{|x|} <<x, tau f y>> = 0.
  // With x = e1, y = e0: <<e0, e0>> - 0 = d0, so d0 = 0; but SHS demands
  // <e0,e0> = d0 > 0. Record the contradiction numerically.
  {
    std::array<cplx, 2> e0{1.0, 0.0}, e1{0.0, 1.0};
    cplx d0{1.0}, d1{1.0};  // any admissible standard choice has d0 != 0
    cplx residual = pair_std(tauf(e1), e0, d0, d1) - pair_std(e1, tauf(e0), d0, d1);
    rep.standard_shs_consistent = std::abs(residual) < 1e-12;
    rep.inconsistency =
        "skewness of tau(f) forces <<e0,e0>> = 0, contradicting positivity of <e0,e0>";
  }
  // Odd pairing route.
  auto pair_odd = [](std::array<cplx, 2> x, std::array<cplx, 2> y) {
    return std::conj(x[0]) * y[1] + std::conj(x[1]) * y[0];
  };
  {
    std::array<cplx, 2> basis[2] = {{cplx{1.0}, cplx{}}, {cplx{}, cplx{1.0}}};
    double worst = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double sign = (i == 1) ? -1.0 : 1.0;  // (-1)^{|x|}, e0 even, e1 odd
        cplx r = pair_odd(tauf(basis[i]), basis[j]) + sign * pair_odd(basis[i], tauf(basis[j]));
        worst = std::max(worst, std::abs(r));
      }
    rep.odd_pairing_skew_residual = worst;
  }
  {
    std::array<cplx, 2> v{0.7, -1.3};
    auto ttv = tauf(tauf(v));
    rep.tau_square_residual = std::max(std::abs(ttv[0]), std::abs(ttv[1]));
  }
  return rep;
}

}  // namespace superheis

#endif  // SUPERHEIS_FAMILIES_HPP

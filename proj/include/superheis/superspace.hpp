#ifndef SUPERHEIS_SUPERSPACE_HPP
#define SUPERHEIS_SUPERSPACE_HPP

#include <cmath>
#include <string>
#include <vector>

#include "superheis/gaussfun.hpp"

namespace superheis {

/// Subset of a spec's odd variables, as a small bitmask (bit v = odd var v).
using oddsub = unsigned;

/// One term sign * conj(chi_I) psi_J of a displayed component pairing.
struct PairingTerm {
  oddsub chi;
  oddsub psi;
  double sign;
};

/// Shape of one family's graded Hilbert space at test-vector level:
/// p even variables, q odd variables (as generators of the shared pool),
/// and the component formula of the super scalar product. The ordinary
/// scalar product is always the diagonal sum over components.
struct SuperHilbertSpec {
  PoolPtr pool;
  int p = 0;
  int q = 0;
  std::array<int, 2> odd_gen{-1, -1};  // pool indices of the odd variables
  std::vector<PairingTerm> super_pairing;

  int component_parity(oddsub s) const { return std::popcount(s) % 2; }

  genmask odd_mask() const {
    genmask m = 0;
    for (int v = 0; v < q; ++v) m |= genmask{1} << odd_gen[v];
    return m;
  }

  /// Grassmann monomial for a component subset, ascending order.
  GrassmannElement monomial(oddsub s) const {
    genmask m = 0;
    for (int v = 0; v < q; ++v)
      if (s & (oddsub{1} << v)) m |= genmask{1} << odd_gen[v];
    return GrassmannElement::monomial(pool, m, 1.0);
  }

  bool operator==(const SuperHilbertSpec& o) const {
    return pool == o.pool && p == o.p && q == o.q && odd_gen == o.odd_gen;
  }
};

/// Element of C^inf(R^{0|q}; L^2(R^p)) restricted to the PolyGauss class:
/// a map from odd-variable subsets to even-variable coefficient functions.
class SuperFunction {
public:
  explicit SuperFunction(SuperHilbertSpec spec) : spec_(std::move(spec)) {}

  const SuperHilbertSpec& spec() const { return spec_; }
  const std::map<oddsub, PolyGauss>& components() const { return comps_; }

  void set_component(oddsub s, PolyGauss f) {
    if (s >= (oddsub{1} << spec_.q))
      throw std::invalid_argument("SuperFunction: component outside odd-variable set");
    if (f.nvars() != spec_.p)
      throw std::invalid_argument("SuperFunction: wrong even-variable count");
    if (f.is_zero())
      comps_.erase(s);
    else
      comps_.insert_or_assign(s, std::move(f));
  }

  PolyGauss component(oddsub s) const {
    auto it = comps_.find(s);
    return it == comps_.end() ? PolyGauss::zero(spec_.pool, spec_.p) : it->second;
  }

  SuperFunction& operator+=(const SuperFunction& o) {
    check_spec(o);
    for (auto& [s, f] : o.comps_) set_component(s, component(s) + f);
    return *this;
  }
  SuperFunction& operator-=(const SuperFunction& o) {
    check_spec(o);
    for (auto& [s, f] : o.comps_) set_component(s, component(s) - f);
    return *this;
  }
  friend SuperFunction operator+(SuperFunction a, const SuperFunction& b) { return a += b; }
  friend SuperFunction operator-(SuperFunction a, const SuperFunction& b) { return a -= b; }
  friend SuperFunction operator*(SuperFunction a, cplx s) {
    for (auto& [k, f] : a.comps_) f = f * s;
    return a;
  }

  /// Single PolyGauss with the odd variables folded into the Grassmann
  /// coefficients: sum_I xi^I . comp_I (monomial to the left).
  PolyGauss to_total() const {
    PolyGauss total = PolyGauss::zero(spec_.pool, spec_.p);
    for (auto& [s, f] : comps_) total += f.scale_left(spec_.monomial(s));
    return total;
  }

  /// Inverse of to_total: peel components off by left derivatives in
  /// ascending variable order, then drop anything still carrying odd vars.
  static SuperFunction from_total(const SuperHilbertSpec& spec, const PolyGauss& total) {
    SuperFunction r(spec);
    genmask oddm = spec.odd_mask();
    for (oddsub s = 0; s < (oddsub{1} << spec.q); ++s) {
      PolyGauss part = total;
      for (int v = 0; v < spec.q; ++v)
        if (s & (oddsub{1} << v))
          part = part.map_coefficients(
              [&](const GrassmannElement& c) { return left_coefficient(c, spec.odd_gen[v]); });
      part = part.map_coefficients([&](const GrassmannElement& c) {
        GrassmannElement kept(c.pool());
        for (auto& [m, co] : c.terms())
          if (!(m & oddm)) kept.add_term(m, co);
        return kept;
      });
      r.set_component(s, std::move(part));
    }
    return r;
  }

  /// Exact substitution: odd_shifts maps odd-variable slot -> odd shift,
  /// even_shifts maps axis -> even shift with real body.
  SuperFunction substitute(const std::map<int, GrassmannElement>& odd_shifts,
                           const std::map<int, GrassmannElement>& even_shifts) const {
    for (auto& [v, s] : odd_shifts)
      if (s.parity() == Parity::Even && !s.is_zero())
        throw std::invalid_argument("substitute: odd shift must be odd");
      else if (s.parity() == Parity::Mixed)
        throw std::invalid_argument("substitute: odd shift must be odd");
    PolyGauss total = to_total();
    for (auto& [axis, s] : even_shifts) total = total.translate(axis, s);
    for (auto& [v, s] : odd_shifts) {
      if (v < 0 || v >= spec_.q) throw std::invalid_argument("substitute: bad odd slot");
      int gen = spec_.odd_gen[v];
      GrassmannElement repl = GrassmannElement::generator(spec_.pool, gen) + s;
      total = total.map_coefficients(
          [&](const GrassmannElement& c) { return superheis::substitute(c, gen, repl); });
    }
    return from_total(spec_, total);
  }

  void check_spec(const SuperFunction& o) const {
    if (!(spec_ == o.spec_)) throw std::invalid_argument("SuperFunction: spec mismatch");
  }

private:
  SuperHilbertSpec spec_;
  std::map<oddsub, PolyGauss> comps_;
};

/// Componentwise scalar product sum_I <chi_I, psi_I>.
inline GrassmannElement inner_product(const SuperFunction& chi, const SuperFunction& psi) {
  chi.check_spec(psi);
  GrassmannElement total(chi.spec().pool);
  for (oddsub s = 0; s < (oddsub{1} << chi.spec().q); ++s) {
    PolyGauss a = chi.component(s), b = psi.component(s);
    if (a.is_zero() || b.is_zero()) continue;
    total += l2_pair(a, b);
  }
  return total;
}

/// Super scalar product via the Berezin-Lebesgue route: Berezin integral of
/// conj(chi) psi over the odd variables, then the even-variable integral.
inline GrassmannElement super_inner_product(const SuperFunction& chi, const SuperFunction& psi) {
  chi.check_spec(psi);
  const SuperHilbertSpec& spec = chi.spec();
  PolyGauss prod = chi.to_total().conjugated() * psi.to_total();
  genmask oddm = spec.odd_mask();
  PolyGauss reduced = prod.map_coefficients(
      [&](const GrassmannElement& c) { return berezin_integral(c, oddm); });
  return reduced.integrate_all();
}

/// The family's displayed component formula for the super scalar product;
/// independent route used to cross-check the Berezin realization.
inline GrassmannElement super_inner_product_components(const SuperFunction& chi,
                                                       const SuperFunction& psi) {
  chi.check_spec(psi);
  GrassmannElement total(chi.spec().pool);
  for (auto& term : chi.spec().super_pairing) {
    PolyGauss a = chi.component(term.chi), b = psi.component(term.psi);
    if (a.is_zero() || b.is_zero()) continue;
    total += l2_pair(a, b) * cplx{term.sign};
  }
  return total;
}

inline double norm(const SuperFunction& psi) {
  return std::sqrt(std::max(0.0, inner_product(psi, psi).body().real()));
}

/// Sup-style residual metric: max Grassmann-coefficient magnitude over the
/// components evaluated on a fixed grid of even sample points.
inline double sup_residual(const SuperFunction& f) {
  static const std::vector<std::array<double, 2>> grid = {
      {0.0, 0.0},   {1.0, -0.5},  {-1.3, 0.8}, {0.45, 1.7},
      {-2.1, -1.2}, {0.75, 0.3},  {1.9, -1.9}, {-0.6, 2.2}};
  double m = 0.0;
  for (auto& [s, g] : f.components())
    for (auto& x : grid) m = std::max(m, g.evaluate(x).max_abs());
  return m;
}

struct ShsReport {
  double shs1_residual = 0.0;       // <H_0, H_1> cross terms
  double shs2_residual = 0.0;       // <<x,y>> - i^{|x|} <x,y>
  bool shs2_holds = false;
  double boundedness_constant = 0.0;  // max |body<<chi,psi>>| / (|chi| |psi|)
  bool boundedness_holds = false;
};

/// Standard vs modified super-Hilbert conditions, checked on a suite of
/// parameter-free homogeneous test vectors.
inline ShsReport check_shs_conditions(const std::vector<SuperFunction>& vectors,
                                      double tol = 1e-9) {
  ShsReport rep;
  const cplx iu{0.0, 1.0};
  for (auto& chi : vectors)
    for (auto& psi : vectors) {
      // homogeneous pieces of chi and psi
      for (int pc = 0; pc < 2; ++pc)
        for (int pp = 0; pp < 2; ++pp) {
          SuperFunction hc(chi.spec()), hp(psi.spec());
          for (auto& [s, f] : chi.components())
            if (chi.spec().component_parity(s) == pc) hc.set_component(s, f);
          for (auto& [s, f] : psi.components())
            if (psi.spec().component_parity(s) == pp) hp.set_component(s, f);
          if (hc.components().empty() || hp.components().empty()) continue;
          GrassmannElement ip = inner_product(hc, hp);
          GrassmannElement sip = super_inner_product(hc, hp);
          if (pc != pp) rep.shs1_residual = std::max(rep.shs1_residual, ip.max_abs());
          cplx phase = (pc == 0) ? cplx{1.0} : iu;
          rep.shs2_residual = std::max(rep.shs2_residual, (sip - ip * phase).max_abs());
          double nn = norm(hc) * norm(hp);
          if (nn > 1e-12)
            rep.boundedness_constant =
                std::max(rep.boundedness_constant, std::abs(sip.body()) / nn);
        }
    }
  rep.shs2_holds = rep.shs2_residual <= tol;
  rep.boundedness_holds = rep.boundedness_constant <= 1.0 + 1e-10;
  return rep;
}

}  // namespace superheis

#endif  // SUPERHEIS_SUPERSPACE_HPP

#ifndef SUPERHEIS_GAUSSFUN_HPP
#define SUPERHEIS_GAUSSFUN_HPP

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "superheis/grassmann.hpp"

namespace superheis {

/// Closed-form Gaussian moment: integral over the real line of
/// x^n exp(-S x^2/2 + T x), via the two-term recurrence
/// m_0 = 1, m_1 = T/S, m_n = (T/S) m_{n-1} + ((n-1)/S) m_{n-2},
/// scaled by sqrt(2 pi / S) exp(T^2 / 2S).
inline cplx gauss_moment(int n, cplx S, cplx T) {
  if (S.real() <= 0.0)
    throw std::domain_error("gauss_moment: Re S must be positive");
  if (n < 0) throw std::invalid_argument("gauss_moment: negative degree");
  cplx base = std::sqrt(2.0 * std::numbers::pi / S) * std::exp(T * T / (2.0 * S));
  cplx m_prev = 1.0, m = T / S;
  if (n == 0) return base;
  for (int j = 2; j <= n; ++j) {
    cplx m_next = (T / S) * m + (static_cast<double>(j - 1) / S) * m_prev;
    m_prev = m;
    m = m_next;
  }
  return base * m;
}

/// Test function of 0, 1 or 2 even variables: a sum of terms, each a
/// Grassmann-coefficient polynomial times exp(q0 x^2 + l0 x + q1 y^2 + l1 y).
/// Exponent coefficients are plain complex numbers; all nilpotent exponent
/// content is expanded into the polynomial prefactor at construction.
class PolyGauss {
public:
  using Degrees = std::array<int, 2>;

  struct Term {
    std::map<Degrees, GrassmannElement> poly;
    std::array<cplx, 2> quad{cplx{}, cplx{}};
    std::array<cplx, 2> lin{cplx{}, cplx{}};
  };

  PolyGauss(PoolPtr pool, int nvars) : pool_(std::move(pool)), nvars_(nvars) {
    if (nvars_ < 0 || nvars_ > 2)
      throw std::invalid_argument("PolyGauss: nvars must be 0, 1 or 2");
  }

  static PolyGauss zero(PoolPtr pool, int nvars) { return PolyGauss(std::move(pool), nvars); }

  static PolyGauss constant(PoolPtr pool, int nvars, GrassmannElement c) {
    PolyGauss f(pool, nvars);
    if (!c.is_zero()) {
      Term t;
      t.poly.emplace(Degrees{0, 0}, std::move(c));
      f.terms_.push_back(std::move(t));
    }
    return f;
  }

  static PolyGauss constant(PoolPtr pool, int nvars, cplx c) {
    return constant(pool, nvars, GrassmannElement::scalar(pool, c));
  }

  /// c * x_axis^deg * exp(quad x_axis^2 + lin x_axis)
  static PolyGauss monomial_gauss(PoolPtr pool, int nvars, int axis, int deg,
                                  GrassmannElement c, cplx quad, cplx lin) {
    PolyGauss f(pool, nvars);
    f.check_axis(axis);
    Term t;
    Degrees d{0, 0};
    d[axis] = deg;
    t.poly.emplace(d, std::move(c));
    t.quad[axis] = quad;
    t.lin[axis] = lin;
    f.terms_.push_back(std::move(t));
    return f;
  }

  /// exp(c * x_axis) for even c: the body goes into the exponent, the
  /// nilpotent soul is expanded as a finite polynomial series.
  static PolyGauss exp_linear(PoolPtr pool, int nvars, int axis, const GrassmannElement& c) {
    PolyGauss f(pool, nvars);
    f.check_axis(axis);
    if (c.parity() == Parity::Odd || c.parity() == Parity::Mixed)
      throw std::invalid_argument("exp_linear: exponent coefficient must be even");
    GrassmannElement s = c.soul();
    Term t;
    t.lin[axis] = c.body();
    GrassmannElement pow = GrassmannElement::scalar(pool, 1.0);
    double fact = 1.0;
    t.poly.emplace(Degrees{0, 0}, pow);
    for (int k = 1; k <= pool->size(); ++k) {
      pow = pow * s;
      if (pow.is_zero()) break;
      fact *= k;
      Degrees d{0, 0};
      d[axis] = k;
      t.poly.emplace(d, pow * cplx{1.0 / fact});
    }
    f.terms_.push_back(std::move(t));
    return f;
  }

  const PoolPtr& pool() const { return pool_; }
  int nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  PolyGauss& operator+=(const PolyGauss& o) {
    check_compat(o);
    for (auto& t : o.terms_) terms_.push_back(t);
    merge_terms();
    return *this;
  }
  PolyGauss& operator-=(const PolyGauss& o) { return *this += o * cplx{-1.0}; }

  friend PolyGauss operator+(PolyGauss a, const PolyGauss& b) { return a += b; }
  friend PolyGauss operator-(PolyGauss a, const PolyGauss& b) { return a -= b; }

  friend PolyGauss operator*(PolyGauss f, cplx s) {
    for (auto& t : f.terms_)
      for (auto& [d, c] : t.poly) c *= s;
    f.prune();
    return f;
  }
  friend PolyGauss operator*(cplx s, PolyGauss f) { return std::move(f) * s; }

  /// Grassmann scalar acting from the left / right of every coefficient.
  PolyGauss scale_left(const GrassmannElement& g) const {
    PolyGauss r(*this);
    for (auto& t : r.terms_)
      for (auto& [d, c] : t.poly) c = g * c;
    r.prune();
    return r;
  }
  PolyGauss scale_right(const GrassmannElement& g) const {
    PolyGauss r(*this);
    for (auto& t : r.terms_)
      for (auto& [d, c] : t.poly) c = c * g;
    r.prune();
    return r;
  }

  /// Pointwise product; f's coefficients stay left of g's.
  friend PolyGauss operator*(const PolyGauss& f, const PolyGauss& g) {
    f.check_compat(g);
    PolyGauss r(f.pool_, f.nvars_);
    for (auto& tf : f.terms_)
      for (auto& tg : g.terms_) {
        Term t;
        for (int v = 0; v < 2; ++v) {
          t.quad[v] = tf.quad[v] + tg.quad[v];
          t.lin[v] = tf.lin[v] + tg.lin[v];
        }
        for (auto& [df, cf] : tf.poly)
          for (auto& [dg, cg] : tg.poly) {
            GrassmannElement c = cf * cg;
            if (c.is_zero()) continue;
            Degrees d{df[0] + dg[0], df[1] + dg[1]};
            auto it = t.poly.find(d);
            if (it == t.poly.end())
              t.poly.emplace(d, std::move(c));
            else
              it->second += c;
          }
        if (!t.poly.empty()) r.terms_.push_back(std::move(t));
      }
    r.merge_terms();
    return r;
  }

  /// Exact d/dx_axis (product rule on polynomial and exponent).
  PolyGauss differentiate(int axis) const {
    check_axis(axis);
    PolyGauss r(pool_, nvars_);
    for (auto& t : terms_) {
      Term dt;
      dt.quad = t.quad;
      dt.lin = t.lin;
      for (auto& [d, c] : t.poly) {
        if (d[axis] > 0) {
          Degrees dd = d;
          dd[axis] -= 1;
          add_into(dt.poly, dd, c * cplx{static_cast<double>(d[axis])});
        }
        if (t.quad[axis] != cplx{}) {
          Degrees dd = d;
          dd[axis] += 1;
          add_into(dt.poly, dd, c * (2.0 * t.quad[axis]));
        }
        if (t.lin[axis] != cplx{}) add_into(dt.poly, d, c * t.lin[axis]);
      }
      if (!dt.poly.empty()) r.terms_.push_back(std::move(dt));
    }
    r.merge_terms();
    return r;
  }

  /// Substitution x_axis -> x_axis + shift for an even shift with real body.
  /// The body moves the Gaussian center exactly; the even nilpotent soul is
  /// applied through a finite Taylor series (exact by nilpotency).
  PolyGauss translate(int axis, const GrassmannElement& shift) const {
    check_axis(axis);
    Parity p = shift.parity();
    if (p == Parity::Odd || p == Parity::Mixed)
      throw std::invalid_argument("translate: shift must be even");
    if (std::abs(shift.body().imag()) > 1e-12)
      throw std::invalid_argument("translate: shift body must be real");
    double s = shift.body().real();
    GrassmannElement soul = shift.soul();

    PolyGauss shifted(pool_, nvars_);
    for (auto& t : terms_) {
      Term nt;
      nt.quad = t.quad;
      nt.lin = t.lin;
      // exponent: q (x+s)^2 + l (x+s) = q x^2 + (2qs + l) x + (q s^2 + l s)
      nt.lin[axis] = t.lin[axis] + 2.0 * t.quad[axis] * s;
      cplx expconst = t.quad[axis] * s * s + t.lin[axis] * s;
      cplx scale = std::exp(expconst);
      for (auto& [d, c] : t.poly) {
        // (x+s)^n binomial expansion
        int n = d[axis];
        double binom = 1.0, spow = 1.0;
        for (int j = n; j >= 0; --j) {
          Degrees dd = d;
          dd[axis] = j;
          add_into(nt.poly, dd, c * (scale * binom * spow));
          binom *= static_cast<double>(j) / static_cast<double>(n - j + 1);
          spow *= s;
        }
      }
      if (!nt.poly.empty()) shifted.terms_.push_back(std::move(nt));
    }
    shifted.merge_terms();

    if (soul.is_zero()) return shifted;
    // Taylor in the nilpotent part: sum_k soul^k/k! d^k/dx^k
    PolyGauss result = shifted;
    PolyGauss deriv = shifted;
    GrassmannElement pow = GrassmannElement::scalar(pool_, 1.0);
    double fact = 1.0;
    for (int k = 1; k <= pool_->size(); ++k) {
      pow = pow * soul;
      if (pow.is_zero()) break;
      fact *= k;
      deriv = deriv.differentiate(axis);
      result += deriv.scale_left(pow * cplx{1.0 / fact});
    }
    return result;
  }

  /// Complex conjugation of coefficients and exponents (the Grassmann
  /// coefficients use the naive convention: monomials fixed).
  PolyGauss conjugated() const {
    PolyGauss r(pool_, nvars_);
    for (auto& t : terms_) {
      Term nt;
      for (int v = 0; v < 2; ++v) {
        nt.quad[v] = std::conj(t.quad[v]);
        nt.lin[v] = std::conj(t.lin[v]);
      }
      for (auto& [d, c] : t.poly) nt.poly.emplace(d, conj(c));
      r.terms_.push_back(std::move(nt));
    }
    return r;
  }

  /// Exact integral over all even variables; requires each term's quadratic
  /// exponent to have negative real part in every variable.
  GrassmannElement integrate_all() const {
    GrassmannElement total(pool_);
    for (auto& t : terms_) {
      for (int v = 0; v < nvars_; ++v)
        if (t.quad[v].real() >= 0.0)
          throw std::domain_error("PolyGauss: non-integrable exponent");
      for (auto& [d, c] : t.poly) {
        cplx w{1.0, 0.0};
        for (int v = 0; v < nvars_; ++v)
          w *= gauss_moment(d[v], -2.0 * t.quad[v], t.lin[v]);
        total += c * w;
      }
    }
    return total;
  }

  /// Pointwise evaluation; result is a Grassmann element.
  GrassmannElement evaluate(std::array<double, 2> x) const {
    GrassmannElement total(pool_);
    for (auto& t : terms_) {
      cplx e{0.0, 0.0};
      for (int v = 0; v < nvars_; ++v) e += t.quad[v] * x[v] * x[v] + t.lin[v] * x[v];
      cplx w = std::exp(e);
      for (auto& [d, c] : t.poly) {
        cplx mono = w;
        for (int v = 0; v < nvars_; ++v)
          for (int j = 0; j < d[v]; ++j) mono *= x[v];
        total += c * mono;
      }
    }
    return total;
  }

  /// Per-coefficient Grassmann map (must be linear), e.g. a Berezin integral
  /// or derivative over odd variables living inside the coefficients.
  template <typename F>
  PolyGauss map_coefficients(F&& f) const {
    PolyGauss r(pool_, nvars_);
    for (auto& t : terms_) {
      Term nt;
      nt.quad = t.quad;
      nt.lin = t.lin;
      for (auto& [d, c] : t.poly) {
        GrassmannElement nc = f(c);
        if (!nc.is_zero()) nt.poly.emplace(d, std::move(nc));
      }
      if (!nt.poly.empty()) r.terms_.push_back(std::move(nt));
    }
    return r;
  }

private:
  static void add_into(std::map<Degrees, GrassmannElement>& poly, Degrees d,
                       GrassmannElement c) {
    if (c.is_zero()) return;
    auto it = poly.find(d);
    if (it == poly.end())
      poly.emplace(d, std::move(c));
    else
      it->second += c;
  }

  void check_axis(int axis) const {
    if (axis < 0 || axis >= nvars_)
      throw std::invalid_argument("PolyGauss: axis out of range");
  }
  void check_compat(const PolyGauss& o) const {
    if (pool_ != o.pool_ || nvars_ != o.nvars_)
      throw std::invalid_argument("PolyGauss: incompatible operands");
  }

  // Merge terms with (numerically) identical exponents and drop empty ones.
  void merge_terms() {
    constexpr double tol = 1e-11;
    std::vector<Term> merged;
    for (auto& t : terms_) {
      bool done = false;
      for (auto& m : merged) {
        bool same = true;
        for (int v = 0; v < 2 && same; ++v)
          same = std::abs(m.quad[v] - t.quad[v]) <= tol && std::abs(m.lin[v] - t.lin[v]) <= tol;
        if (same) {
          for (auto& [d, c] : t.poly) add_into(m.poly, d, c);
          done = true;
          break;
        }
      }
      if (!done) merged.push_back(std::move(t));
    }
    terms_ = std::move(merged);
    prune();
  }

  void prune() {
    for (auto& t : terms_)
      for (auto it = t.poly.begin(); it != t.poly.end();)
        it = it->second.is_zero() ? t.poly.erase(it) : std::next(it);
    std::erase_if(terms_, [](const Term& t) { return t.poly.empty(); });
  }

  PoolPtr pool_;
  int nvars_;
  std::vector<Term> terms_;
};

/// Scalar product integral of conj(f) * g over all even variables.
inline GrassmannElement l2_pair(const PolyGauss& f, const PolyGauss& g) {
  return (f.conjugated() * g).integrate_all();
}

}  // namespace superheis

#endif  // SUPERHEIS_GAUSSFUN_HPP

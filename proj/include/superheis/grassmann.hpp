#ifndef SUPERHEIS_GRASSMANN_HPP
#define SUPERHEIS_GRASSMANN_HPP

#include <algorithm>
#include <bit>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace superheis {

using cplx = std::complex<double>;
using genmask = std::uint32_t;

inline constexpr double kPruneTol = 1e-15;

enum class GenRole { Parameter, Coordinate, Variable, Auxiliary };

enum class Parity { Even, Odd, Mixed };

/// Fixed, ordered set of anticommuting generators. Canonical order is the
/// construction order and never changes afterwards.
class GeneratorPool {
public:
  GeneratorPool(std::vector<std::pair<std::string, GenRole>> gens) {
    if (gens.size() > 32)
      throw std::invalid_argument("GeneratorPool: at most 32 generators");
    for (auto& [name, role] : gens) {
      if (index_.count(name))
        throw std::invalid_argument("GeneratorPool: duplicate generator '" + name + "'");
      index_[name] = static_cast<int>(names_.size());
      names_.push_back(name);
      roles_.push_back(role);
    }
  }

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_.at(i); }
  GenRole role(int i) const { return roles_.at(i); }
  int index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end())
      throw std::invalid_argument("GeneratorPool: unknown generator '" + name + "'");
    return it->second;
  }
  bool contains(const std::string& name) const { return index_.count(name) != 0; }

private:
  std::vector<std::string> names_;
  std::vector<GenRole> roles_;
  std::map<std::string, int> index_;
};

using PoolPtr = std::shared_ptr<const GeneratorPool>;

/// Element of the complex Grassmann algebra over a GeneratorPool, stored as a
/// sparse map monomial-bitmask -> coefficient. Monomials are kept in ascending
/// canonical generator order; all sign bookkeeping happens at merge time.
class GrassmannElement {
public:
  explicit GrassmannElement(PoolPtr pool) : pool_(std::move(pool)) {
    if (!pool_) throw std::invalid_argument("GrassmannElement: null pool");
  }

  static GrassmannElement scalar(PoolPtr pool, cplx c) {
    GrassmannElement e(std::move(pool));
    e.set(0u, c);
    return e;
  }

  static GrassmannElement generator(PoolPtr pool, int i) {
    if (i < 0 || i >= pool->size())
      throw std::invalid_argument("GrassmannElement: generator index out of range");
    GrassmannElement e(std::move(pool));
    e.set(genmask{1} << i, cplx{1.0, 0.0});
    return e;
  }

  static GrassmannElement monomial(PoolPtr pool, genmask m, cplx c) {
    GrassmannElement e(std::move(pool));
    e.set(m, c);
    return e;
  }

  const PoolPtr& pool() const { return pool_; }
  const std::map<genmask, cplx>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }

  cplx coeff(genmask m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? cplx{} : it->second;
  }

  cplx body() const { return coeff(0u); }

  GrassmannElement soul() const {
    GrassmannElement s(*this);
    s.terms_.erase(0u);
    return s;
  }

  double max_abs() const {
    double m = 0.0;
    for (auto& [mask, c] : terms_) m = std::max(m, std::abs(c));
    return m;
  }

  Parity parity() const {
    if (terms_.empty()) return Parity::Even;
    bool even = false, odd = false;
    for (auto& [mask, c] : terms_)
      (std::popcount(mask) % 2 == 0 ? even : odd) = true;
    if (even && odd) return Parity::Mixed;
    return odd ? Parity::Odd : Parity::Even;
  }

  void set(genmask m, cplx c) {
    if (std::abs(c) < kPruneTol)
      terms_.erase(m);
    else
      terms_[m] = c;
  }

  void add_term(genmask m, cplx c) { set(m, coeff(m) + c); }

  GrassmannElement& operator+=(const GrassmannElement& o) {
    check_pool(o);
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  GrassmannElement& operator-=(const GrassmannElement& o) {
    check_pool(o);
    for (auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  GrassmannElement& operator*=(cplx s) {
    if (std::abs(s) < kPruneTol) {
      terms_.clear();
      return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
      it->second *= s;
      if (std::abs(it->second) < kPruneTol)
        it = terms_.erase(it);
      else
        ++it;
    }
    return *this;
  }

  friend GrassmannElement operator+(GrassmannElement a, const GrassmannElement& b) { return a += b; }
  friend GrassmannElement operator-(GrassmannElement a, const GrassmannElement& b) { return a -= b; }
  friend GrassmannElement operator*(GrassmannElement a, cplx s) { return a *= s; }
  friend GrassmannElement operator*(cplx s, GrassmannElement a) { return a *= s; }
  friend GrassmannElement operator-(GrassmannElement a) { return a *= cplx{-1.0}; }

  // Sign of concatenating two disjoint ascending monomials: parity of the
  // number of generator transpositions needed to re-sort a.b ascending.
  static int merge_sign(genmask a, genmask b) {
    int swaps = 0;
    for (genmask bb = b; bb; bb &= bb - 1) {
      int j = std::countr_zero(bb);
      swaps += std::popcount(a >> (j + 1));
    }
    return (swaps % 2 == 0) ? 1 : -1;
  }

  friend GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b) {
    a.check_pool(b);
    GrassmannElement r(a.pool_);
    for (auto& [ma, ca] : a.terms_)
      for (auto& [mb, cb] : b.terms_) {
        if (ma & mb) continue;  // repeated generator
        r.add_term(ma | mb, static_cast<double>(merge_sign(ma, mb)) * ca * cb);
      }
    return r;
  }

  void check_pool(const GrassmannElement& o) const {
    if (pool_ != o.pool_)
      throw std::invalid_argument("GrassmannElement: pool mismatch");
  }

private:
  PoolPtr pool_;
  std::map<genmask, cplx> terms_;
};

inline GrassmannElement conj(const GrassmannElement& a) {
  GrassmannElement r(a.pool());
  for (auto& [m, c] : a.terms()) r.set(m, std::conj(c));
  return r;
}

/// exp(body) times the finite series over the nilpotent soul.
inline GrassmannElement exp(const GrassmannElement& a) {
  cplx eb = std::exp(a.body());
  GrassmannElement s = a.soul();
  GrassmannElement acc = GrassmannElement::scalar(a.pool(), 1.0);
  GrassmannElement pow = GrassmannElement::scalar(a.pool(), 1.0);
  double fact = 1.0;
  for (int k = 1; k <= a.pool()->size(); ++k) {
    pow = pow * s;
    if (pow.is_zero()) break;
    fact *= k;
    acc += pow * cplx{1.0 / fact};
  }
  return acc * eb;
}

/// Left derivative with respect to one generator: the sign moves the
/// generator leftmost past the preceding (lower-index) ones.
inline GrassmannElement left_coefficient(const GrassmannElement& a, int gen) {
  if (gen < 0 || gen >= a.pool()->size())
    throw std::invalid_argument("left_coefficient: unknown generator");
  genmask bit = genmask{1} << gen;
  GrassmannElement r(a.pool());
  for (auto& [m, c] : a.terms()) {
    if (!(m & bit)) continue;
    int below = std::popcount(m & (bit - 1));
    r.add_term(m & ~bit, (below % 2 == 0 ? 1.0 : -1.0) * c);
  }
  return r;
}

inline GrassmannElement left_coefficient(const GrassmannElement& a, const std::string& gen) {
  return left_coefficient(a, a.pool()->index(gen));
}

/// Berezin integral over an ordered generator subset, normalized so the
/// ascending-canonical-order product of `gens` integrates to +1.
inline GrassmannElement berezin_integral(const GrassmannElement& a, genmask gens) {
  GrassmannElement r(a.pool());
  for (auto& [m, c] : a.terms()) {
    if ((m & gens) != gens) continue;  // some integration variable absent
    genmask rest = m & ~gens;
    // unshuffle the full ascending monomial into (gens asc).(rest asc)
    int swaps = 0;
    for (genmask gg = gens; gg; gg &= gg - 1) {
      int g = std::countr_zero(gg);
      swaps += std::popcount(rest & ((genmask{1} << g) - 1));
    }
    r.add_term(rest, (swaps % 2 == 0 ? 1.0 : -1.0) * c);
  }
  return r;
}

inline GrassmannElement berezin_integral(const GrassmannElement& a,
                                         const std::vector<std::string>& gens) {
  genmask m = 0;
  for (auto& g : gens) m |= genmask{1} << a.pool()->index(g);
  return berezin_integral(a, m);
}

/// Substitution gen -> replacement. Generators appear at most linearly, so
/// a = A + gen.B with B the left derivative, and the result is A + r.B.
inline GrassmannElement substitute(const GrassmannElement& a, int gen,
                                   const GrassmannElement& replacement) {
  GrassmannElement b = left_coefficient(a, gen);
  if (b.is_zero()) return a;
  GrassmannElement g = GrassmannElement::generator(a.pool(), gen);
  return (a - g * b) + replacement * b;
}

}  // namespace superheis

#endif  // SUPERHEIS_GRASSMANN_HPP

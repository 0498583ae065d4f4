#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <numbers>
#include <random>

#include "superheis/gaussfun.hpp"

using namespace superheis;

namespace {

PoolPtr test_pool() {
  return std::make_shared<GeneratorPool>(std::vector<std::pair<std::string, GenRole>>{
      {"k1", GenRole::Parameter}, {"k2", GenRole::Parameter}});
}

// Adaptive Simpson quadrature, the independent oracle for gauss_moment and
// the pairings. Integrates over [-L, L] with L large enough for the decay.
cplx simpson(const std::function<cplx(double)>& f, double a, double b, cplx fa, cplx fb,
             cplx fm, double eps, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  cplx flm = f(lm), frm = f(rm);
  cplx whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  cplx left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  cplx right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * eps)
    return left + right + (left + right - whole) / 15.0;
  eps = std::max(eps / 2.0, 1e-15);
  return simpson(f, a, m, fa, fm, flm, eps, depth - 1) +
         simpson(f, m, b, fm, fb, frm, eps, depth - 1);
}

cplx quad(const std::function<cplx(double)>& f, double L = 15.0, double eps = 1e-12) {
  // scale the tolerance by a crude magnitude estimate so oscillatory
  // integrands with large peaks do not recurse forever
  double peak = 0.0;
  for (double x = -L; x <= L; x += L / 64.0) peak = std::max(peak, std::abs(f(x)));
  eps = std::max(eps, 1e-13 * peak);
  double m = 0.0;
  return simpson(f, -L, m, f(-L), f(m), f(0.5 * (-L + m)), eps, 22) +
         simpson(f, m, L, f(m), f(L), f(0.5 * (m + L)), eps, 22);
}

// Composite 10-point Gauss-Legendre on fine panels: robust for the
// oscillatory quadratic phases that defeat adaptive Simpson.
cplx gl10(const std::function<cplx(double)>& f, double L, double panel) {
  static const double xs[5] = {0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
                               0.8650633666889845, 0.9739065285171717};
  static const double ws[5] = {0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
                               0.1494513491505806, 0.0666713443086881};
  cplx total{};
  int n = static_cast<int>(std::ceil(2.0 * L / panel));
  for (int i = 0; i < n; ++i) {
    double a = -L + 2.0 * L * i / n, b = -L + 2.0 * L * (i + 1) / n;
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (int j = 0; j < 5; ++j)
      total += h * ws[j] * (f(c - h * xs[j]) + f(c + h * xs[j]));
  }
  return total;
}

}  // namespace

TEST_CASE("gauss_moment: closed forms") {
  CHECK(std::abs(gauss_moment(0, 1.0, 0.0) - std::sqrt(2.0 * std::numbers::pi)) <= 1e-14);
  CHECK(std::abs(gauss_moment(1, 1.0, 0.0)) <= 1e-15);
  // n=2, S=2, T=1: sqrt(pi) e^{1/4} (T^2/S^2 + 1/S) = sqrt(pi) e^{1/4} 3/4
  cplx expect = std::sqrt(std::numbers::pi) * std::exp(0.25) * 0.75;
  CHECK(std::abs(gauss_moment(2, 2.0, 1.0) - expect) <= 1e-13);
  CHECK_THROWS_AS(gauss_moment(0, cplx{-1.0, 0.0}, 0.0), std::domain_error);
}

TEST_CASE("gauss_moment agrees with adaptive quadrature") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> S_re(0.4, 5.0), other(-3.0, 3.0);
  for (int s = 0; s < 30; ++s) {
    cplx S{S_re(rng), other(rng) / 2.0};
    cplx T{other(rng), other(rng)};
    for (int n = 0; n <= 8; n += 2) {
      cplx closed = gauss_moment(n, S, T);
      cplx numeric = gl10([&](double x) {
        cplx e = -S * x * x / 2.0 + T * x;
        cplx v = std::exp(e);
        for (int j = 0; j < n; ++j) v *= x;
        return v;
      }, 45.0, 0.05);
      CHECK(std::abs(closed - numeric) <= 1e-10 * std::max(1.0, std::abs(closed)));
    }
  }
}

TEST_CASE("translate: identity and body shift") {
  auto pool = test_pool();
  auto f = PolyGauss::monomial_gauss(pool, 1, 0, 0, GrassmannElement::scalar(pool, 1.0),
                                     cplx{-0.5}, cplx{});
  auto same = f.translate(0, GrassmannElement(pool));
  CHECK(((f - same).evaluate({0.7, 0.0})).max_abs() <= 1e-15);

  auto shifted = f.translate(0, GrassmannElement::scalar(pool, 0.8));
  for (double x : {-1.0, 0.0, 0.5, 2.0}) {
    cplx got = shifted.evaluate({x, 0.0}).body();
    cplx expect = std::exp(-0.5 * (x + 0.8) * (x + 0.8));
    CHECK(std::abs(got - expect) <= 1e-14);
  }
}

TEST_CASE("translate: nilpotent shift via Taylor oracle") {
  auto pool = test_pool();
  // f = x e^{-x^2}, shift by eps = k1 k2 with eps^2 = 0:
  // f(x+eps) = f(x) + eps f'(x) = (x + eps - 2 x^2 eps) e^{-x^2}
  auto eps = GrassmannElement::monomial(pool, 0b11, 1.0);
  auto f = PolyGauss::monomial_gauss(pool, 1, 0, 1, GrassmannElement::scalar(pool, 1.0),
                                     cplx{-1.0}, cplx{});
  auto got = f.translate(0, eps);
  auto expect = f + f.differentiate(0).scale_left(eps);
  for (double x : {-1.3, 0.0, 0.4, 1.7}) {
    CHECK(((got - expect).evaluate({x, 0.0})).max_abs() <= 1e-14);
    // literal form
    cplx e = std::exp(-x * x);
    auto v = got.evaluate({x, 0.0});
    CHECK(std::abs(v.body() - x * e) <= 1e-14);
    CHECK(std::abs(v.coeff(0b11) - (1.0 - 2.0 * x * x) * e) <= 1e-14);
  }
}

TEST_CASE("translate rejects odd shifts") {
  auto pool = test_pool();
  auto f = PolyGauss::monomial_gauss(pool, 1, 0, 0, GrassmannElement::scalar(pool, 1.0),
                                     cplx{-0.5}, cplx{});
  CHECK_THROWS_AS(f.translate(0, GrassmannElement::generator(pool, 0)),
                  std::invalid_argument);
}

TEST_CASE("multiply: pointwise products") {
  auto pool = test_pool();
  auto one = PolyGauss::constant(pool, 1, cplx{1.0});
  auto f = PolyGauss::monomial_gauss(pool, 1, 0, 1, GrassmannElement::scalar(pool, 1.0),
                                     cplx{-0.5}, cplx{});
  CHECK((f * one - f).is_zero());
  auto sq = f * f;
  for (double x : {-0.7, 0.3, 1.1}) {
    cplx got = sq.evaluate({x, 0.0}).body();
    CHECK(std::abs(got - x * x * std::exp(-x * x)) <= 1e-14);
  }
}

TEST_CASE("multiply keeps Grassmann coefficient order") {
  auto pool = test_pool();
  auto k1 = GrassmannElement::generator(pool, 0);
  auto k2 = GrassmannElement::generator(pool, 1);
  const cplx iu{0.0, 1.0};
  // (1 + i k1 x)(1 + i k2 x) = 1 + i(k1 + k2) x - k1 k2 x^2
  auto a = PolyGauss::constant(pool, 1, cplx{1.0}) +
           PolyGauss::monomial_gauss(pool, 1, 0, 1, k1 * iu, cplx{}, cplx{});
  auto b = PolyGauss::constant(pool, 1, cplx{1.0}) +
           PolyGauss::monomial_gauss(pool, 1, 0, 1, k2 * iu, cplx{}, cplx{});
  auto got = a * b;
  auto expect = PolyGauss::constant(pool, 1, cplx{1.0}) +
                PolyGauss::monomial_gauss(pool, 1, 0, 1, (k1 + k2) * iu, cplx{}, cplx{}) +
                PolyGauss::monomial_gauss(pool, 1, 0, 2, k1 * k2 * cplx{-1.0}, cplx{}, cplx{});
  for (double x : {-1.0, 0.6, 2.0})
    CHECK(((got - expect).evaluate({x, 0.0})).max_abs() <= 1e-14);
}

TEST_CASE("differentiate: exact derivatives") {
  auto pool = test_pool();
  auto g = PolyGauss::monomial_gauss(pool, 1, 0, 0, GrassmannElement::scalar(pool, 1.0),
                                     cplx{-0.5}, cplx{});
  // d/dx e^{-x^2/2} = -x e^{-x^2/2}
  auto expect = PolyGauss::monomial_gauss(pool, 1, 0, 1, GrassmannElement::scalar(pool, -1.0),
                                          cplx{-0.5}, cplx{});
  for (double x : {-1.5, 0.0, 0.9})
    CHECK(((g.differentiate(0) - expect).evaluate({x, 0.0})).max_abs() <= 1e-14);

  // product rule: d/dx (x e^{-x^2/2}) = (1 - x^2) e^{-x^2/2}
  auto xg = PolyGauss::monomial_gauss(pool, 1, 0, 1, GrassmannElement::scalar(pool, 1.0),
                                      cplx{-0.5}, cplx{});
  for (double x : {-1.5, 0.0, 0.9}) {
    cplx got = xg.differentiate(0).evaluate({x, 0.0}).body();
    CHECK(std::abs(got - (1.0 - x * x) * std::exp(-0.5 * x * x)) <= 1e-14);
  }
}

TEST_CASE("differentiate vs finite differences") {
  auto pool = test_pool();
  const cplx iu{0.0, 1.0};
  // e^{-x^2/2 + i omega x}
  double omega = 1.3;
  auto f = PolyGauss::monomial_gauss(pool, 1, 0, 0, GrassmannElement::scalar(pool, 1.0),
                                     cplx{-0.5}, iu * omega);
  auto df = f.differentiate(0);
  double h = 1e-5;
  for (double x : {-1.2, -0.3, 0.0, 0.8, 1.6}) {
    cplx got = df.evaluate({x, 0.0}).body();
    cplx fd = (f.evaluate({x + h, 0.0}).body() - f.evaluate({x - h, 0.0}).body()) / (2.0 * h);
    CHECK(std::abs(got - fd) <= 1e-8);
    cplx expect = (iu * omega - x) * std::exp(-0.5 * x * x + iu * omega * x);
    CHECK(std::abs(got - expect) <= 1e-13);
  }
}

TEST_CASE("l2_pair: normalized Gaussian and parity") {
  auto pool = test_pool();
  double norm = std::pow(std::numbers::pi, -0.25);
  auto g = PolyGauss::monomial_gauss(pool, 1, 0, 0, GrassmannElement::scalar(pool, norm),
                                     cplx{-0.5}, cplx{});
  CHECK(std::abs(l2_pair(g, g).body() - 1.0) <= 1e-14);

  auto xg = PolyGauss::monomial_gauss(pool, 1, 0, 1, GrassmannElement::scalar(pool, 1.0),
                                      cplx{-0.5}, cplx{});
  auto g1 = PolyGauss::monomial_gauss(pool, 1, 0, 0, GrassmannElement::scalar(pool, 1.0),
                                      cplx{-0.5}, cplx{});
  CHECK(std::abs(l2_pair(g1, xg).body()) <= 1e-15);

  auto x2g = PolyGauss::monomial_gauss(pool, 1, 0, 2, GrassmannElement::scalar(pool, 1.0),
                                       cplx{-0.5}, cplx{});
  CHECK(std::abs(l2_pair(g1, x2g).body() - std::sqrt(std::numbers::pi) / 2.0) <= 1e-12);
}

TEST_CASE("pairing sesquilinearity") {
  auto pool = test_pool();
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  auto hermite = [&](int n) {
    return PolyGauss::monomial_gauss(pool, 1, 0, n, GrassmannElement::scalar(pool, 1.0),
                                     cplx{-0.5}, cplx{});
  };
  for (int s = 0; s < 20; ++s) {
    cplx alpha{U(rng), U(rng)};
    auto f = hermite(s % 3);
    auto g = hermite((s + 1) % 3);
    auto h = hermite((s + 2) % 3);
    auto lhs = l2_pair(f, g * alpha + h);
    auto rhs = l2_pair(f, g) * alpha + l2_pair(f, h);
    CHECK((lhs - rhs).max_abs() <= 1e-12);
    auto lhs2 = l2_pair(f * alpha, g);
    auto rhs2 = l2_pair(f, g) * std::conj(alpha);
    CHECK((lhs2 - rhs2).max_abs() <= 1e-12);
  }
}

TEST_CASE("translation and modulation invariance of the pairing") {
  auto pool = test_pool();
  const cplx iu{0.0, 1.0};
  auto f = PolyGauss::monomial_gauss(pool, 1, 0, 1, GrassmannElement::scalar(pool, 1.0),
                                     cplx{-0.5}, cplx{});
  auto g = PolyGauss::monomial_gauss(pool, 1, 0, 2, GrassmannElement::scalar(pool, 0.7),
                                     cplx{-0.5}, cplx{});
  auto base = l2_pair(f, g);
  for (double c : {-1.1, 0.4, 2.0}) {
    auto sh = GrassmannElement::scalar(pool, c);
    CHECK((l2_pair(f.translate(0, sh), g.translate(0, sh)) - base).max_abs() <= 1e-10);
  }
  for (double b : {-0.9, 1.7}) {
    auto mod = PolyGauss::monomial_gauss(pool, 1, 0, 0, GrassmannElement::scalar(pool, 1.0),
                                         cplx{}, iu * b);
    CHECK((l2_pair(mod * f, mod * g) - base).max_abs() <= 1e-10);
  }
}

TEST_CASE("integration by parts makes d/dx skew") {
  auto pool = test_pool();
  auto hermite = [&](int n) {
    return PolyGauss::monomial_gauss(pool, 1, 0, n, GrassmannElement::scalar(pool, 1.0),
                                     cplx{-0.5}, cplx{});
  };
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b) {
      auto f = hermite(a);
      auto g = hermite(b);
      auto r = l2_pair(f.differentiate(0), g) + l2_pair(f, g.differentiate(0));
      CHECK(r.max_abs() <= 1e-10);
    }
}

TEST_CASE("l2_pair vs quadrature on modulated Gaussians") {
  auto pool = test_pool();
  const cplx iu{0.0, 1.0};
  auto f = PolyGauss::monomial_gauss(pool, 1, 0, 1, GrassmannElement::scalar(pool, 1.0),
                                     cplx{-0.7}, cplx{0.2, 0.9});
  auto g = PolyGauss::monomial_gauss(pool, 1, 0, 2, GrassmannElement::scalar(pool, 0.5),
                                     cplx{-0.4}, cplx{-0.1, 0.3});
  cplx closed = l2_pair(f, g).body();
  cplx numeric = quad([&](double x) {
    cplx fv = x * std::exp(cplx{-0.7} * x * x + cplx{0.2, 0.9} * x);
    cplx gv = 0.5 * x * x * std::exp(cplx{-0.4} * x * x + cplx{-0.1, 0.3} * x);
    return std::conj(fv) * gv;
  });
  CHECK(std::abs(closed - numeric) <= 1e-10);
}

TEST_CASE("non-integrable pairing is a domain error") {
  auto pool = test_pool();
  auto grow = PolyGauss::monomial_gauss(pool, 1, 0, 0, GrassmannElement::scalar(pool, 1.0),
                                        cplx{0.5}, cplx{});
  CHECK_THROWS_AS(l2_pair(grow, grow), std::domain_error);
}

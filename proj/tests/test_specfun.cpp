#include <doctest.h>

#include <cmath>
#include <vector>

#include "koenigs/quadrature.hpp"
#include "koenigs/specfun.hpp"

using namespace koenigs;

namespace {

// independent Ei oracle by quadrature:
//   x < 0: Ei(x) = -int_{-x}^{inf} e^{-t}/t dt
//   x > 0: Ei(x) = gamma + log x + int_0^x (e^t - 1)/t dt  (regular integrand)
double ei_oracle(double x) {
  REQUIRE(x != 0.0);
  if (x < 0.0) {
    auto f = [](double t) { return std::exp(-t) / t; };
    return -integrate_adaptive(f, -x, -x + 60.0, 1e-14).value;
  }
  auto f = [](double t) { return t == 0.0 ? 1.0 : std::expm1(t) / t; };
  return euler_gamma + std::log(x) + integrate_adaptive(f, 0.0, x, 1e-14).value;
}

}  // namespace

TEST_CASE("ein: frozen values and basic behaviour") {
  CHECK(ein(0.0) == 0.0);
  CHECK(ein(1.0) == doctest::Approx(0.796599599297053134).epsilon(1e-13));
  CHECK(ein(0.8) == doctest::Approx(0.664668692132866139).epsilon(1e-13));
  CHECK_THROWS_AS(ein(31.0), std::range_error);
  CHECK_THROWS_AS(ein(std::nan("")), std::domain_error);
}

TEST_CASE("ei: frozen value, branch point, Ein relation against quadrature") {
  CHECK(ei(-1.0) == doctest::Approx(-0.219383934395520274).epsilon(1e-12));
  CHECK(ei(0.7) == doctest::Approx(1.064907194624290541).epsilon(1e-12));
  CHECK_THROWS_AS(ei(0.0), std::domain_error);

  // Ei(0.7) = gamma + log(0.7) - Ein(-0.7)
  CHECK(std::abs(ei(0.7) - (euler_gamma + std::log(0.7) - ein(-0.7))) < 1e-15);

  for (double x : {0.5, -0.5, 1.0, -1.0, 2.0, -2.0}) {
    CHECK(std::abs(ei(x) - ei_oracle(x)) < 1e-11);
  }
  // negative and decreasing on (-inf, 0)
  double prev = ei(-8.0);
  for (double x = -7.0; x < -0.2; x += 0.5) {
    const double v = ei(x);
    CHECK(v < 0.0);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("ei identity property on [-5,5]") {
  for (double x = -5.0; x <= 5.0; x += 0.25) {
    if (x == 0.0) continue;
    CHECK(std::abs(ei(x) - (euler_gamma + std::log(std::abs(x)) - ein(-x))) <= 1e-11);
  }
}

TEST_CASE("lambert_w0: branch point, zero, defining identity") {
  CHECK(lambert_w0(-std::exp(-1.0)) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(lambert_w0(0.0) == 0.0);
  CHECK(std::abs(lambert_w0(0.5) * std::exp(lambert_w0(0.5)) - 0.5) <= 1e-13);
  CHECK_THROWS_AS(lambert_w0(-0.368), std::domain_error);

  for (double y = -std::exp(-1.0); y <= 10.0; y += 0.1) {
    const double w = lambert_w0(y);
    CHECK(std::abs(w * std::exp(w) - y) <= 1e-12 * std::max(1.0, std::abs(y)));
  }
}

TEST_CASE("harmonic numbers and the harmonic-EGF identity") {
  CHECK(harmonic(1) == 1.0);
  CHECK(harmonic(3) == doctest::Approx(11.0 / 6.0).epsilon(1e-16));
  CHECK_THROWS_AS(harmonic(0), std::invalid_argument);

  // e^{-x} sum_{n<=40} H_n x^n/n! = Ein(x)
  auto egf = [](double x) {
    CompensatedSum<double> s;
    double f = 1.0;
    for (int n = 1; n <= 40; ++n) {
      f *= x / n;
      s.add(harmonic(n) * f);
    }
    return std::exp(-x) * s.value();
  };
  CHECK(std::abs(egf(0.8) - ein(0.8)) < 1e-10);
  for (double x : {0.5, -0.5, 1.0, -1.0, 2.0, -2.0}) {
    CHECK(std::abs(egf(x) - ein(x)) < 1e-10);
  }
}

TEST_CASE("factorial_poly: falling and rising products") {
  CHECK(factorial_poly(5.0, {FactorialKind::falling, 2}) == 20.0);
  CHECK(factorial_poly(3.7, {FactorialKind::falling, 0}) == 1.0);
  // [3.5]_{3 up} = Gamma(6.5)/Gamma(3.5) = 86.625
  CHECK(factorial_poly(3.5, {FactorialKind::rising, 3}) ==
        doctest::Approx(86.625).epsilon(1e-13));
  const double lg = std::exp(std::lgamma(6.5) - std::lgamma(3.5));
  CHECK(factorial_poly(3.5, {FactorialKind::rising, 3}) == doctest::Approx(lg).epsilon(1e-13));
  // at a nonpositive integer Gamma is useless but the product is fine
  CHECK(factorial_poly(0.0, {FactorialKind::falling, 3}) == 0.0);
}

TEST_CASE("bell_partial: matrix entries and edge rows") {
  const double lam = 0.5;
  const double el = std::exp(lam);
  std::vector<double> p = {lam - el, lam * lam, lam * lam * lam, lam * lam * lam * lam,
                           lam * lam * lam * lam * lam};

  // B_{4,2}(p) = 4 p1 p3 + 3 p2^2
  CHECK(bell_partial(4, 2, p) ==
        doctest::Approx(4 * p[0] * p[2] + 3 * p[1] * p[1]).epsilon(1e-14));
  // B_{5,2}(p) = 5 p1 p4 + 10 p2 p3
  CHECK(bell_partial(5, 2, p) ==
        doctest::Approx(5 * p[0] * p[3] + 10 * p[1] * p[2]).epsilon(1e-14));
  // B_{5,3}(p) = 10 p1^2 p3 + 15 p1 p2^2
  CHECK(bell_partial(5, 3, p) ==
        doctest::Approx(10 * p[0] * p[0] * p[2] + 15 * p[0] * p[1] * p[1]).epsilon(1e-14));
  // B_{n,1} = x_n, B_{n,n} = x_1^n
  CHECK(bell_partial(5, 1, p) == doctest::Approx(p[4]).epsilon(1e-15));
  CHECK(bell_partial(4, 4, p) == doctest::Approx(std::pow(p[0], 4)).epsilon(1e-14));

  CHECK_THROWS_AS(bell_partial(3, 4, p), std::invalid_argument);
  CHECK_THROWS_AS(bell_partial(0, 0, p), std::invalid_argument);
}

TEST_CASE("bell convolution over the split p = (lam, lam^2, ...) + (-e^lam, 0, ...)") {
  for (double lam : {1.0 / 3.0, 0.5, 1.0}) {
    const double el = std::exp(lam);
    const int N = 10;
    std::vector<double> p(N), x(N);
    for (int n = 1; n <= N; ++n) {
      p[n - 1] = std::pow(lam, n);
      x[n - 1] = std::pow(lam, n);
    }
    p[0] = lam - el;
    BinomialTable<double> C(N);
    for (int n = 1; n <= N; ++n) {
      for (int k = 1; k <= n; ++k) {
        // B_{n,k}(x+y) with y = (-e^lam, 0, ...): only B_{m,m}(y) = (-e^lam)^m
        double conv = 0.0;
        for (int j = 0; j <= k; ++j) {
          const int i = n - (k - j);
          if (i < j || i < 0) continue;
          const double bx = (i == 0) ? 1.0 : (j == 0 ? 0.0 : bell_partial(i, j, x));
          conv += C(n, i) * bx * std::pow(-el, k - j);
        }
        const double direct = bell_partial(n, k, p);
        CHECK(std::abs(conv - direct) <=
              1e-10 * std::max(1.0, std::abs(direct)));
      }
    }
  }
}

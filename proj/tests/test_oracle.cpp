#include <doctest.h>

#include <cmath>

#include "koenigs/koenigs.hpp"
#include "koenigs/ode.hpp"
#include "koenigs/quadrature.hpp"
#include "koenigs/residuals.hpp"

using namespace koenigs;

TEST_CASE("quadrature A/U frozen oracle values") {
  BranchingModel<double> mh(0.5, 1.0);
  CHECK(quadrature_integral(IntegralKind::A, mh, 0.5) ==
        doctest::Approx(-0.597985483785899644).epsilon(1e-12));
  CHECK(quadrature_integral(IntegralKind::A, mh, 0.0) == 0.0);
  BranchingModel<double> mt(1.0 / 3.0, 1.0);
  CHECK(quadrature_integral(IntegralKind::A, mt, 0.4) ==
        doctest::Approx(-0.482017387302213278).epsilon(1e-12));

  BranchingModel<double> mc(1.0, 1.0);
  CHECK(quadrature_integral(IntegralKind::U, mc, 0.3) ==
        doctest::Approx(1.110594506485911095).epsilon(1e-12));
  CHECK(quadrature_integral(IntegralKind::U, mc, 0.9) ==
        doctest::Approx(19.58313871271717821).epsilon(1e-12));

  CHECK_THROWS_AS(quadrature_integral(IntegralKind::A, mh, 1.0), std::domain_error);
}

TEST_CASE("quadrature U has slope e at 0 (critical)") {
  BranchingModel<double> mc(1.0, 1.0);
  const double s = 1e-5;
  const double u = quadrature_integral(IntegralKind::U, mc, s);
  CHECK(u / s == doctest::Approx(std::exp(1.0)).epsilon(1e-4));
}

TEST_CASE("logQ: frozen values, endpoints, monotone increasing") {
  BranchingModel<double> m2(2.0, 1.0);
  CHECK(supercritical_logQ(m2, 0.5) ==
        doctest::Approx(-0.956391218826459461).epsilon(1e-10));
  CHECK(supercritical_logQ(m2, 0.3) ==
        doctest::Approx(-2.263982801860653722).epsilon(1e-10));
  CHECK(supercritical_logQ(m2, 0.9) ==
        doctest::Approx(0.826357452522528647).epsilon(1e-10));

  const double q = classify(m2).q;
  CHECK(std::isinf(supercritical_logQ(m2, q)));
  CHECK(supercritical_logQ(m2, q) < 0.0);
  CHECK_THROWS_AS(supercritical_logQ(m2, 0.1), std::domain_error);
  CHECK_THROWS_AS(supercritical_logQ(m2, 1.0), std::domain_error);

  double prev = supercritical_logQ(m2, q + 0.02);
  for (double s = q + 0.07; s < 1.0 - 1e-3; s += 0.05) {
    const double v = supercritical_logQ(m2, s);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("solve_F: initial condition, fixed point, frozen references") {
  BranchingModel<double> m(0.5, 1.0);
  CHECK(solve_F(m, 0.0, 0.37).value == 0.37);
  CHECK(solve_F(m, 2.5, 1.0).value == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(solve_F(m, 1.0, 0.3).value == doctest::Approx(0.600590475023765286).epsilon(5e-11));
  CHECK(solve_F(m, 1.0, 0.0).value == doctest::Approx(0.441938572728209806).epsilon(5e-11));
  CHECK(solve_F(m, 8.0, 0.0).value == doctest::Approx(0.985078235292221631).epsilon(5e-11));

  CHECK_THROWS_AS(solve_F(m, -1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(solve_F(m, 1.0, 1.5), std::invalid_argument);
}

TEST_CASE("solve_F: semigroup property") {
  BranchingModel<double> m(0.5, 1.0);
  const double lhs = solve_F(m, 1.2, 0.7).value;
  const double rhs = solve_F(m, 0.5, solve_F(m, 0.7, 0.7).value).value;
  CHECK(std::abs(lhs - rhs) <= 1e-9);
}

TEST_CASE("solve_F: monotone in s; F(t,0) increases toward q") {
  BranchingModel<double> m(0.5, 1.0);
  double prev = -1.0;
  for (double s = 0.0; s <= 1.0; s += 0.1) {
    const double v = solve_F(m, 1.0, s).value;
    CHECK(v >= prev);
    prev = v;
  }
  // t -> F(t,0) nondecreasing, approaching q
  for (double lam : {0.5, 2.0}) {
    BranchingModel<double> mm(lam, 1.0);
    const double q = classify(mm).q;
    double prevF = 0.0;
    for (double t : {1.0, 2.0, 5.0, 10.0, 20.0}) {
      const double F = solve_F(mm, t, 0.0).value;
      CHECK(F >= prevF);
      prevF = F;
    }
    CHECK(std::abs(solve_F(mm, 20.0, 0.0).value - q) < 2e-4);
  }
}

TEST_CASE("eigenvalue: numeric dF/ds at s=1 equals M(t)") {
  BranchingModel<double> m(0.5, 1.0);
  const double h = 1e-5;
  for (double t : {0.5, 1.0, 2.0}) {
    const double d = (solve_F(m, t, 1.0).value - solve_F(m, t, 1.0 - h).value) / h;
    CHECK(std::abs(d - mean_population(m, t)) <= 1e-7);
  }
}

TEST_CASE("functional residuals: t = 0 gives identically zero") {
  BranchingModel<double> m(0.5, 1.0);
  auto B = KoenigsSolution<double>::make(Kind::B, Method::recurrence0, m, 60);
  auto rep = functional_residuals(m, B, {0.0}, {0.0, 0.3, 0.6, 0.9});
  CHECK(rep.max_abs <= 1e-14);
}

TEST_CASE("functional residuals: kind must match criticality") {
  BranchingModel<double> m(0.5, 1.0);
  auto U = KoenigsSolution<double>::make(Kind::U, Method::recip_series0, m, 40);
  CHECK_THROWS_AS(functional_residuals(m, U, {0.5}, {0.1}), std::invalid_argument);
}

TEST_CASE("near-linear regime: F(t,s) close to 1 - M + M s at lambda = 1/6") {
  BranchingModel<double> m(1.0 / 6.0, 1.0);
  double worst = 0.0;
  for (double t = 0.0; t <= 2.0; t += 0.25) {
    const double M = mean_population(m, t);
    for (double s = 0.0; s <= 1.0; s += 0.1) {
      const double F = solve_F(m, t, s).value;
      worst = std::max(worst, std::abs(F - (1.0 - M + M * s)));
    }
  }
  CHECK(worst <= 0.02);
}

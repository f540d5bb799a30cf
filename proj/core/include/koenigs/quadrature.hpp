#ifndef KOENIGS_QUADRATURE_HPP
#define KOENIGS_QUADRATURE_HPP

// Adaptive Gauss-Kronrod (G7,K15) quadrature and the defining integrals of
// the Koenigs constructions:
//   A(s)    = int_0^s (lambda-1) dx / (h(x)-x),          lambda <= 1, s < 1
//   U(s)    = int_0^s dx / (e^{x-1}-x),                  lambda  = 1, s < 1
//   logQ(s) = log(s-q) + int_q^s [f'(q)/f - 1/(x-q)] dx, lambda  > 1, q<s<1
// The logQ bracket is evaluated through the exact series of
// f'(q)(x-q) - f(x) = -K q (e^{lambda(x-q)} - 1 - lambda(x-q)) near x = q,
// and the q-end subinterval uses the x = q + u^2 substitution.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "koenigs/model.hpp"
#include "koenigs/numeric.hpp"

namespace koenigs {

struct QuadratureResult {
  double value = 0;
  double abs_error = 0;
  int segments = 0;
};

namespace gk15 {
// QUADPACK dqk15 abscissae/weights.
inline constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
inline void rule(const F& f, double a, double b, double& result, double& err) {
  const double c = 0.5 * (a + b);
  const double hl = 0.5 * (b - a);
  const double fc = f(c);
  double resg = fc * wg[3];
  double resk = fc * wgk[7];
  double fv[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = hl * xgk[j];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    fv[j] = f1 + f2;
    resk += wgk[j] * fv[j];
  }
  for (int j = 0; j < 3; ++j) resg += wg[j] * fv[2 * j + 1];
  result = resk * hl;
  err = std::abs((resk - resg) * hl);
}
}  // namespace gk15

// Globally adaptive bisection: split the segment with the largest error until
// the total satisfies max(abstol, reltol*|I|).
template <class F>
QuadratureResult integrate_adaptive(const F& f, double a, double b,
                                    double reltol = 1e-12, double abstol = 0.0,
                                    int max_segments = 4000) {
  struct Seg {
    double a, b, val, err;
  };
  std::vector<Seg> segs;
  double v, e;
  gk15::rule(f, a, b, v, e);
  segs.push_back({a, b, v, e});
  for (;;) {
    double total = 0, err = 0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      total += segs[i].val;
      err += segs[i].err;
      if (segs[i].err > segs[worst].err) worst = i;
    }
    if (err <= std::max(abstol, reltol * std::abs(total)) ||
        static_cast<int>(segs.size()) >= max_segments || segs[worst].err == 0.0) {
      CompensatedSum<double> sum;
      for (const Seg& s : segs) sum.add(s.val);
      if (err > std::max(abstol, reltol * std::abs(total)) * 16 &&
          static_cast<int>(segs.size()) >= max_segments)
        throw numerical_error("integrate_adaptive: tolerance not reached");
      return {sum.value(), err, static_cast<int>(segs.size())};
    }
    Seg s = segs[worst];
    const double m = 0.5 * (s.a + s.b);
    Seg l{s.a, m, 0, 0}, r{m, s.b, 0, 0};
    gk15::rule(f, l.a, l.b, l.val, l.err);
    gk15::rule(f, r.a, r.b, r.val, r.err);
    segs[worst] = l;
    segs.push_back(r);
  }
}

enum class IntegralKind { A, U, logQ };

// e^y - 1 - y by series for small |y| (stable where the direct form cancels).
inline double expm1m(double y) {
  if (std::abs(y) > 0.5) return std::expm1(y) - y;
  double term = y * y / 2;
  CompensatedSum<double> s;
  int k = 2;
  while (std::abs(term) > 1e-20 * std::max(1e-300, std::abs(s.value())) && k < 60) {
    s.add(term);
    ++k;
    term *= y / k;
  }
  return s.value();
}

template <class Real = double>
Real quadrature_integral(IntegralKind kind, const BranchingModel<Real>& m, Real s,
                         Real reltol = Real(1e-12)) {
  const double lam = static_cast<double>(m.lambda);
  const double K = static_cast<double>(m.big_k);
  const double sd = static_cast<double>(s);
  const double rt = static_cast<double>(reltol);

  switch (kind) {
    case IntegralKind::A: {
      if (lam > 1.0) throw std::domain_error("quadrature A: lambda must be <= 1");
      if (sd >= 1.0) throw std::domain_error("quadrature A: s must be < 1");
      if (sd == 0.0) return Real(0);
      auto f = [&](double x) { return (lam - 1.0) / (std::exp(lam * (x - 1.0)) - x); };
      return Real(integrate_adaptive(f, 0.0, sd, rt).value);
    }
    case IntegralKind::U: {
      if (sd >= 1.0) throw std::domain_error("quadrature U: s must be < 1");
      if (sd == 0.0) return Real(0);
      const double l = (lam == 0.0) ? 1.0 : lam;  // U_lambda; U is lam=1
      auto f = [&](double x) { return 1.0 / (std::exp(l * (x - 1.0)) - x); };
      return Real(integrate_adaptive(f, 0.0, sd, rt).value);
    }
    case IntegralKind::logQ: {
      if (lam <= 1.0) throw std::domain_error("quadrature logQ: lambda must be > 1");
      const double q = static_cast<double>(classify(m).q);
      if (!(sd > q) || sd >= 1.0) throw std::domain_error("quadrature logQ: need q < s < 1");
      const double fq = K * (q * lam - 1.0);
      auto bracket = [&](double x) {
        const double d = x - q;
        const double w = lam * d;
        const double r = K * q * expm1m(w);  // K q (e^{lam d} - 1 - lam d)
        const double fx = fq * d + r;        // f(x) rebuilt about q, stable
        return -r / (fx * d);
      };
      // near-q subinterval via x = q + u^2
      const double cut = std::min(sd, q + 0.25 * (1.0 - q));
      auto sub = [&](double u) { return bracket(q + u * u) * 2.0 * u; };
      double total = integrate_adaptive(sub, 0.0, std::sqrt(cut - q), rt).value;
      if (sd > cut) total += integrate_adaptive(bracket, cut, sd, rt).value;
      return Real(std::log(sd - q) + total);
    }
  }
  throw std::logic_error("quadrature_integral: unknown kind");
}

// G(1) = int_0^1 [ (lambda-1)/(h-x) - 1/(x-1) ] dx, regular at x = 1.
template <class Real = double>
Real g1_quadrature(Real lambda, Real reltol = Real(1e-13)) {
  const double lam = static_cast<double>(lambda);
  if (!(lam > 0.0) || lam >= 1.0) throw std::domain_error("g1_quadrature: need 0 < lambda < 1");
  auto f = [&](double x) {
    const double w = x - 1.0;
    if (std::abs(w) < 0.25) {
      // bracket = -[e^{lam w}-1-lam w] / ((h-x) w) with h-x = (lam-1)w + (e^{lam w}-1-lam w)
      const double r = expm1m(lam * w);
      return -r / (((lam - 1.0) * w + r) * w);
    }
    return (lam - 1.0) / (std::exp(lam * w) - x) - 1.0 / w;
  };
  return Real(integrate_adaptive(f, 0.0, 1.0, static_cast<double>(reltol)).value);
}

}  // namespace koenigs

#endif  // KOENIGS_QUADRATURE_HPP

#ifndef KOENIGS_KOENIGS_HPP
#define KOENIGS_KOENIGS_HPP

// Koenigs-function constructions for the Poisson-reproduction MBP:
//   subcritical (lambda < 1): A = log B, B by derivative recurrence at 0,
//     by exp of the integrated reciprocal series, by (1-s)e^{G(s)} about 1,
//     and by quadrature of the defining integral;
//   critical (lambda = 1): U (Abel function) and C = e^U about 0, the
//     Laurent/log closed form about 1, and the invariant measure;
//   supercritical (lambda > 1): log Q normalized so Q(q) = 0, Q'(q) = 1.
//
// Series-backed methods carry an empirically probed validity interval; an
// evaluation outside it substitutes the quadrature value and flags the point.

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "koenigs/model.hpp"
#include "koenigs/quadrature.hpp"
#include "koenigs/taylor.hpp"

namespace koenigs {

// ---------------------------------------------------------------- subcritical

// B(0)=1, B'(0)=(lambda-1)e^lambda, then
// B^{(n+1)}(0) = B^{(n)}(0){(lambda+n-1)e^l - n lambda}
//              - sum_{k=2}^n C(n,k) B^{(n+1-k)}(0) lambda^k.
template <class Real>
TaylorExpansion<Real> b_derivs_at0(Real lambda, int order) {
  if (!(lambda > Real(0)) || lambda >= Real(1))
    throw std::domain_error("b_derivs_at0: requires 0 < lambda < 1");
  using std::exp;
  const Real el = exp(lambda);
  BinomialTable<Real> C(order);
  std::vector<Real> d(order + 1);
  d[0] = Real(1);
  d[1] = (lambda - Real(1)) * el;
  std::vector<Real> lampow(order + 1, Real(1));
  for (int k = 1; k <= order; ++k) lampow[k] = lampow[k - 1] * lambda;
  for (int n = 1; n < order; ++n) {
    CompensatedSum<Real> s;
    s.add(d[n] * ((lambda + Real(n - 1)) * el - Real(n) * lambda));
    for (int k = 2; k <= n; ++k) s.add(-C(n, k) * lampow[k] * d[n + 1 - k]);
    d[n + 1] = s.value();
  }
  return TaylorExpansion<Real>(Center::zero, std::move(d));
}

// A expansion about 0 for lambda < 1 (U for lambda = 1): the p-sequence
// p_1 = lambda - e^lambda, p_n = lambda^n is inverted by the reciprocal
// recurrence and integrated; A^{(n)}(0) = (lambda-1) e^lambda a_{n-1},
// U^{(n)}(0) = e a_{n-1}.
template <class Real>
TaylorExpansion<Real> a_series_at0(Real lambda, int order) {
  if (!(lambda > Real(0)) || lambda > Real(1))
    throw std::domain_error("a_series_at0: requires 0 < lambda <= 1");
  using std::exp;
  const Real el = exp(lambda);
  std::vector<Real> p(order + 1, Real(0));
  if (order >= 1) p[1] = lambda - el;
  Real pw = lambda;
  for (int n = 2; n <= order; ++n) {
    pw *= lambda;
    p[n] = pw;
  }
  const auto a = reciprocal_unit(TaylorExpansion<Real>(Center::zero, std::move(p)));
  const Real scale = (lambda == Real(1)) ? el : (lambda - Real(1)) * el;
  std::vector<Real> d(order + 1);
  d[0] = Real(0);
  d[1] = scale;  // a_0 = 1
  for (int n = 2; n <= order; ++n) d[n] = scale * a.deriv(n - 1);
  return TaylorExpansion<Real>(Center::zero, std::move(d));
}

enum class PmfKind { lcl, invariant_measure };

template <class Real = double>
struct PmfTable {
  PmfKind kind;
  Real lambda;
  std::vector<Real> values;  // values[i] is the entry for n = i+1

  Real partial_sum() const {
    CompensatedSum<Real> s;
    for (const Real& v : values) s.add(v);
    return s.value();
  }
};

// f_n = -B^{(n)}(0)/n!, the pmf of the limit conditional law.
template <class Real>
PmfTable<Real> lcl_pmf(Real lambda, int order) {
  const auto B = b_derivs_at0(lambda, order);
  std::vector<Real> f(order);
  Real fact(1);
  for (int n = 1; n <= order; ++n) {
    fact *= Real(n);
    f[n - 1] = -B.deriv(n) / fact;
    if (!(f[n - 1] >= Real(0)))
      throw numerical_error("lcl_pmf: negative mass at n=" + std::to_string(n));
  }
  PmfTable<Real> t{PmfKind::lcl, lambda, std::move(f)};
  if (t.partial_sum() > Real(1) + Real(1e-12))
    throw numerical_error("lcl_pmf: partial sums exceed 1");
  return t;
}

// u_n = U^{(n)}(0)/n! = e a_{n-1}/n!, the stationary measure (lambda = 1).
template <class Real = double>
PmfTable<Real> invariant_measure(int order) {
  if (order > 170) throw std::range_error("invariant_measure: order beyond binary64 range");
  const auto U = a_series_at0(Real(1), order);
  std::vector<Real> u(order);
  Real fact(1);
  for (int n = 1; n <= order; ++n) {
    fact *= Real(n);
    u[n - 1] = U.deriv(n) / fact;
    if (!(u[n - 1] >= Real(0)))
      throw numerical_error("invariant_measure: negative coefficient at n=" + std::to_string(n));
  }
  return PmfTable<Real>{PmfKind::invariant_measure, Real(1), std::move(u)};
}

// g^{(n)}(1) = (lambda/(1-lambda)) lambda^n/(n+1); the reciprocal
// 1/(1-g) = 1+b with b_n = sum_k C(n,k) g^{(k)}(1) b_{n-k}.
// Returns (g, 1+b) as expansions about 1.
template <class Real>
std::pair<TaylorExpansion<Real>, TaylorExpansion<Real>> g_b_at1(Real lambda, int order) {
  if (!(lambda > Real(0)) || lambda >= Real(1))
    throw std::domain_error("g_b_at1: requires 0 < lambda < 1");
  const Real c = lambda / (Real(1) - lambda);
  std::vector<Real> g(order + 1, Real(0));
  Real pw(1);
  for (int n = 1; n <= order; ++n) {
    pw *= lambda;
    g[n] = c * pw / Real(n + 1);
  }
  TaylorExpansion<Real> gexp(Center::one, std::move(g));
  BinomialTable<Real> C(order);
  std::vector<Real> b(order + 1);
  b[0] = Real(1);
  for (int n = 1; n <= order; ++n) {
    CompensatedSum<Real> s;
    for (int k = 1; k <= n; ++k) s.add(C(n, k) * gexp.deriv(k) * b[n - k]);
    b[n] = s.value();
  }
  return {std::move(gexp), TaylorExpansion<Real>(Center::one, std::move(b))};
}

// G(s) = G(1) + sum (b_n/n)(s-1)^n/n!. The anchor G(1) is the alternating sum
// sum (-1)^{n-1} b_n/(n n!) when its terms have decayed below 1e-10 at the
// truncation order (requires lambda < log 2); otherwise it is taken from the
// regularized quadrature and a warning is attached.
template <class Real = double>
struct GSeries {
  TaylorExpansion<Real> expansion;  // d_0 = G(1), d_n = b_n/n, center 1
  Real g1;
  Real g1_tail;              // |last alternating term|
  bool g1_from_quadrature;
  Real g0_residual;          // |G(0)| evaluated from the series (diagnostic)
};

template <class Real>
GSeries<Real> G_series(Real lambda, int order) {
  auto [g, recip] = g_b_at1(lambda, order);
  (void)g;
  using std::abs;
  CompensatedSum<Real> g1sum;
  Real fact(1);
  Real last(0);
  bool decreasing = true;
  Real prev(0);
  for (int n = 1; n <= order; ++n) {
    fact *= Real(n);
    const Real term = recip.deriv(n) / (Real(n) * fact);
    if (n > order / 2 && abs(term) > abs(prev)) decreasing = false;
    g1sum.add((n % 2) ? term : -term);
    prev = term;
    last = term;
  }
  const bool series_ok = decreasing && abs(last) < Real(1e-10);
  Real g1 = series_ok ? g1sum.value() : g1_quadrature(lambda);

  std::vector<Real> d(order + 1);
  d[0] = g1;
  for (int n = 1; n <= order; ++n) d[n] = recip.deriv(n) / Real(n);
  TaylorExpansion<Real> exp1(Center::one, std::move(d));
  const Real g0 = abs(eval(exp1, Real(0)).value);
  return {std::move(exp1), g1, abs(last), !series_ok, g0};
}

template <class Real>
Real B_via_G(const GSeries<Real>& G, Real s) {
  if (s == Real(1)) return Real(0);
  using std::exp;
  return (Real(1) - s) * exp(eval(G.expansion, s).value);
}

template <class Real>
Real B_via_G(Real lambda, Real s, int order = 80) {
  return B_via_G(G_series(lambda, order), s);
}

// B expansion about 1: B(1)=0, B'(1)=-e^{G(1)},
// B^{(n)}(1)(n-1)(1-lambda) = sum_{k=2}^n C(n,k) B^{(n+1-k)}(1) lambda^k.
template <class Real>
TaylorExpansion<Real> b_derivs_at1(Real lambda, int order) {
  const auto G = G_series(lambda, order);
  using std::exp;
  BinomialTable<Real> C(order);
  std::vector<Real> d(order + 1);
  d[0] = Real(0);
  d[1] = -exp(G.g1);
  std::vector<Real> lampow(order + 1, Real(1));
  for (int k = 1; k <= order; ++k) lampow[k] = lampow[k - 1] * lambda;
  for (int n = 2; n <= order; ++n) {
    CompensatedSum<Real> s;
    for (int k = 2; k <= n; ++k) s.add(C(n, k) * lampow[k] * d[n + 1 - k]);
    d[n] = s.value() / (Real(n - 1) * (Real(1) - lambda));
  }
  return TaylorExpansion<Real>(Center::one, std::move(d));
}

// ------------------------------------------------------------------- critical

// C(0)=1, C'(0)=e, C^{(n+1)}(0) = C^{(n)}(0){(n+1)e - n}
//                               - sum_{k=2}^n C(n,k) C^{(n+1-k)}(0).
template <class Real = double>
TaylorExpansion<Real> c_derivs_at0(int order) {
  using std::exp;
  const Real e = exp(Real(1));
  BinomialTable<Real> C(order);
  std::vector<Real> d(order + 1);
  d[0] = Real(1);
  d[1] = e;
  for (int n = 1; n < order; ++n) {
    CompensatedSum<Real> s;
    s.add(d[n] * (Real(n + 1) * e - Real(n)));
    for (int k = 2; k <= n; ++k) s.add(-C(n, k) * d[n + 1 - k]);
    d[n + 1] = s.value();
  }
  return TaylorExpansion<Real>(Center::zero, std::move(d));
}

// Critical decomposition about s=1: K/f = 2(1+c(s))/(s-1)^2 with
// (1+2 phi)(1+c) = 1, phi_k = 1/((k+1)(k+2)). The antiderivative is
//   Phi(s) = 2/(1-s) + 2 c_1 log(1-s) - (1-s)/18
//          + sum_{k>=3} 2 c_k (s-1)^{k-1}/(k!(k-1)),   2 c_1 = -2/3,
// and U(s) = Phi(s) - Phi(0) fixes U(0) = 0 (equivalently C(0) = 1).
template <class Real = double>
class CriticalNear1 {
 public:
  explicit CriticalNear1(int order = 60) : c_(order + 1), fact_(order + 1) {
    BinomialTable<Real> C(order);
    c_[0] = Real(1);
    fact_[0] = Real(1);
    for (int n = 1; n <= order; ++n) {
      fact_[n] = fact_[n - 1] * Real(n);
      CompensatedSum<Real> s;
      for (int k = 1; k <= n; ++k)
        s.add(C(n, k) * c_[n - k] / Real((k + 1) * (k + 2)));
      c_[n] = Real(-2) * s.value();
    }
    phi0_ = raw(Real(0));
  }

  static Real phi_coeff(int k) {
    if (k < 1) throw std::invalid_argument("phi_coeff: k >= 1");
    return Real(1) / Real((k + 1) * (k + 2));
  }
  Real c_coeff(int k) const { return c_.at(k); }
  int order() const { return static_cast<int>(c_.size()) - 1; }

  struct UC {
    Real u;
    Real c;
  };

  UC eval(Real s) const {
    if (!(s < Real(1))) throw std::domain_error("CriticalNear1: s must be < 1");
    using std::exp;
    const Real u = raw(s) - phi0_;
    return {u, exp(u)};
  }

  // Termwise derivative of the closed form: U'(s) = 2/(s-1)^2
  //   + sum_{k>=1} 2 c_k (s-1)^{k-2}/k!   (the k=1 term is the log's slope).
  Real u_prime(Real s) const {
    if (!(s < Real(1))) throw std::domain_error("CriticalNear1: s must be < 1");
    const Real w = s - Real(1);
    CompensatedSum<Real> acc;
    acc.add(Real(2) / (w * w));
    Real wp = Real(1) / w;  // w^{k-2}
    for (std::size_t k = 1; k < c_.size(); ++k) {
      acc.add(Real(2) * c_[k] * wp / fact_[k]);
      wp *= w;
    }
    return acc.value();
  }

 private:
  Real raw(Real s) const {
    using std::log;
    const Real w = s - Real(1);
    CompensatedSum<Real> acc;
    acc.add(Real(-2) / w);
    acc.add(Real(2) * c_[1] * log(-w));  // 2 c_1 = -2/3
    acc.add(Real(2) * c_[2] * w / fact_[2]);
    Real wp = w * w;  // w^{k-1}
    for (std::size_t k = 3; k < c_.size(); ++k) {
      acc.add(Real(2) * c_[k] * wp / (fact_[k] * Real(k - 1)));
      wp *= w;
    }
    return acc.value();
  }

  std::vector<Real> c_;
  std::vector<Real> fact_;
  Real phi0_;
};

template <class Real = double>
typename CriticalNear1<Real>::UC u_c_near1_critical(Real s, int order = 60) {
  return CriticalNear1<Real>(order).eval(s);
}

// --------------------------------------------------------------- supercritical

// logQ(s) = log(s-q) + int_q^s [f'(q)/f(x) - 1/(x-q)] dx; Q(q)=0, Q'(q)=1.
// Returns -inf at s = q; the integral itself diverges at s -> 1-.
template <class Real = double>
Real supercritical_logQ(const BranchingModel<Real>& m, Real s, Real reltol = Real(1e-10)) {
  if (!(m.lambda > Real(1))) throw std::domain_error("supercritical_logQ: lambda must be > 1");
  const Real q = classify(m).q;
  if (s == q) return -std::numeric_limits<Real>::infinity();
  if (!(s > q) || !(s < Real(1)))
    throw std::domain_error("supercritical_logQ: s outside (q,1) (unbounded as s -> 1)");
  return quadrature_integral(IntegralKind::logQ, m, s, reltol);
}

// ------------------------------------------------------------ method facade

enum class Kind { A, B, U, C, G, D, LogQ };
enum class Method { recurrence0, recip_series0, g_form1, ei_explicit, quadrature, closed_form1 };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::recurrence0: return "recurrence0";
    case Method::recip_series0: return "recip_series0";
    case Method::g_form1: return "G_form1";
    case Method::ei_explicit: return "ei_explicit";
    case Method::quadrature: return "quadrature";
    case Method::closed_form1: return "closed_form1";
  }
  return "?";
}

inline const char* to_string(Kind k) {
  switch (k) {
    case Kind::A: return "A";
    case Kind::B: return "B";
    case Kind::U: return "U";
    case Kind::C: return "C";
    case Kind::G: return "G";
    case Kind::D: return "D";
    case Kind::LogQ: return "logQ";
  }
  return "?";
}

template <class Real = double>
struct Evaluation {
  Real value;
  Real tail_estimate;
  bool substituted = false;  // true when the quadrature fallback supplied the value
};

template <class Real = double>
struct Interval {
  Real lo;
  Real hi;
  bool contains(Real s) const { return s >= lo && s <= hi; }
  bool empty() const { return !(lo <= hi); }
};

// Evaluable representation of one (kind, method) pair with a probed validity
// interval. Out-of-validity points are served by the quadrature route and
// flagged; construction records a warning once.
template <class Real = double>
class KoenigsSolution {
 public:
  static KoenigsSolution make(Kind kind, Method method, const BranchingModel<Real>& m,
                              int order = 80, Real tail_threshold = Real(1e-9));

  Kind kind() const { return kind_; }
  Method method() const { return method_; }
  Real lambda() const { return model_.lambda; }
  int order() const { return order_; }
  Interval<Real> validity() const { return validity_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  const TaylorExpansion<Real>* expansion() const { return exp_ ? &*exp_ : nullptr; }
  Real g1() const { return g1_; }

  Evaluation<Real> eval(Real s) const;

 private:
  KoenigsSolution(Kind k, Method mth, BranchingModel<Real> m)
      : kind_(k), method_(mth), model_(std::move(m)) {}

  Real quadrature_value(Real s) const;
  Evaluation<Real> series_value(Real s) const;
  void probe_validity(Real threshold);

  Kind kind_;
  Method method_;
  BranchingModel<Real> model_;
  int order_ = 80;
  std::optional<TaylorExpansion<Real>> exp_;
  std::shared_ptr<const CriticalNear1<Real>> near1_;
  Real g1_ = Real(0);
  Interval<Real> validity_{Real(0), Real(1)};
  std::vector<std::string> warnings_;
};

}  // namespace koenigs

#include "koenigs/koenigs_solution_impl.hpp"

#endif  // KOENIGS_KOENIGS_HPP

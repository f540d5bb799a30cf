#ifndef KOENIGS_TAYLOR_HPP
#define KOENIGS_TAYLOR_HPP

// Truncated Taylor expansions in the derivative (EGF) convention about the
// centers 0 and 1: the expansion stores d_n = f^(n)(center), the coefficient
// of (s-center)^n is d_n/n!. All the paper's recurrences are stated on
// derivative sequences, so conversion to monomial scale happens only in eval.

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "koenigs/numeric.hpp"
#include "koenigs/specfun.hpp"

namespace koenigs {

enum class Center : int { zero = 0, one = 1 };

template <class Real>
class TaylorExpansion {
 public:
  TaylorExpansion(Center c, std::vector<Real> derivs) : center_(c), d_(std::move(derivs)) {
    if (d_.size() < 2) throw std::invalid_argument("TaylorExpansion: order must be >= 1");
    for (const Real& v : d_) {
      if (!detail::is_finite(v)) throw std::invalid_argument("TaylorExpansion: non-finite derivative");
    }
  }

  static TaylorExpansion unit(Center c, int order) {
    std::vector<Real> d(order + 1, Real(0));
    d[0] = Real(1);
    return TaylorExpansion(c, std::move(d));
  }

  Center center() const { return center_; }
  Real center_value() const { return center_ == Center::zero ? Real(0) : Real(1); }
  int order() const { return static_cast<int>(d_.size()) - 1; }
  Real deriv(int n) const { return d_.at(n); }
  std::span<const Real> derivs() const { return {d_.data(), d_.size()}; }

 private:
  Center center_;
  std::vector<Real> d_;  // d_[n] = f^(n)(center), n = 0..order
};

template <class Real>
struct EvalResult {
  Real value;
  Real tail_estimate;  // |last included term| / max(1, |value|)
};

// Leibniz product on derivative sequences, truncated at the smaller order.
template <class Real>
TaylorExpansion<Real> mul(const TaylorExpansion<Real>& x, const TaylorExpansion<Real>& y) {
  if (x.center() != y.center()) throw std::invalid_argument("mul: center mismatch");
  const int N = std::min(x.order(), y.order());
  BinomialTable<Real> C(N);
  std::vector<Real> d(N + 1);
  for (int n = 0; n <= N; ++n) {
    CompensatedSum<Real> s;
    for (int k = 0; k <= n; ++k) s.add(C(n, k) * x.deriv(k) * y.deriv(n - k));
    d[n] = s.value();
  }
  return TaylorExpansion<Real>(x.center(), std::move(d));
}

// Reciprocal of 1 + p(s) where p has d_0 = 0: returns a (deviation sequence,
// a_0 stored as 0) with sum_k C(n,k) p_k a_{n-k} = 0, a_0 = 1.
template <class Real>
TaylorExpansion<Real> reciprocal_unit(const TaylorExpansion<Real>& p) {
  if (p.deriv(0) != Real(0)) throw std::invalid_argument("reciprocal_unit: d_0(p) must be 0");
  const int N = p.order();
  BinomialTable<Real> C(N);
  std::vector<Real> a(N + 1, Real(0));
  std::vector<Real> a_full(N + 1);
  a_full[0] = Real(1);
  for (int n = 1; n <= N; ++n) {
    CompensatedSum<Real> s;
    for (int k = 1; k <= n; ++k) s.add(C(n, k) * p.deriv(k) * a_full[n - k]);
    a_full[n] = -s.value();
    a[n] = a_full[n];
  }
  return TaylorExpansion<Real>(p.center(), std::move(a));
}

// d_n(g^k) = k! B_{n,k}(d_1(g), d_2(g), ...) for n >= k, zero below.
template <class Real>
TaylorExpansion<Real> pow_egf(const TaylorExpansion<Real>& g, int k) {
  if (k < 1) throw std::invalid_argument("pow_egf: k must be >= 1");
  if (g.deriv(0) != Real(0)) throw std::invalid_argument("pow_egf: d_0(g) must be 0");
  const int N = g.order();
  std::vector<Real> seq(g.derivs().begin() + 1, g.derivs().end());
  Real kfact(1);
  for (int i = 2; i <= k; ++i) kfact *= Real(i);
  std::vector<Real> d(N + 1, Real(0));
  for (int n = k; n <= N; ++n) {
    d[n] = kfact * bell_partial<Real>(n, k, std::span<const Real>(seq.data(), seq.size()));
  }
  return TaylorExpansion<Real>(g.center(), std::move(d));
}

// exp of an expansion with d_0 = 0, via the B' = A'B convolution; values agree
// with the Faa di Bruno form d_n = sum_k B_{n,k}(A', A'', ...).
template <class Real>
TaylorExpansion<Real> exp_series(const TaylorExpansion<Real>& a) {
  if (a.deriv(0) != Real(0)) throw std::invalid_argument("exp_series: d_0 must be 0");
  const int N = a.order();
  BinomialTable<Real> C(N);
  std::vector<Real> b(N + 1);
  b[0] = Real(1);
  for (int n = 0; n < N; ++n) {
    CompensatedSum<Real> s;
    for (int k = 0; k <= n; ++k) s.add(C(n, k) * a.deriv(k + 1) * b[n - k]);
    b[n + 1] = s.value();
  }
  return TaylorExpansion<Real>(a.center(), std::move(b));
}

// Antiderivative vanishing at the center: new d_0 = 0, d_n = d_{n-1}(x).
template <class Real>
TaylorExpansion<Real> integrate_from_center(const TaylorExpansion<Real>& x) {
  std::vector<Real> d(x.order() + 2);
  d[0] = Real(0);
  for (int n = 1; n <= x.order() + 1; ++n) d[n] = x.deriv(n - 1);
  return TaylorExpansion<Real>(x.center(), std::move(d));
}

// Derivative: d_n = d_{n+1}(x); order shrinks by one.
template <class Real>
TaylorExpansion<Real> derivative(const TaylorExpansion<Real>& x) {
  if (x.order() < 2) throw std::invalid_argument("derivative: order too small");
  std::vector<Real> d(x.order());
  for (int n = 0; n < x.order(); ++n) d[n] = x.deriv(n + 1);
  return TaylorExpansion<Real>(x.center(), std::move(d));
}

// Compensated term summation of sum d_n (s-c)^n / n!.
template <class Real>
EvalResult<Real> eval(const TaylorExpansion<Real>& x, Real s) {
  using std::abs;
  const Real u = s - x.center_value();
  CompensatedSum<Real> sum;
  Real f(1);  // u^n / n!
  Real last(0);
  for (int n = 0; n <= x.order(); ++n) {
    if (n > 0) f *= u / Real(n);
    last = x.deriv(n) * f;
    sum.add(last);
  }
  const Real v = sum.value();
  return {v, abs(last) / std::max(Real(1), abs(v))};
}

}  // namespace koenigs

#endif  // KOENIGS_TAYLOR_HPP

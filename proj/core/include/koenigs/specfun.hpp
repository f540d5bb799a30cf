#ifndef KOENIGS_SPECFUN_HPP
#define KOENIGS_SPECFUN_HPP

// Special functions and combinatorial primitives behind the series
// constructions: the modified exponential integral Ein (entire), Ei through
// the Ein relation, the principal Lambert-W branch, partial exponential Bell
// polynomials and factorial polynomials.

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "koenigs/numeric.hpp"

namespace koenigs {

// Ein(x) = sum_{k>=1} (-1)^{k+1} x^k/(k k!), entire. Series summation with
// compensation; terms are accumulated in long double to push the cancellation
// floor for positive x. Domain guard |x| <= 30 (beyond is out of the needed
// range; callers get a range error instead of a silent algorithm switch).
template <class Real>
Real ein(Real x) {
  if (!detail::is_finite(x)) throw std::domain_error("ein: non-finite argument");
  using std::abs;
  if (abs(x) > Real(30)) throw std::range_error("ein: |x| > 30 unsupported");
  if (x == Real(0)) return Real(0);
  using Acc = std::conditional_t<std::is_same_v<Real, double>, long double, Real>;
  Acc xx = static_cast<Acc>(x);
  CompensatedSum<Acc> sum;
  Acc m = 1;  // x^k / k!
  for (int k = 1; k <= 200; ++k) {
    m *= xx / k;
    const Acc term = (k % 2 ? m : -m) / k;
    sum.add(term);
    using std::abs;
    if (abs(term) < Real(1e-17) * abs(sum.value()) && k > 3) break;
  }
  return static_cast<Real>(sum.value());
}

// Ei(x) = gamma + log|x| - Ein(-x), x != 0 (principal value for x > 0).
template <class Real>
Real ei(Real x) {
  if (!detail::is_finite(x)) throw std::domain_error("ei: non-finite argument");
  if (x == Real(0)) throw std::domain_error("ei: branch point x = 0");
  using std::abs;
  using std::log;
  return Real(euler_gamma) + log(abs(x)) - ein(-x);
}

// Principal branch W0: w e^w = y for y >= -1/e. Halley iteration; seeded by
// the branch-point series in p = sqrt(2(e y + 1)) near -1/e.
inline double lambert_w0(double y) {
  if (!std::isfinite(y)) throw std::domain_error("lambert_w0: non-finite argument");
  const double em1 = std::exp(-1.0);
  if (y < -em1 - 1e-16) throw std::domain_error("lambert_w0: y < -1/e");
  if (y <= -em1) return -1.0;
  if (y == 0.0) return 0.0;

  double w;
  if (y < -0.25) {
    const double p = std::sqrt(2.0 * (std::exp(1.0) * y + 1.0));
    w = -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 - p * 43.0 / 540.0)));
  } else if (y < 3.0) {
    w = std::log1p(y) * (1.0 - 0.1 * std::log1p(y) / (1.0 + y));
  } else {
    const double l = std::log(y);
    w = l - std::log(l);
  }
  for (int it = 0; it < 60; ++it) {
    const double e = std::exp(w);
    const double r = w * e - y;
    if (r == 0.0) break;
    const double denom = e * (w + 1.0) - (w + 2.0) * r / (2.0 * w + 2.0);
    const double dw = r / denom;
    w -= dw;
    if (std::abs(dw) <= 2e-16 * (1.0 + std::abs(w))) break;
  }
  return w;
}

struct FactorialKind {
  enum Direction { falling, rising };
  Direction direction = falling;
  int order = 0;
};

// [x]_{k downarrow} = x(x-1)...(x-k+1), [x]_{k uparrow} = x(x+1)...(x+k-1).
// Product form; never evaluates Gamma at nonpositive integers.
template <class Real>
Real factorial_poly(Real x, FactorialKind kind) {
  if (kind.order < 0) throw std::invalid_argument("factorial_poly: order < 0");
  Real r(1);
  for (int i = 0; i < kind.order; ++i) {
    r *= (kind.direction == FactorialKind::falling) ? x - Real(i) : x + Real(i);
  }
  return r;
}

// H_n summed small terms first.
inline double harmonic(int n) {
  if (n < 1) throw std::invalid_argument("harmonic: n < 1");
  CompensatedSum<double> s;
  for (int k = n; k >= 1; --k) s.add(1.0 / k);
  return s.value();
}

struct BellEvaluation {
  int n = 0;
  int k = 0;
  double value = 0;
};

// Partial exponential Bell polynomial B_{n,k}(x1, x2, ...). Standard triangle
// recurrence B_{n,k} = sum_i C(n-1, i-1) x_i B_{n-i,k-1}. The Pascal triangle
// is built in the scalar type, so rational instantiations stay exact.
template <class S>
S bell_partial(int n, int k, std::span<const S> x) {
  if (n < 1 || k < 1 || k > n) throw std::invalid_argument("bell_partial: need 1 <= k <= n");
  if (static_cast<int>(x.size()) < n - k + 1)
    throw std::invalid_argument("bell_partial: need at least n-k+1 sequence entries");
  BinomialTable<S> C(n);
  // table[j][m] = B_{m,j}, built upward in j
  std::vector<std::vector<S>> B(k + 1, std::vector<S>(n + 1, S(0)));
  B[0][0] = S(1);
  for (int j = 1; j <= k; ++j) {
    for (int m = j; m <= n; ++m) {
      S acc(0);
      for (int i = 1; i <= m - j + 1; ++i) {
        acc += C(m - 1, i - 1) * x[i - 1] * B[j - 1][m - i];
      }
      B[j][m] = acc;
    }
  }
  return B[k][n];
}

template <class S>
S bell_partial(int n, int k, const std::vector<S>& x) {
  return bell_partial<S>(n, k, std::span<const S>(x.data(), x.size()));
}

}  // namespace koenigs

#endif  // KOENIGS_SPECFUN_HPP

#ifndef KOENIGS_MODEL_HPP
#define KOENIGS_MODEL_HPP

// The Poisson-reproduction Markov branching model: reproduction pgf
// h(s) = e^{lambda(s-1)}, infinitesimal generating function f = K(h - s),
// criticality classification and the extinction probability fixed point.

#include <cmath>
#include <stdexcept>

#include "koenigs/specfun.hpp"
#include "koenigs/taylor.hpp"

namespace koenigs {

template <class Real = double>
struct BranchingModel {
  Real lambda;      // offspring mean, > 0
  Real big_k{1};    // lifetime rate K, > 0

  BranchingModel(Real lambda_, Real big_k_ = Real(1)) : lambda(lambda_), big_k(big_k_) {
    if (!(lambda > Real(0)) || !(big_k > Real(0)))
      throw std::invalid_argument("BranchingModel: lambda and K must be positive");
  }
};

enum class CriticalityTag { subcritical, critical, supercritical };

template <class Real = double>
struct Criticality {
  CriticalityTag tag;
  Real q;  // ultimate extinction probability
};

template <class Real>
Real h_eval(const BranchingModel<Real>& m, Real s) {
  using std::exp;
  return exp(m.lambda * (s - Real(1)));
}

template <class Real>
Real f_eval(const BranchingModel<Real>& m, Real s) {
  return m.big_k * (h_eval(m, s) - s);
}

// h^(k)(0) = e^-lambda lambda^k ;  h^(k)(1) = lambda^k
template <class Real>
TaylorExpansion<Real> h_derivs(const BranchingModel<Real>& m, Center c, int order) {
  using std::exp;
  std::vector<Real> d(order + 1);
  const Real scale = (c == Center::zero) ? exp(-m.lambda) : Real(1);
  Real pw(1);
  for (int k = 0; k <= order; ++k) {
    d[k] = scale * pw;
    pw *= m.lambda;
  }
  return TaylorExpansion<Real>(c, std::move(d));
}

template <class Real>
Real mean_population(const BranchingModel<Real>& m, Real t) {
  if (t < Real(0)) throw std::invalid_argument("mean_population: t < 0");
  using std::exp;
  return exp(m.big_k * (m.lambda - Real(1)) * t);
}

// q = 1 for lambda <= 1; else the minimal root of h(s) = s, seeded by
// -W0(-lambda e^-lambda)/lambda and safeguarded by bisection on [0, 1-1e-9].
template <class Real>
Criticality<Real> classify(const BranchingModel<Real>& m) {
  using std::abs;
  using std::exp;
  if (m.lambda == Real(1)) return {CriticalityTag::critical, Real(1)};
  if (m.lambda < Real(1)) return {CriticalityTag::subcritical, Real(1)};

  const double lam = static_cast<double>(m.lambda);
  double q = -lambert_w0(-lam * std::exp(-lam)) / lam;

  // bisection safeguard on g(s) = h(s) - s; g(0) > 0, g(1-eps) < 0
  double lo = 0.0, hi = 1.0 - 1e-9;
  auto g = [&](double s) { return std::exp(lam * (s - 1.0)) - s; };
  if (!(q > lo && q < hi) || std::abs(g(q)) > 1e-13) {
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (g(mid) > 0.0) lo = mid; else hi = mid;
      if (hi - lo < 1e-16) break;
    }
    q = 0.5 * (lo + hi);
    // polish with Newton on h(s) - s
    for (int it = 0; it < 4; ++it) {
      const double hs = std::exp(lam * (q - 1.0));
      q -= (hs - q) / (lam * hs - 1.0);
    }
  }
  return {CriticalityTag::supercritical, Real(q)};
}

}  // namespace koenigs

#endif  // KOENIGS_MODEL_HPP

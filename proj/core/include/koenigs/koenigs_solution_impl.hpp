#ifndef KOENIGS_KOENIGS_SOLUTION_IMPL_HPP
#define KOENIGS_KOENIGS_SOLUTION_IMPL_HPP

// Implementation of the KoenigsSolution facade (included from koenigs.hpp).

#include <cmath>
#include <sstream>

#include "koenigs/explicit_ei.hpp"

namespace koenigs {

namespace detail {

inline bool method_allowed(Kind k, Method m, double lambda) {
  switch (k) {
    case Kind::A:
      return lambda < 1.0 &&
             (m == Method::recip_series0 || m == Method::ei_explicit || m == Method::quadrature);
    case Kind::B:
      return lambda < 1.0 &&
             (m == Method::recurrence0 || m == Method::recip_series0 || m == Method::g_form1 ||
              m == Method::ei_explicit || m == Method::quadrature);
    case Kind::U:
      if (lambda == 1.0)
        return m == Method::recip_series0 || m == Method::closed_form1 ||
               m == Method::ei_explicit || m == Method::quadrature;
      return lambda < 1.0 && (m == Method::recip_series0 || m == Method::quadrature);
    case Kind::C:
      if (lambda == 1.0)
        return m == Method::recip_series0 || m == Method::closed_form1 || m == Method::quadrature;
      return lambda < 1.0 && (m == Method::recip_series0 || m == Method::quadrature);
    case Kind::G:
      return lambda < 1.0 &&
             (m == Method::g_form1 || m == Method::ei_explicit || m == Method::quadrature);
    case Kind::D:
      return lambda < 1.0 && (m == Method::ei_explicit || m == Method::quadrature);
    case Kind::LogQ:
      return lambda > 1.0 && m == Method::quadrature;
  }
  return false;
}

}  // namespace detail

template <class Real>
KoenigsSolution<Real> KoenigsSolution<Real>::make(Kind kind, Method method,
                                                  const BranchingModel<Real>& m, int order,
                                                  Real tail_threshold) {
  if (!detail::method_allowed(kind, method, static_cast<double>(m.lambda)))
    throw std::domain_error(std::string("KoenigsSolution: method ") + to_string(method) +
                            " not available for kind " + to_string(kind) +
                            " at this lambda");
  KoenigsSolution sol(kind, method, m);
  sol.order_ = order;

  switch (method) {
    case Method::recurrence0:
      sol.exp_ = b_derivs_at0(m.lambda, order);
      break;
    case Method::recip_series0:
      sol.exp_ = a_series_at0(m.lambda, order);
      break;
    case Method::g_form1: {
      auto G = G_series(m.lambda, order);
      sol.g1_ = G.g1;
      if (G.g1_from_quadrature)
        sol.warnings_.push_back(
            "G(1) alternating series not convergent at this order (lambda >= log 2); "
            "anchor taken from regularized quadrature");
      sol.exp_ = std::move(G.expansion);
      break;
    }
    case Method::closed_form1:
      sol.near1_ = std::make_shared<CriticalNear1<Real>>(60);
      break;
    case Method::ei_explicit:
    case Method::quadrature:
      break;
  }
  sol.probe_validity(tail_threshold);
  return sol;
}

template <class Real>
Real KoenigsSolution<Real>::quadrature_value(Real s) const {
  using std::exp;
  using std::log;
  switch (kind_) {
    case Kind::A:
      return quadrature_integral(IntegralKind::A, model_, s);
    case Kind::B:
      if (s == Real(1)) return Real(0);
      return exp(quadrature_integral(IntegralKind::A, model_, s));
    case Kind::U: {
      const Real u1 = quadrature_integral(IntegralKind::U, model_, s);
      return u1;
    }
    case Kind::C:
      return exp(quadrature_integral(IntegralKind::U, model_, s));
    case Kind::G:
      if (s == Real(1)) return g1_quadrature(model_.lambda);
      return quadrature_integral(IntegralKind::A, model_, s) - log(Real(1) - s);
    case Kind::D: {
      const Real G = quadrature_integral(IntegralKind::A, model_, s) - log(Real(1) - s);
      return (G + model_.lambda * log(Real(1) - s)) / (Real(1) - model_.lambda);
    }
    case Kind::LogQ:
      return supercritical_logQ(model_, s);
  }
  throw std::logic_error("quadrature_value: unreachable");
}

template <class Real>
Evaluation<Real> KoenigsSolution<Real>::series_value(Real s) const {
  using std::exp;
  switch (method_) {
    case Method::recurrence0: {  // kind B
      auto ev = koenigs::eval(*exp_, s);
      return {ev.value, ev.tail_estimate, false};
    }
    case Method::recip_series0: {
      auto ev = koenigs::eval(*exp_, s);   // A for lambda<1, U for lambda=1
      switch (kind_) {
        case Kind::A: return {ev.value, ev.tail_estimate, false};
        case Kind::U:
          if (model_.lambda < Real(1))
            return {ev.value / (model_.lambda - Real(1)), ev.tail_estimate, false};
          return {ev.value, ev.tail_estimate, false};
        case Kind::B: return {exp(ev.value), ev.tail_estimate, false};
        case Kind::C: {
          Real u = (model_.lambda < Real(1)) ? ev.value / (model_.lambda - Real(1)) : ev.value;
          return {exp(u), ev.tail_estimate, false};
        }
        default: break;
      }
      break;
    }
    case Method::g_form1: {
      auto ev = koenigs::eval(*exp_, s);
      if (kind_ == Kind::G) return {ev.value, ev.tail_estimate, false};
      // kind B
      if (s == Real(1)) return {Real(0), Real(0), false};
      return {(Real(1) - s) * exp(ev.value), ev.tail_estimate, false};
    }
    case Method::closed_form1: {
      auto uc = near1_->eval(s);
      const Real tail = Real(4e-16);
      return {kind_ == Kind::U ? uc.u : uc.c, tail, false};
    }
    case Method::ei_explicit: {
      const double lam = static_cast<double>(model_.lambda);
      const double sd = static_cast<double>(s);
      ExplicitEiResult r;
      switch (kind_) {
        case Kind::A:
        case Kind::U: r = a_explicit_ei(lam, sd); break;
        case Kind::G: r = g_explicit_ei(lam, sd); break;
        case Kind::D: r = d_explicit_ei(lam, sd); break;
        case Kind::B: {
          r = g_explicit_ei(lam, sd);
          r.value = (1.0 - sd) * std::exp(r.value);
          break;
        }
        default: break;
      }
      using std::abs;
      return {Real(r.value), Real(r.err_estimate) / std::max(Real(1), Real(abs(r.value))), false};
    }
    case Method::quadrature:
      break;
  }
  throw std::logic_error("series_value: unreachable");
}

template <class Real>
void KoenigsSolution<Real>::probe_validity(Real threshold) {
  const double lam = static_cast<double>(model_.lambda);
  if (method_ == Method::quadrature) {
    if (kind_ == Kind::LogQ) {
      validity_ = {classify(model_).q, Real(1)};
    } else {
      validity_ = {Real(0), Real(1)};
    }
    return;
  }
  if (method_ == Method::closed_form1) {
    validity_ = {Real(0), Real(0.995)};
    return;
  }
  if (method_ == Method::ei_explicit) {
    // coarse ascending probe on the evaluator's own error estimate
    Real hi = Real(0);
    for (int i = 1; i <= 19; ++i) {
      const double sd = 0.05 * i;
      ExplicitEiResult r;
      switch (kind_) {
        case Kind::A:
        case Kind::U: r = a_explicit_ei(lam, sd); break;
        case Kind::G: r = g_explicit_ei(lam, sd); break;
        case Kind::B:
        case Kind::D: r = d_explicit_ei(lam, sd); break;
        default: break;
      }
      if (!r.converged) break;
      hi = Real(sd);
    }
    validity_ = {Real(0), hi};
    if (hi < Real(0.95)) {
      std::ostringstream os;
      os << to_string(method_) << " for " << to_string(kind_) << " validated on [0, "
         << static_cast<double>(hi) << "]; quadrature substituted beyond";
      warnings_.push_back(os.str());
    }
    return;
  }

  // series methods: tail-estimate threshold scan, step 0.01
  if (exp_ && exp_->center() == Center::zero) {
    Real hi = Real(0);
    for (int i = 0; i <= 100; ++i) {
      const Real s = Real(i) / Real(100);
      const auto ev = koenigs::eval(*exp_, s);
      if (ev.tail_estimate > threshold) break;
      hi = s;
    }
    validity_ = {Real(0), hi};
    if (hi < Real(0.95)) {
      std::ostringstream os;
      os << to_string(method_) << " for " << to_string(kind_) << " at lambda=" << lam
         << " has series tail above threshold beyond s=" << static_cast<double>(hi)
         << "; quadrature substituted there";
      warnings_.push_back(os.str());
    }
  } else if (exp_) {  // center one (g_form1)
    Real lo = Real(1);
    for (int i = 100; i >= 0; --i) {
      const Real s = Real(i) / Real(100);
      const auto ev = koenigs::eval(*exp_, s);
      if (ev.tail_estimate > threshold) break;
      lo = s;
    }
    validity_ = {lo, Real(1)};
    if (lo > Real(0.01)) {
      std::ostringstream os;
      os << to_string(method_) << " for " << to_string(kind_) << " at lambda=" << lam
         << " converges only on [" << static_cast<double>(lo)
         << ", 1]; quadrature substituted below";
      warnings_.push_back(os.str());
    }
  }
}

template <class Real>
Evaluation<Real> KoenigsSolution<Real>::eval(Real s) const {
  if (kind_ == Kind::LogQ) {
    const Real lq = supercritical_logQ(model_, s);
    return {lq, Real(1e-10), false};
  }
  if (s < Real(0) || s > Real(1)) throw std::domain_error("eval: s outside [0,1]");
  if (s == Real(1)) {
    switch (kind_) {
      case Kind::B: return {Real(0), Real(0), false};
      case Kind::G: return {g1_quadrature(model_.lambda), Real(1e-13), false};
      case Kind::A:
      case Kind::U:
      case Kind::C:
      case Kind::D:
        throw std::domain_error("eval: singular at s = 1");
      default: break;
    }
  }
  if (method_ == Method::quadrature) return {quadrature_value(s), Real(1e-12), false};
  if (validity_.contains(s)) return series_value(s);
  return {quadrature_value(s), Real(1e-12), true};
}

}  // namespace koenigs

#endif  // KOENIGS_KOENIGS_SOLUTION_IMPL_HPP

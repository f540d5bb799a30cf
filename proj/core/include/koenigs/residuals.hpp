#ifndef KOENIGS_RESIDUALS_HPP
#define KOENIGS_RESIDUALS_HPP

// Functional-equation residual checks tying the Koenigs constructions to the
// ODE solution of the backward Kolmogorov equation:
//   subcritical (Schroeder):  B(F(t,s)) = e^{K(lambda-1)t} B(s)
//   critical    (Abel):       U(F(t,s)) = K t + U(s)
//   supercritical (Schroeder): Q(F(t,s)) = e^{f'(q)t} Q(s)

#include <cmath>
#include <functional>
#include <vector>

#include "koenigs/koenigs.hpp"
#include "koenigs/ode.hpp"

namespace koenigs {

struct ResidualReport {
  double max_abs = 0;
  double worst_t = 0;
  double worst_s = 0;
  int points = 0;
};

// evaluator: s -> B(s), U(s) or logQ(s) according to the model's criticality.
inline ResidualReport functional_residuals(const BranchingModel<double>& m,
                                           const std::function<double(double)>& evaluator,
                                           const std::vector<double>& t_grid,
                                           const std::vector<double>& s_grid,
                                           double ode_tol = 1e-11) {
  const Criticality<double> crit = classify(m);
  ResidualReport rep;
  for (double t : t_grid) {
    for (double s : s_grid) {
      const double F = solve_F(m, t, s, ode_tol).value;
      double r = 0;
      switch (crit.tag) {
        case CriticalityTag::subcritical:
          r = evaluator(F) - std::exp(m.big_k * (m.lambda - 1.0) * t) * evaluator(s);
          break;
        case CriticalityTag::critical:
          r = evaluator(F) - m.big_k * t - evaluator(s);
          break;
        case CriticalityTag::supercritical: {
          const double fq = m.big_k * (crit.q * m.lambda - 1.0);
          r = std::exp(evaluator(F)) - std::exp(fq * t) * std::exp(evaluator(s));
          break;
        }
      }
      ++rep.points;
      if (std::abs(r) > rep.max_abs) {
        rep.max_abs = std::abs(r);
        rep.worst_t = t;
        rep.worst_s = s;
      }
    }
  }
  return rep;
}

inline ResidualReport functional_residuals(const BranchingModel<double>& m,
                                           const KoenigsSolution<double>& sol,
                                           const std::vector<double>& t_grid,
                                           const std::vector<double>& s_grid,
                                           double ode_tol = 1e-11) {
  const Criticality<double> crit = classify(m);
  const Kind expected = crit.tag == CriticalityTag::subcritical ? Kind::B
                        : crit.tag == CriticalityTag::critical  ? Kind::U
                                                                : Kind::LogQ;
  if (sol.kind() != expected)
    throw std::invalid_argument("functional_residuals: solution kind does not match criticality");
  return functional_residuals(
      m, [&](double s) { return sol.eval(s).value; }, t_grid, s_grid, ode_tol);
}

}  // namespace koenigs

#endif  // KOENIGS_RESIDUALS_HPP

#ifndef KOENIGS_EXPLICIT_EI_HPP
#define KOENIGS_EXPLICIT_EI_HPP

// Experimental evaluators for the explicit exponential-integral expansions of
// A (subcritical), U (critical specialization) and of G/D about s=1.
// The integration-by-parts closed forms cancel catastrophically (intermediate
// terms grow like k! (e^lambda/lambda)^k against O(1) results), so the sums
// are carried in 100-digit arithmetic internally; results are returned in
// binary64 together with a noise+truncation error estimate and a convergence
// flag. Empirical validity intervals are probed from these estimates.

namespace koenigs {

struct ExplicitEiResult {
  double value = 0;
  double err_estimate = 0;  // truncation + rounding-noise bound
  bool converged = false;   // err_estimate <= 1e-6 * max(1, |value|)
  int terms_used = 0;       // outer terms actually summed
};

// A(s) by the outer alternating sum over int_0^s p(x)^k dx in closed form
// (0 < lambda < 1); at lambda = 1 evaluates U(s) (same series, scale e).
ExplicitEiResult a_explicit_ei(double lambda, double s, int kmax = 40);

// G(s) about s=1 built from (g(x))^n/(x-1) integrated by parts into Ei terms.
ExplicitEiResult g_explicit_ei(double lambda, double s, int nmax = 40);

// D(s) with B(s) = ((1-s) e^{D(s)})^{1-lambda}.
ExplicitEiResult d_explicit_ei(double lambda, double s, int nmax = 40);

// The n=1 term of the G expansion: definite integral int_0^s g(x)/(x-1) dx.
// closed_form = difference of the printed antiderivative
//   ((e^{lambda(s-1)}-1)/(1-lambda))(-1/(s-1)) - (lambda/(1-lambda)) Ein(lambda(1-s))
// between x = s and x = 0.
double g_n1_term(double lambda, double s);
double g_n1_term_closed_ein(double lambda, double s);

}  // namespace koenigs

#endif  // KOENIGS_EXPLICIT_EI_HPP

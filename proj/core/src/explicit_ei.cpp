#include "koenigs/explicit_ei.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "koenigs/specfun.hpp"

namespace koenigs {
namespace {

using mp = boost::multiprecision::cpp_bin_float_100;

// gamma to 110 digits for the internal Ei; the public double constant stays
// the paper's 22-digit literal.
const mp kGamma110(
    "0.5772156649015328606065120900824024310421593359399235988057672348848677267776646709369470632917467495");

mp ein_mp(const mp& x) {
  if (x == 0) return 0;
  mp sum = 0, comp = 0;
  mp m = 1;
  for (int k = 1; k <= 500; ++k) {
    m *= x / k;
    const mp term = (k % 2 ? m : -m) / k;
    const mp t = sum + term;
    if (abs(sum) >= abs(term)) comp += (sum - t) + term; else comp += (term - t) + sum;
    sum = t;
    if (abs(term) < mp(1e-110) * (abs(sum) + 1)) break;
  }
  return sum + comp;
}

mp ei_mp(const mp& x) { return kGamma110 + log(abs(x)) - ein_mp(-x); }

struct Acc {
  mp sum = 0;
  mp peak = 0;  // largest intermediate magnitude, for the noise bound
  void add_term(const mp& t) {
    sum += t;
    note(t);
  }
  void note(const mp& t) {
    const mp a = abs(t);
    if (a > peak) peak = a;
  }
};

// E_{n,a}(w) = int e^{aw} w^{-(n+1)} dw
//           = -sum_{j=1}^{n} a^{j-1} e^{aw} / ([n]_{j dn} w^{n+1-j}) + a^n Ei(aw)/n!
mp E_anti(int n, const mp& a, const mp& w, const mp& eaw, const mp& ei_aw, Acc& acc_mag) {
  mp tot = 0;
  mp apow = 1;        // a^{j-1}
  mp fall = 1;        // [n]_{j dn}
  mp wpow = pow(w, n);  // w^{n+1-j} for j=1
  for (int j = 1; j <= n; ++j) {
    fall *= (n - j + 1);
    const mp term = -apow * eaw / (fall * wpow);
    tot += term;
    acc_mag.note(term);
    apow *= a;
    wpow /= w;
  }
  mp nfact = 1;
  for (int i = 2; i <= n; ++i) nfact *= i;
  const mp term = apow * ei_aw / nfact;
  tot += term;
  acc_mag.note(term);
  return tot;
}

ExplicitEiResult finish(const Acc& acc, const mp& scale, const mp& last_term, const mp& ratio,
                        int terms) {
  const mp eps = std::numeric_limits<mp>::epsilon();
  const mp noise = acc.peak * eps * 64 * abs(scale);
  mp r = ratio;
  if (!(r < mp("0.95"))) r = mp("0.95");
  const mp trunc = abs(scale) * abs(last_term) * r / (1 - r);
  const mp value = scale * acc.sum;
  ExplicitEiResult out;
  out.value = static_cast<double>(value);
  out.err_estimate = static_cast<double>(noise + trunc);
  out.converged =
      out.err_estimate <= 1e-6 * std::max(1.0, std::abs(out.value));
  out.terms_used = terms;
  return out;
}

}  // namespace

ExplicitEiResult a_explicit_ei(double lambda, double s, int kmax) {
  if (!(lambda > 0.0) || lambda > 1.0)
    throw std::domain_error("a_explicit_ei: requires 0 < lambda <= 1");
  if (!(s >= 0.0) || s >= 1.0) throw std::domain_error("a_explicit_ei: requires 0 <= s < 1");
  if (kmax < 1 || kmax > 40) throw std::invalid_argument("a_explicit_ei: kmax in [1,40]");
  const mp lam(lambda), sm(s);
  const mp el = exp(lam);
  const mp base = 1 + sm * el;      // 1 + s e^lambda
  const mp scale = (lambda == 1.0) ? el : (lam - 1) * el;

  // binomial triangle in mp
  std::vector<std::vector<mp>> C(kmax + 1, std::vector<mp>(kmax + 1, 0));
  for (int n = 0; n <= kmax; ++n) {
    C[n][0] = 1;
    for (int k = 1; k <= n; ++k) C[n][k] = C[n - 1][k - 1] + (k <= n - 1 ? C[n - 1][k] : mp(0));
  }

  Acc acc;
  mp prev_term = 0, last_term = 0, ratio = 0;
  int k_used = 0;
  for (int k = 0; k <= kmax; ++k) {
    // I_k = sum_j C(k,j)(-1)^{k-j} J_{j,k-j}(s)
    mp Ik = 0;
    for (int j = 0; j <= k; ++j) {
      const int m = k - j;
      mp J;
      if (j == 0) {
        J = (pow(base, m + 1) - 1) / (el * (m + 1));
      } else {
        const mp a = lam * j;
        const mp eas = exp(a * sm);
        mp tot = 0;
        mp epow = 1;   // e^{lambda i}
        mp fall = 1;   // [m]_{i dn}
        mp apow = a;   // (lambda j)^{i+1}
        for (int i = 0; i <= m; ++i) {
          if (i > 0) {
            epow *= el;
            fall *= (m - i + 1);
            apow *= a;
          }
          const mp term =
              (i % 2 ? mp(-1) : mp(1)) * epow * fall / apow * (eas * pow(base, m - i) - 1);
          tot += term;
          acc.note(term * C[k][j]);
        }
        J = tot;
      }
      Ik += C[k][j] * ((k - j) % 2 ? -J : J);
    }
    const mp term = (k % 2 ? -Ik : Ik);
    acc.add_term(term);
    k_used = k;
    if (k >= 2) {
      ratio = (abs(prev_term) > 0) ? abs(term) / abs(prev_term) : mp(0);
      if (abs(term) < mp(1e-30) * (1 + abs(acc.sum))) { last_term = term; break; }
    }
    prev_term = term;
    last_term = term;
  }
  return finish(acc, scale, last_term, ratio, k_used);
}

namespace {

// shared machinery for the two Theorem-3 style expansions about s = 1
struct Near1Context {
  mp lam, w2, w1;
  std::vector<mp> ei2, ei1;    // Ei(lam j w) at w2, w1
  std::vector<mp> e2, e1;      // e^{lam j w}
  std::vector<std::vector<mp>> C;

  Near1Context(double lambda, double s, int nmax)
      : lam(lambda), w2(mp(s) - 1), w1(-1) {
    ei2.resize(nmax + 1);
    ei1.resize(nmax + 1);
    e2.resize(nmax + 1);
    e1.resize(nmax + 1);
    for (int j = 1; j <= nmax; ++j) {
      const mp a = lam * j;
      ei2[j] = ei_mp(a * w2);
      ei1[j] = ei_mp(a * w1);
      e2[j] = exp(a * w2);
      e1[j] = exp(a * w1);
    }
    C.assign(nmax + 1, std::vector<mp>(nmax + 1, 0));
    for (int n = 0; n <= nmax; ++n) {
      C[n][0] = 1;
      for (int k = 1; k <= n; ++k) C[n][k] = C[n - 1][k - 1] + (k <= n - 1 ? C[n - 1][k] : mp(0));
    }
  }

  // V(k,j) = definite integral of e^{lam j w} / w^{k+1} over [w1, w2]
  mp V(int k, int j, Acc& acc) const {
    if (j == 0) {
      if (k == 0) return log(-w2) - log(-w1);
      return (-pow(w2, -k) + pow(w1, -k)) / k;
    }
    const mp a = lam * j;
    if (k == 0) return ei2[j] - ei1[j];
    return E_anti(k, a, w2, e2[j], ei2[j], acc) - E_anti(k, a, w1, e1[j], ei1[j], acc);
  }
};

}  // namespace

ExplicitEiResult g_explicit_ei(double lambda, double s, int nmax) {
  if (!(lambda > 0.0) || lambda >= 1.0)
    throw std::domain_error("g_explicit_ei: requires 0 < lambda < 1");
  if (!(s >= 0.0) || s >= 1.0) throw std::domain_error("g_explicit_ei: requires 0 <= s < 1");
  if (nmax < 1 || nmax > 40) throw std::invalid_argument("g_explicit_ei: nmax in [1,40]");
  Near1Context ctx(lambda, s, nmax);
  const mp c = ctx.lam / (1 - ctx.lam);

  Acc acc;
  mp prev = 0, last = 0, ratio = 0;
  int used = 0;
  mp cpow = 1;
  for (int n = 1; n <= nmax; ++n) {
    cpow *= c;
    mp inner_n = 0;
    mp lpow = 1;  // lambda^k
    for (int k = 0; k <= n; ++k) {
      if (k > 0) lpow *= ctx.lam;
      mp innerj = 0;
      for (int j = 0; j <= k; ++j) {
        const mp v = ctx.V(k, j, acc);
        innerj += ctx.C[k][j] * ((k - j) % 2 ? -v : v);
      }
      const mp term = ctx.C[n][k] * ((n - k) % 2 ? -innerj : innerj) / lpow;
      inner_n += term;
      acc.note(term * cpow);
    }
    const mp term = cpow * inner_n;
    acc.add_term(term);
    used = n;
    if (n >= 2) {
      ratio = (abs(prev) > 0) ? abs(term) / abs(prev) : mp(0);
      if (abs(term) < mp(1e-30) * (1 + abs(acc.sum))) { last = term; break; }
    }
    prev = term;
    last = term;
  }
  return finish(acc, mp(1), last, ratio, used);
}

ExplicitEiResult d_explicit_ei(double lambda, double s, int nmax) {
  if (!(lambda > 0.0) || lambda >= 1.0)
    throw std::domain_error("d_explicit_ei: requires 0 < lambda < 1");
  if (!(s >= 0.0) || s >= 1.0) throw std::domain_error("d_explicit_ei: requires 0 <= s < 1");
  if (nmax < 1 || nmax > 40) throw std::invalid_argument("d_explicit_ei: nmax in [1,40]");
  Near1Context ctx(lambda, s, nmax);

  Acc acc;
  mp prev = 0, last = 0, ratio = 0;
  int used = 0;
  for (int n = 1; n <= nmax; ++n) {
    // (-1)^n int dx/(x-1)^{n+1} = (-1)^n [ -w^{-n}/n ]_{w1}^{w2}
    mp Dn = ((n % 2) ? mp(-1) : mp(1)) * (-pow(ctx.w2, -n) + pow(ctx.w1, -n)) / n;
    for (int k = 1; k <= n; ++k) {
      const mp a = ctx.lam * k;
      const mp v =
          E_anti(n, a, ctx.w2, ctx.e2[k], ctx.ei2[k], acc) -
          E_anti(n, a, ctx.w1, ctx.e1[k], ctx.ei1[k], acc);
      Dn += ctx.C[n][k] * ((n - k) % 2 ? -v : v);
    }
    acc.add_term(Dn);
    used = n;
    if (n >= 2) {
      ratio = (abs(prev) > 0) ? abs(Dn) / abs(prev) : mp(0);
      if (abs(Dn) < mp(1e-30) * (1 + abs(acc.sum))) { last = Dn; break; }
    }
    prev = Dn;
    last = Dn;
  }
  return finish(acc, mp(1), last, ratio, used);
}

double g_n1_term(double lambda, double s) {
  if (!(lambda > 0.0) || lambda >= 1.0) throw std::domain_error("g_n1_term: 0 < lambda < 1");
  if (!(s >= 0.0) || s >= 1.0) throw std::domain_error("g_n1_term: 0 <= s < 1");
  Near1Context ctx(lambda, s, 1);
  Acc acc;
  // n=1 of the G expansion: (lam/(1-lam)) * sum_{k=0}^1 ...
  const mp c = ctx.lam / (1 - ctx.lam);
  mp inner = 0;
  mp lpow = 1;
  for (int k = 0; k <= 1; ++k) {
    if (k > 0) lpow *= ctx.lam;
    mp innerj = 0;
    for (int j = 0; j <= k; ++j) {
      const mp v = ctx.V(k, j, acc);
      innerj += ctx.C[k][j] * ((k - j) % 2 ? -v : v);
    }
    inner += ctx.C[1][k] * ((1 - k) % 2 ? -innerj : innerj) / lpow;
  }
  return static_cast<double>(c * inner);
}

double g_n1_term_closed_ein(double lambda, double s) {
  auto printed = [&](double x) {
    if (x == 1.0) throw std::domain_error("g_n1_term_closed_ein: s = 1");
    return (std::expm1(lambda * (x - 1.0)) / (1.0 - lambda)) * (-1.0 / (x - 1.0)) -
           lambda / (1.0 - lambda) * ein(lambda * (1.0 - x));
  };
  return printed(s) - printed(0.0);
}

}  // namespace koenigs

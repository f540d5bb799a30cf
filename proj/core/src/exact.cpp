#include "koenigs/exact.hpp"

#include <stdexcept>

#include "koenigs/specfun.hpp"

namespace koenigs {

BigInt stirling2(int n, int k) {
  if (n < 0 || k < 0) throw std::invalid_argument("stirling2: negative index");
  if (n > 64 || k > 64) throw std::range_error("stirling2: index above the n,k <= 64 guard");
  if (k > n) return 0;
  if (n == 0) return 1;  // S(0,0)
  if (k == 0) return 0;
  // triangle: S(n,k) = k S(n-1,k) + S(n-1,k-1)
  std::vector<BigInt> row(k + 1, 0);
  row[0] = 1;  // S(0,0)
  for (int m = 1; m <= n; ++m) {
    for (int j = std::min(m, k); j >= 1; --j) {
      row[j] = j * row[j] + row[j - 1];
    }
    row[0] = 0;
  }
  return row[k];
}

BigInt binomial_exact(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return r;
}

BigRational bell_partial_exact(int n, int k, const std::vector<BigRational>& x) {
  return bell_partial<BigRational>(n, k, x);
}

std::vector<BigRational> critical_c_exact(int N) {
  std::vector<BigRational> c(N + 1);
  c[0] = 1;
  for (int n = 1; n <= N; ++n) {
    BigRational s = 0;
    for (int k = 1; k <= n; ++k) {
      s += BigRational(binomial_exact(n, k)) * c[n - k] / BigRational((k + 1) * (k + 2));
    }
    c[n] = -2 * s;
  }
  return c;
}

std::vector<BigRational> reciprocal_exact(const std::vector<BigRational>& p, int N) {
  if (static_cast<int>(p.size()) < N + 1) throw std::invalid_argument("reciprocal_exact: short p");
  std::vector<BigRational> a(N + 1);
  a[0] = 1;
  for (int n = 1; n <= N; ++n) {
    BigRational s = 0;
    for (int k = 1; k <= n; ++k) {
      s += BigRational(binomial_exact(n, k)) * p[k] * a[n - k];
    }
    a[n] = -s;
  }
  return a;
}

}  // namespace koenigs

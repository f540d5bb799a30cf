#include <doctest.h>

#include <vector>

#include "koenigs/exact.hpp"

using namespace koenigs;

TEST_CASE("stirling2: values, edges, range guard") {
  CHECK(stirling2(0, 0) == 1);
  CHECK(stirling2(5, 5) == 1);
  CHECK(stirling2(5, 2) == 15);
  CHECK(stirling2(7, 0) == 0);
  CHECK(stirling2(4, 7) == 0);
  CHECK(stirling2(10, 3) == 9330);
  CHECK_THROWS_AS(stirling2(65, 2), std::range_error);
  CHECK_THROWS_AS(stirling2(-1, 2), std::invalid_argument);
}

TEST_CASE("stirling2 exhaustively vs set-partition counts at n=5") {
  // S(5,2)=15, S(5,3)=25, S(5,4)=10 against brute-force partition enumeration:
  // place 5 labelled elements into k unlabelled nonempty blocks by direct count
  // using the recurrence-free formula sum over surjections / k!.
  auto surjections = [](int n, int k) {
    // k^n - C(k,1)(k-1)^n + ... inclusion-exclusion, exact in BigInt
    BigInt total = 0;
    for (int j = 0; j <= k; ++j) {
      BigInt term = binomial_exact(k, j);
      BigInt pw = 1;
      for (int i = 0; i < n; ++i) pw *= (k - j);
      term *= pw;
      total += (j % 2 == 0) ? term : -term;
    }
    return total;
  };
  auto fact = [](int k) {
    BigInt f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
  };
  for (int k = 1; k <= 5; ++k) {
    CHECK(stirling2(5, k) == surjections(5, k) / fact(k));
  }
}

TEST_CASE("Bell/Stirling cross identity, exact rationals, n <= 12") {
  // B_{n,k}(g) with g_m = 1/(m+1) equals
  // n!/(n+k)! sum_{j=0}^k (-1)^{k-j} C(n+k, k-j) S(n+j, j)
  std::vector<BigRational> g;
  for (int m = 1; m <= 12; ++m) g.emplace_back(BigInt(1), BigInt(m + 1));

  auto fact = [](int k) {
    BigInt f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
  };
  for (int n = 1; n <= 12; ++n) {
    for (int k = 1; k <= n; ++k) {
      BigRational rhs = 0;
      for (int j = 0; j <= k; ++j) {
        BigRational term = BigRational(binomial_exact(n + k, k - j) * stirling2(n + j, j));
        rhs += ((k - j) % 2 == 0) ? term : -term;
      }
      rhs *= BigRational(fact(n), fact(n + k));
      CHECK(bell_partial_exact(n, k, g) == rhs);
    }
  }
}

TEST_CASE("critical c_k rationals match the closed values") {
  const auto c = critical_c_exact(6);
  CHECK(c[0] == BigRational(1));
  CHECK(c[1] == BigRational(-1, 3));
  CHECK(c[2] == BigRational(1, 18));
  CHECK(c[3] == BigRational(1, 90));
  CHECK(c[4] == BigRational(-1, 270));
  CHECK(c[5] == BigRational(-5, 1134));
}

TEST_CASE("reciprocal recurrence vs Bell representation, exact") {
  // a_n = sum_k B_{n,k}(p)(-1)^k k!   for a rational test sequence
  std::vector<BigRational> p;
  for (int n = 1; n <= 12; ++n) p.emplace_back(BigInt(n % 3 + 1), BigInt(n + 2));
  std::vector<BigRational> pfull(13);
  for (int n = 1; n <= 12; ++n) pfull[n] = p[n - 1];

  const auto a = reciprocal_exact(pfull, 12);
  auto fact = [](int k) {
    BigInt f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
  };
  for (int n = 1; n <= 12; ++n) {
    BigRational bell = 0;
    for (int k = 1; k <= n; ++k) {
      BigRational term = bell_partial_exact(n, k, p) * BigRational(fact(k));
      bell += (k % 2 == 0) ? term : -term;
    }
    CHECK(a[n] == bell);
  }
}

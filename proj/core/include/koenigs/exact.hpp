#ifndef KOENIGS_EXACT_HPP
#define KOENIGS_EXACT_HPP

// Exact integer/rational arithmetic surface: Stirling numbers of the second
// kind, exact Bell polynomials, and the rational coefficient sequences of the
// critical near-1 decomposition. Multiprecision types are kept behind this
// header; implementations live in exact.cpp.

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace koenigs {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// S(n,k), exact, by the triangle recurrence. Guarded to n,k <= 64.
BigInt stirling2(int n, int k);

BigInt binomial_exact(int n, int k);

// B_{n,k} over an exact rational sequence.
BigRational bell_partial_exact(int n, int k, const std::vector<BigRational>& x);

// c_0..c_N of the critical reciprocal 1/(1+2*phi), phi_k = 1/((k+1)(k+2)).
std::vector<BigRational> critical_c_exact(int N);

// a_0..a_N of the reciprocal recurrence for a rational p-sequence
// (used by the exact cross-identity tests).
std::vector<BigRational> reciprocal_exact(const std::vector<BigRational>& p, int N);

}  // namespace koenigs

#endif  // KOENIGS_EXACT_HPP

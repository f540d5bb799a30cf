#ifndef KOENIGS_NUMERIC_HPP
#define KOENIGS_NUMERIC_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace koenigs {

// Euler-Mascheroni constant, stored as a literal (no runtime computation).
inline constexpr double euler_gamma = 0.5772156649015328606065;

// Raised when a computation detects loss of validity (sign flips, divergent
// tails, solver failure) rather than a bad argument.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// Neumaier compensated accumulator. Mandatory for the alternating series in
// this library; the compensation also makes grid sums reproducible.
template <class Real>
class CompensatedSum {
 public:
  void add(Real term) {
    using std::abs;
    const Real t = sum_ + term;
    if (abs(sum_) >= abs(term)) {
      comp_ += (sum_ - t) + term;
    } else {
      comp_ += (term - t) + sum_;
    }
    sum_ = t;
  }
  Real value() const { return sum_ + comp_; }

 private:
  Real sum_{0};
  Real comp_{0};
};

// Pascal triangle row cache; values are exact until they exceed the mantissa
// (n ~ 57 in binary64), approximate with relative eps beyond.
template <class Real>
class BinomialTable {
 public:
  explicit BinomialTable(int nmax) : nmax_(nmax), c_((nmax + 1) * (nmax + 2) / 2) {
    c_[idx(0, 0)] = Real(1);
    for (int n = 1; n <= nmax; ++n) {
      c_[idx(n, 0)] = Real(1);
      c_[idx(n, n)] = Real(1);
      for (int k = 1; k < n; ++k) {
        c_[idx(n, k)] = c_[idx(n - 1, k - 1)] + c_[idx(n - 1, k)];
      }
    }
  }
  Real operator()(int n, int k) const {
    if (k < 0 || k > n) return Real(0);
    return c_[idx(n, k)];
  }
  int nmax() const { return nmax_; }

 private:
  static std::size_t idx(int n, int k) { return std::size_t(n) * (n + 1) / 2 + k; }
  int nmax_;
  std::vector<Real> c_;
};

namespace detail {

template <class Real>
bool is_finite(Real x) {
  using std::isfinite;
  return isfinite(x);
}

}  // namespace detail

}  // namespace koenigs

#endif  // KOENIGS_NUMERIC_HPP

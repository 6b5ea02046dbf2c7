#ifndef AHS_COMBINAT_HPP
#define AHS_COMBINAT_HPP

#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ahs/logform.hpp"
#include "ahs/rational.hpp"

namespace ahs {

// Desk-scale guard rails for grid sweeps.
struct GridKey {
  int n = 0;
  int D = 0;
  std::optional<int> delta;

  static constexpr int kMaxN = 6;
  static constexpr int kMaxD = 200;

  void check() const {
    if (n < 0 || n > kMaxN || D < 0 || D > kMaxD)
      throw std::domain_error("GridKey outside desk-scale bounds (n<=6, D<=200)");
    if (delta && *delta < 1) throw std::domain_error("GridKey: delta must be >= 1");
  }
};

struct CapExceeded : std::domain_error {
  using std::domain_error::domain_error;
};

// r(n,D) = C(n+D, D), the rank of the space of degree-D forms in n+1 variables.
inline Int rank_e(long n, long D) {
  if (n < 0 || D < 0) throw std::domain_error("rank_e: n, D must be >= 0");
  return binomial(static_cast<unsigned long>(n + D), static_cast<unsigned long>(D));
}

// Rank of the quotient in 0 -> E_{D-delta} -> E_D -> F_D -> 0.
inline Int rank_fd(long n, long delta, long D) {
  if (delta < 1 || D < delta) throw std::domain_error("rank_fd: need D >= delta >= 1");
  return rank_e(n, D) - rank_e(n, D - delta);
}

// C(n,D) = sum over compositions i_0+...+i_n = D of log(i_0!...i_n!/D!),
// by direct enumeration.  Serves as the oracle for c_exact.
inline LogForm c_bruteforce(long n, long D, long cap = 2000000) {
  if (n < 0 || D < 0) throw std::domain_error("c_bruteforce: n, D must be >= 0");
  if (rank_e(n, D) > cap)
    throw CapExceeded("c_bruteforce: composition count exceeds cap");
  if (n == 0 || D <= 1) return LogForm::zero();

  // Accumulate, over all compositions, how many parts take each value k;
  // the sum is then sum_k mult[k]*log(k!) - r(n,D)*log(D!).  The first n
  // parts run as an odometer with sum <= D, the last part is the remainder.
  std::vector<unsigned long> mult(static_cast<size_t>(D + 1), 0);
  std::vector<long> p(static_cast<size_t>(n), 0);
  long total = 0;
  for (;;) {
    ++mult[D - total];
    for (long j = 0; j < n; ++j) ++mult[p[j]];
    long j = n - 1;
    while (j >= 0) {
      if (total < D) {
        ++p[j];
        ++total;
        break;
      }
      total -= p[j];
      p[j] = 0;
      --j;
    }
    if (j < 0) break;
  }

  LogForm acc;
  for (long k = 2; k <= D; ++k)
    if (mult[k] > 0)
      acc += LogForm::from_log_factorial(k).scaled(rat(Int(mult[k])));
  acc -= LogForm::from_log_factorial(D).scaled(rat(rank_e(n, D)));
  return acc;
}

// Closed form: every part value k occurs (n+1)*C(D-k+n-1, n-1) times across
// all (n+1)-part compositions of D, hence
//   C(n,D) = (n+1) * sum_{k=2}^{D} C(D-k+n-1, n-1) log(k!) - r(n,D) log(D!).
inline LogForm c_exact(long n, long D) {
  if (n < 0 || D < 0) throw std::domain_error("c_exact: n, D must be >= 0");
  if (n == 0 || D <= 1) return LogForm::zero();
  LogForm acc;
  for (long k = 2; k <= D; ++k) {
    Int count = binomial(static_cast<unsigned long>(D - k + n - 1),
                         static_cast<unsigned long>(n - 1));
    if (count == 0) continue;
    acc += LogForm::from_log_factorial(k).scaled(rat(count * (n + 1)));
  }
  acc -= LogForm::from_log_factorial(D).scaled(rat(rank_e(n, D)));
  return acc;
}

inline LogForm log_binomial(long n, long k) {
  if (k < 0 || k > n) throw std::domain_error("log_binomial: need 0 <= k <= n");
  return LogForm::from_log_factorial(n) - LogForm::from_log_factorial(k) -
         LogForm::from_log_factorial(n - k);
}

// Q(n,D) computed by both of its exact expressions,
//   Q = sum_{m=0}^{D} r(n-1,m) log C(D,m)
//     = sum_{m=2}^{D} (r(n,m-1) - r(n,D-m)) log m,
// which must agree structurally.  A mismatch is an internal error.
inline LogForm q_exact(long n, long D) {
  if (n < 1 || D < 0) throw std::domain_error("q_exact: need n >= 1, D >= 0");
  LogForm by_binom;
  for (long m = 0; m <= D; ++m)
    by_binom += log_binomial(D, m).scaled(rat(rank_e(n - 1, m)));
  LogForm by_parts;
  for (long m = 2; m <= D; ++m)
    by_parts += log_of_int(m, rat(rank_e(n, m - 1) - rank_e(n, D - m)));
  if (!(by_binom == by_parts))
    throw std::logic_error("q_exact: the two defining formulas disagree");
  return by_binom;
}

// S(n,D) = sum_{m=2}^{D} ((m-1)^n - (D-m)^n) log m; empty sum for D < 2.
inline LogForm s_exact(long n, long D) {
  if (n < 1) throw std::domain_error("s_exact: need n >= 1");
  LogForm acc;
  for (long m = 2; m <= D; ++m) {
    Int coef = pow_int(Int(m - 1), static_cast<unsigned long>(n)) -
               pow_int(Int(D - m), static_cast<unsigned long>(n));
    if (coef != 0) acc += log_of_int(m, rat(coef));
  }
  return acc;
}

}  // namespace ahs

#endif  // AHS_COMBINAT_HPP

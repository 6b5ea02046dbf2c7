#ifndef AHS_RATIONAL_HPP
#define AHS_RATIONAL_HPP

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>

namespace ahs {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Rat rat(const Int& num, const Int& den = 1) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

// Parses "p/q" or "p" with optional sign; decimal digits only.
inline Rat parse_rat(const std::string& s) {
  Rat q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("not a rational: '" + s + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rat& q) { return q.get_str(); }
inline std::string to_string(const Int& z) { return z.get_str(); }

inline Int binomial(const Int& n, unsigned long k) {
  Int r;
  mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

inline Int binomial(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline Int factorial(unsigned long n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rat pow_rat(const Rat& base, long e) {
  if (e == 0) return rat(1);
  Rat r;
  unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(base.get_mpq_t()), a);
  mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(base.get_mpq_t()), a);
  r.canonicalize();
  if (e < 0) {
    if (r == 0) throw std::domain_error("0 raised to negative power");
    r = 1 / r;
  }
  return r;
}

inline bool is_prime(const Int& p) {
  return mpz_probab_prime_p(p.get_mpz_t(), 40) != 0;
}

namespace detail_factor {

// Brent-cycle Pollard rho; returns a nontrivial factor or 0 on giving up.
inline Int pollard_rho(const Int& n, unsigned long seed) {
  gmp_randstate_t st;
  gmp_randinit_mt(st);
  gmp_randseed_ui(st, seed);
  Int y, c, m = 128, g = 1, r = 1, q = 1, x, ys;
  mpz_urandomm(y.get_mpz_t(), st, n.get_mpz_t());
  mpz_urandomm(c.get_mpz_t(), st, n.get_mpz_t());
  if (c == 0) c = 1;
  long budget = 1 << 22;
  while (g == 1 && budget > 0) {
    x = y;
    for (Int i = 0; i < r; ++i) y = (y * y + c) % n;
    Int k = 0;
    while (k < r && g == 1) {
      ys = y;
      Int lim = std::min(m, Int(r - k));
      for (Int i = 0; i < lim; ++i) {
        y = (y * y + c) % n;
        q = q * (x > y ? x - y : y - x) % n;
        --budget;
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += m;
    }
    r *= 2;
  }
  if (g == n) {
    // Backtrack one step at a time.
    do {
      ys = (ys * ys + c) % n;
      Int d = x > ys ? x - ys : ys - x;
      mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  gmp_randclear(st);
  if (g == n || g == 1) return 0;
  return g;
}

inline void factor_into(Int x, std::map<Int, long>& out, int depth = 0) {
  if (x == 1) return;
  if (is_prime(x)) {
    out[x] += 1;
    return;
  }
  if (depth > 64) throw std::domain_error("factor: recursion depth exceeded");
  Int g = 0;
  for (unsigned long seed = 1; seed <= 8 && g == 0; ++seed) g = pollard_rho(x, seed);
  if (g == 0)
    throw std::domain_error("factor: could not split composite " + x.get_str());
  factor_into(g, out, depth + 1);
  factor_into(x / g, out, depth + 1);
}

}  // namespace detail_factor

// Prime factorization: trial division for the desk-scale part, Pollard rho
// for medium cofactors.  Genuinely hard composites (two large prime factors)
// raise a domain error rather than returning a wrong decomposition.
inline std::map<Int, long> factor(Int x) {
  if (x <= 0) throw std::domain_error("factor: argument must be positive");
  std::map<Int, long> out;
  long v = static_cast<long>(mpz_scan1(x.get_mpz_t(), 0));
  if (v > 0) {
    out[2] = v;
    x >>= v;
  }
  for (Int p = 3; p * p <= x && p < 100000; p += 2) {
    if (!mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t())) continue;
    long e = 0;
    do {
      mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
      ++e;
    } while (mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t()));
    out[p] = e;
  }
  if (x > 1) detail_factor::factor_into(x, out);
  return out;
}

// Largest integer t with t*t <= x.
inline Int isqrt(const Int& x) {
  if (x < 0) throw std::domain_error("isqrt of negative");
  Int r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

// Largest integer strictly below sqrt(x).
inline Int isqrt_strict(const Int& x) {
  Int t = isqrt(x);
  if (t * t == x) t -= 1;
  return t;
}

// Floor of the k-th root.
inline Int root_floor(const Int& x, unsigned long k) {
  if (x < 0) throw std::domain_error("root of negative");
  Int r;
  mpz_root(r.get_mpz_t(), x.get_mpz_t(), k);
  return r;
}

// Smallest integer strictly greater than D^(a/b), for positive integers.
// Exact: m > D^(a/b) iff m^b > D^a.
inline Int bracket_pow_plus(const Int& D, unsigned long a, unsigned long b) {
  if (D <= 0 || b == 0) throw std::domain_error("bracket_pow_plus: bad arguments");
  return root_floor(pow_int(D, a), b) + 1;
}

inline Rat harmonic(long n) {
  if (n < 1) throw std::domain_error("harmonic: n must be >= 1");
  Rat h = 0;
  for (long k = 1; k <= n; ++k) h += rat(1, k);
  return h;
}

}  // namespace ahs

#endif  // AHS_RATIONAL_HPP

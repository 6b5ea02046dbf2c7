#ifndef AHS_INTERVAL_HPP
#define AHS_INTERVAL_HPP

#include <mpfr.h>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "ahs/rational.hpp"

namespace ahs {

// Closed interval [lo, hi] with arbitrary-precision binary float endpoints.
// Every operation rounds outward, so an Interval built from enclosures of
// real values encloses the exact real result.  Endpoint precision is fixed
// per value; combining operands takes the max of their precisions.
class Interval {
 public:
  static constexpr long kMinPrec = 16;

  Interval() : Interval(64) {
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
  }

  explicit Interval(long prec) {
    prec_ = std::max(prec, kMinPrec);
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
  }

  Interval(const Interval& o) : Interval(o.prec_) {
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }

  Interval(Interval&& o) noexcept {
    prec_ = o.prec_;
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
  }

  Interval& operator=(Interval o) {
    std::swap(prec_, o.prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
  }

  ~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
  }

  static Interval zero(long prec = 64) { return Interval(prec); }

  static Interval from_rat(const Rat& q, long prec) {
    Interval r(prec);
    mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
    return r;
  }

  static Interval from_int(const Int& z, long prec) {
    Interval r(prec);
    mpfr_set_z(r.lo_, z.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_, z.get_mpz_t(), MPFR_RNDU);
    return r;
  }

  // Enclosure of log(q), q > 0.  log is increasing, so directed endpoints
  // of the argument map to directed endpoints of the result.
  static Interval log_rat(const Rat& q, long prec) {
    if (q <= 0) throw std::domain_error("log of non-positive rational");
    Interval x = from_rat(q, prec + 8);
    Interval r(prec);
    mpfr_log(r.lo_, x.lo_, MPFR_RNDD);
    mpfr_log(r.hi_, x.hi_, MPFR_RNDU);
    return r;
  }

  static Interval pi(long prec) {
    Interval r(prec);
    mpfr_const_pi(r.lo_, MPFR_RNDD);
    mpfr_const_pi(r.hi_, MPFR_RNDU);
    return r;
  }

  static Interval log_pi(long prec) {
    Interval p = pi(prec + 8);
    Interval r(prec);
    mpfr_log(r.lo_, p.lo_, MPFR_RNDD);
    mpfr_log(r.hi_, p.hi_, MPFR_RNDU);
    return r;
  }

  static Interval euler_e(long prec) {
    Interval r(prec);
    mpfr_t one;
    mpfr_init2(one, 32);
    mpfr_set_ui(one, 1, MPFR_RNDN);
    mpfr_exp(r.lo_, one, MPFR_RNDD);
    mpfr_exp(r.hi_, one, MPFR_RNDU);
    mpfr_clear(one);
    return r;
  }

  long precision() const { return prec_; }

  Interval& operator+=(const Interval& o) {
    Interval r(std::max(prec_, o.prec_));
    mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
    *this = std::move(r);
    return *this;
  }

  Interval& operator-=(const Interval& o) {
    Interval r(std::max(prec_, o.prec_));
    mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
    *this = std::move(r);
    return *this;
  }

  friend Interval operator+(Interval a, const Interval& b) { return a += b; }
  friend Interval operator-(Interval a, const Interval& b) { return a -= b; }

  Interval operator-() const {
    Interval r(prec_);
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
  }

  friend Interval operator*(const Interval& a, const Interval& b) {
    long prec = std::max(a.prec_, b.prec_);
    Interval r(prec);
    mpfr_t t;
    mpfr_init2(t, prec);
    bool first = true;
    auto consider = [&](const mpfr_t x, const mpfr_t y) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    };
    consider(a.lo_, b.lo_);
    consider(a.lo_, b.hi_);
    consider(a.hi_, b.lo_);
    consider(a.hi_, b.hi_);
    mpfr_clear(t);
    return r;
  }

  // Multiplication by an exact rational scalar.
  Interval scaled(const Rat& c, long prec = 0) const {
    if (prec == 0) prec = prec_;
    Interval r(prec);
    if (c >= 0) {
      mpfr_mul_q(r.lo_, lo_, c.get_mpq_t(), MPFR_RNDD);
      mpfr_mul_q(r.hi_, hi_, c.get_mpq_t(), MPFR_RNDU);
    } else {
      mpfr_mul_q(r.lo_, hi_, c.get_mpq_t(), MPFR_RNDD);
      mpfr_mul_q(r.hi_, lo_, c.get_mpq_t(), MPFR_RNDU);
    }
    return r;
  }

  Interval exp() const {
    Interval r(prec_);
    mpfr_exp(r.lo_, lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, hi_, MPFR_RNDU);
    return r;
  }

  Interval sqrt() const {
    if (mpfr_sgn(lo_) < 0) throw std::domain_error("sqrt of interval below zero");
    Interval r(prec_);
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    return r;
  }

  friend Interval operator/(const Interval& a, const Interval& b) {
    if (!(mpfr_sgn(b.lo_) > 0 || mpfr_sgn(b.hi_) < 0))
      throw std::domain_error("interval division by an interval containing zero");
    long prec = std::max(a.prec_, b.prec_);
    Interval r(prec);
    mpfr_t t;
    mpfr_init2(t, prec);
    bool first = true;
    auto consider = [&](const mpfr_t x, const mpfr_t y) {
      mpfr_div(t, x, y, MPFR_RNDD);
      if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_div(t, x, y, MPFR_RNDU);
      if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    };
    consider(a.lo_, b.lo_);
    consider(a.lo_, b.hi_);
    consider(a.hi_, b.lo_);
    consider(a.hi_, b.hi_);
    mpfr_clear(t);
    return r;
  }

  bool strictly_positive() const { return mpfr_sgn(lo_) > 0; }
  bool strictly_negative() const { return mpfr_sgn(hi_) < 0; }
  bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

  // a entirely below b with no overlap.
  friend bool strictly_less(const Interval& a, const Interval& b) {
    return mpfr_cmp(a.hi_, b.lo_) < 0;
  }

  // True when this interval lies inside o (endpoint equality allowed).
  bool nested_in(const Interval& o) const {
    return mpfr_cmp(o.lo_, lo_) <= 0 && mpfr_cmp(hi_, o.hi_) <= 0;
  }

  bool contains(const Rat& q) const {
    return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
  }

  double lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  double mid_double() const { return (lo_double() + hi_double()) / 2; }

  // Exact rational value of an endpoint (every finite binary float is rational).
  Rat lo_rat() const { return endpoint_rat(lo_); }
  Rat hi_rat() const { return endpoint_rat(hi_); }

  std::string lo_string(int digits = 20) const { return fmt(lo_, digits, MPFR_RNDD); }
  std::string hi_string(int digits = 20) const { return fmt(hi_, digits, MPFR_RNDU); }
  std::string to_string(int digits = 20) const {
    return "[" + lo_string(digits) + ", " + hi_string(digits) + "]";
  }

  double width_double() const {
    mpfr_t w;
    mpfr_init2(w, prec_);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    double d = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return d;
  }

 private:
  static Rat endpoint_rat(const mpfr_t x) {
    if (!mpfr_number_p(x)) throw std::domain_error("non-finite interval endpoint");
    Rat q;
    mpfr_get_q(q.get_mpq_t(), x);
    q.canonicalize();
    return q;
  }

  static std::string fmt(const mpfr_t x, int digits, mpfr_rnd_t rnd) {
    char buf[128];
    std::string f = "%." + std::to_string(digits) + "R*g";
    mpfr_snprintf(buf, sizeof buf, f.c_str(), rnd, x);
    return buf;
  }

  long prec_;
  mpfr_t lo_;
  mpfr_t hi_;
};

}  // namespace ahs

#endif  // AHS_INTERVAL_HPP

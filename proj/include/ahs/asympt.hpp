#ifndef AHS_ASYMPT_HPP
#define AHS_ASYMPT_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ahs/certificate.hpp"
#include "ahs/combinat.hpp"
#include "ahs/logform.hpp"

namespace ahs {

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

struct AsymptConfig {
  // Split exponent for the two-scale estimate of S(n,D); any value in
  // ]0, 1/6[ is admissible, 1/12 is the default.
  Rat epsilon = rat(1, 12);
  long precision_bits = 128;

  void validate() const {
    if (!(epsilon > 0 && epsilon < rat(1, 6)))
      throw std::domain_error("epsilon must lie strictly inside ]0, 1/6[");
    if (precision_bits < 16) throw std::domain_error("precision must be >= 16");
  }
};

enum class EnvelopeKind { S, Q, C1, C, A1, A2, A3, A4 };

inline const char* to_string(EnvelopeKind k) {
  switch (k) {
    case EnvelopeKind::S: return "S";
    case EnvelopeKind::Q: return "Q";
    case EnvelopeKind::C1: return "C1";
    case EnvelopeKind::C: return "C";
    case EnvelopeKind::A1: return "A1";
    case EnvelopeKind::A2: return "A2";
    case EnvelopeKind::A3: return "A3";
    case EnvelopeKind::A4: return "A4";
  }
  return "?";
}

struct Envelope {
  LogForm lower;
  LogForm upper;
  GridKey key;
  EnvelopeKind kind = EnvelopeKind::C;
};

// Certified outward rational bounds for the handful of irrational constants
// appearing in the upper remainders (they cannot live in a LogForm).
namespace outward {

inline Rat up(const Interval& i) { return i.hi_rat(); }

// Rational q >= D^{a} for rational exponent a, via exp(a log D).
inline Rat pow_upper(const Int& D, const Rat& a, long prec = 192) {
  return up(Interval::log_rat(rat(D), prec).scaled(a).exp());
}

inline Rat sqrt_upper(const Int& D, long prec = 192) {
  return up(Interval::from_int(D, prec).sqrt());
}

// Rational q >= e / (pi sqrt(n)).
inline Rat e_over_pi_sqrt_upper(long n, long prec = 192) {
  Interval e = Interval::euler_e(prec);
  Interval den = Interval::pi(prec) * Interval::from_int(Int(n), prec).sqrt();
  return up(e / den);
}

inline Rat pi_sq_over_six_upper(long prec = 192) {
  Interval p = Interval::pi(prec);
  return up((p * p).scaled(rat(1, 6)));
}

}  // namespace outward

// ---------------------------------------------------------------------------
// The explicit remainder constants and dominant terms
// ---------------------------------------------------------------------------

// All formulas are exact LogForms in D.  Conventions:
//   log(D + 1/2) = log((2D+1)/2),  H_n = harmonic(n),
//   [x]   = largest integer strictly below x,
//   [x]+  = smallest integer strictly above x.
class Appendix {
 public:
  explicit Appendix(AsymptConfig cfg = {}) : cfg_(cfg) { cfg_.validate(); }

  const AsymptConfig& config() const { return cfg_; }

  // --- first remainder pair: S(n,D) ---------------------------------------

  // A1(n,D) = -2^{n+3} (D+1/2)^{n-1} log(D+1/2)
  //           - (3/2 log(3/2) + 1/2 - 1/2 log(2 pi)).
  LogForm a1_lower(long n, long D) const {
    require(n >= 1 && D >= 1, "A1: need n >= 1, D >= 1");
    LogForm v = log_of_rat(half_shift(D), rat(-pow_int(Int(2), n + 3)) *
                                              pow_rat(half_shift(D), n - 1));
    v -= log_of_rat(rat(3, 2), rat(3, 2));
    v -= LogForm::constant(rat(1, 2));
    v += LogForm::log_two_pi(rat(1, 2));
    return v;
  }

  // A1'(n,D) = 9n(n-1) (D+1/2)^{n-1} log(D+1/2)
  //            + ((n-1) 2^n e / (pi sqrt n)) D^{n-1/2+3eps} log D,
  // with the irrational coefficient replaced by a certified upper rational
  // (sound: it multiplies log D > 0 in an upper remainder).
  LogForm a1_upper(long n, long D) const {
    require(n >= 1 && D >= 1, "A1': need n >= 1, D >= 1");
    LogForm v = log_of_rat(half_shift(D),
                           rat(9 * n * (n - 1)) * pow_rat(half_shift(D), n - 1));
    if (n >= 2) {
      Rat coef = rat((n - 1) * pow_int(Int(2), n)) * outward::e_over_pi_sqrt_upper(n) *
                 outward::pow_upper(Int(D), rat(n) - rat(1, 2) + 3 * cfg_.epsilon);
      v += log_of_int(D, coef);
    }
    return v;
  }

  // --- second remainder pair: Q(n,D) ---------------------------------------

  LogForm a2_lower(long n, long D) const { return a2_impl(n, D, false); }
  LogForm a2_upper(long n, long D) const { return a2_impl(n, D, true); }

  // --- third remainder pair: C(1,D) ----------------------------------------

  // a3(D): the explicit integral display minus the dominant terms
  //   2 int_{3/2}^{D+1/2} x log x dx - (D+1) int_1^{D+1/2} log x dx
  //   - (D+1)(-1 + 1/2 log 2pi)  -  (D^2/2 - (D log D)/2 - (-1 + 1/2 log 2pi) D).
  LogForm a3_small(long D) const {
    require(D >= 1, "a3: need D >= 1");
    Rat x = half_shift(D);  // D + 1/2
    LogForm expl = log_of_rat(x, x * x) - LogForm::constant(x * x / 2);
    expl -= log_of_rat(rat(3, 2), rat(9, 4)) - LogForm::constant(rat(9, 8));
    expl -= (log_of_rat(x, x) - LogForm::constant(x - 1)).scaled(rat(D + 1));
    expl -= (LogForm::constant(rat(-1)) + LogForm::log_two_pi(rat(1, 2))).scaled(rat(D + 1));
    LogForm dom = LogForm::constant(rat(Int(D) * D, 2));
    if (D >= 2) dom -= log_of_int(D, rat(D, 2));
    dom -= (LogForm::constant(rat(-1)) + LogForm::log_two_pi(rat(1, 2))).scaled(rat(D));
    return expl - dom;
  }

  // A3(D) = a3(D) + 1/8(log(3/2)+1) - 1/8(log([sqrt D]+1/2)+1)
  //         + 1/8(log([sqrt D]+1/2)+1) - 1/8(log(D+1/2)+1); the middle pair
  // cancels but is kept in the displayed form.
  LogForm a3_lower(long D) const {
    require(D >= 1, "A3: need D >= 1");  // the recursion for A4 consumes D = 1
    LogForm v = a3_small(D);
    v += (log_of_rat(rat(3, 2)) + LogForm::constant(rat(1))).scaled(rat(1, 8));
    Rat mid = rat(isqrt_strict(Int(D))) + rat(1, 2);
    v -= (log_of_rat(mid) + LogForm::constant(rat(1))).scaled(rat(1, 8));
    v += (log_of_rat(mid) + LogForm::constant(rat(1))).scaled(rat(1, 8));
    v -= (log_of_rat(half_shift(D)) + LogForm::constant(rat(1))).scaled(rat(1, 8));
    return v;
  }

  // A3'(D) = A3(D) + 2 sqrt(D)/3 + sqrt(D) + 1/4 + pi^2/6, with sqrt(D) and
  // pi^2/6 replaced by certified upper rationals.
  LogForm a3_upper(long D) const {
    LogForm v = a3_lower(D);
    Rat root = outward::sqrt_upper(Int(D));
    v += LogForm::constant(root * rat(5, 3) + rat(1, 4) + outward::pi_sq_over_six_upper());
    return v;
  }

  // --- fourth remainder pair: C(n,D), by recursion -------------------------

  // A4(1,D) = A4'(1,D) = -A3(D);
  // A4(n,D)  = sum_{m=1}^D A4(n-1,m)  - A2'(n,D),
  // A4'(n,D) = sum_{m=1}^D A4'(n-1,m) - A2(n,D).
  LogForm a4_lower(long n, long D) { return a4_impl(n, D, false); }
  LogForm a4_upper(long n, long D) { return a4_impl(n, D, true); }

  std::pair<LogForm, LogForm> remainder_pair(EnvelopeKind kind, long n, long D) {
    switch (kind) {
      case EnvelopeKind::A1: return {a1_lower(n, D), a1_upper(n, D)};
      case EnvelopeKind::A2: return {a2_lower(n, D), a2_upper(n, D)};
      case EnvelopeKind::A3: return {a3_lower(D), a3_upper(D)};
      case EnvelopeKind::A4: return {a4_lower(n, D), a4_upper(n, D)};
      default: throw std::domain_error("remainder_pair: not a remainder kind");
    }
  }

  // --- dominant terms -------------------------------------------------------

  // H_n D^{n+1}/(n+1) - D^n log(D)/2 + (-1 + 1/2 log(2pi) - 1/(2n)) D^n.
  LogForm dominant_s(long n, long D) const {
    LogForm v = LogForm::constant(harmonic(n) * rat(pow_int(Int(D), n + 1), n + 1));
    Rat dn = rat(pow_int(Int(D), n));
    if (D >= 2) v -= log_of_int(D, dn / 2);
    v += (LogForm::constant(rat(-1) - rat(1, 2 * n)) + LogForm::log_two_pi(rat(1, 2)))
             .scaled(dn);
    return v;
  }

  // H_n D^{n+1}/(n+1)! - D^n log(D)/(2 n!)
  //   + (1/n!)(-1 + 1/2 log(2pi) - 1/(2n) + (n+1)H_{n-1}/2) D^n.
  LogForm dominant_q(long n, long D) const {
    require(n >= 2, "dominant_q: need n >= 2");
    Rat nfact = rat(factorial(static_cast<unsigned long>(n)));
    LogForm v = LogForm::constant(harmonic(n) * rat(pow_int(Int(D), n + 1)) /
                                  (nfact * rat(n + 1)));
    Rat dn = rat(pow_int(Int(D), n));
    if (D >= 2) v -= log_of_int(D, dn / (2 * nfact));
    LogForm coef = LogForm::constant(rat(-1) - rat(1, 2 * n) +
                                     rat(n + 1, 2) * harmonic(n - 1)) +
                   LogForm::log_two_pi(rat(1, 2));
    v += coef.scaled(dn / nfact);
    return v;
  }

  // The D^n coefficient of the C(n,D) estimate, times n!.
  LogForm gamma_coef(long n) const {
    Rat poly = rat(-1, 6) * rat(n) * n * n - rat(3, 4) * rat(n) * n - rat(13, 12) * rat(n) +
               rat(2);
    Rat tail = rat(1, 4) * rat(n) * n * n + rat(17, 24) * rat(n) * n + rat(119, 72) * rat(n) -
               rat(4);
    LogForm v = LogForm::constant(poly * harmonic(n) + tail);
    v += LogForm::log_two_pi(rat(1) - rat(n, 2));
    return v;
  }

  // n = 1:  -D^2/2 + D log(D)/2 + (-1 + 1/2 log 2pi) D.
  // n >= 2: (1-H_{n+1})/n! D^{n+1} - (n-2)/(2 n!) D^n log D + gamma(n)/n! D^n.
  LogForm dominant_c(long n, long D) const {
    require(n >= 1, "dominant_c: need n >= 1");
    if (n == 1) {
      LogForm v = LogForm::constant(rat(-Int(D) * D, 2));
      if (D >= 2) v += log_of_int(D, rat(D, 2));
      v += (LogForm::constant(rat(-1)) + LogForm::log_two_pi(rat(1, 2))).scaled(rat(D));
      return v;
    }
    Rat nfact = rat(factorial(static_cast<unsigned long>(n)));
    LogForm v = LogForm::constant((rat(1) - harmonic(n + 1)) * rat(pow_int(Int(D), n + 1)) /
                                  nfact);
    if (D >= 2) v -= log_of_int(D, rat(n - 2) * rat(pow_int(Int(D), n)) / (2 * nfact));
    v += gamma_coef(n).scaled(rat(pow_int(Int(D), n)) / nfact);
    return v;
  }

  // --- envelopes ------------------------------------------------------------

  Envelope s_envelope(long n, long D) const {
    require(n >= 2 && D >= 2, "s_envelope: need n >= 2, D >= 2");
    LogForm dom = dominant_s(n, D);
    return Envelope{dom + a1_lower(n, D), dom + a1_upper(n, D),
                    GridKey{static_cast<int>(n), static_cast<int>(D)}, EnvelopeKind::S};
  }

  Envelope q_envelope(long n, long D) const {
    require(n >= 2 && D >= 2, "q_envelope: need n >= 2, D >= 2");
    LogForm dom = dominant_q(n, D);
    return Envelope{dom + a2_lower(n, D), dom + a2_upper(n, D),
                    GridKey{static_cast<int>(n), static_cast<int>(D)}, EnvelopeKind::Q};
  }

  Envelope c_envelope(long n, long D) {
    require(n >= 1 && D >= 2, "c_envelope: need n >= 1, D >= 2");
    LogForm dom = dominant_c(n, D);
    if (n == 1)
      return Envelope{dom + a3_lower(D), dom + a3_upper(D),
                      GridKey{1, static_cast<int>(D)}, EnvelopeKind::C1};
    return Envelope{dom + a4_lower(n, D), dom + a4_upper(n, D),
                    GridKey{static_cast<int>(n), static_cast<int>(D)}, EnvelopeKind::C};
  }

 private:
  static Rat half_shift(long D) { return rat(2 * D + 1, 2); }

  static void require(bool ok, const char* msg) {
    if (!ok) throw std::domain_error(msg);
  }

  // A2(n,D)  = A1(n,D)/n! - (n+1) D^{n-1} log D / (4 (n-1)!)
  //            + (n+1)(-1 + 1/2 log 2pi - 1/(2n)) D^{n-1} / (2 (n-1)!)
  //            + (n+1) A1(n-1,D) / (2 (n-1)!)  -  (n-1)^2 (D-1)^{n-1} log D;
  // A2'(n,D) mirrors it with A1' and the opposite sign on the last term.
  LogForm a2_impl(long n, long D, bool upper) const {
    require(n >= 2 && D >= 1, "A2: need n >= 2, D >= 1");
    Rat nfact = rat(factorial(static_cast<unsigned long>(n)));
    Rat n1fact = rat(factorial(static_cast<unsigned long>(n - 1)));
    Rat dn1 = rat(pow_int(Int(D), n - 1));
    LogForm v = (upper ? a1_upper(n, D) : a1_lower(n, D)).scaled(1 / nfact);
    v -= log_of_int(D, rat(n + 1) * dn1 / (4 * n1fact));
    v += (LogForm::constant(rat(-1) - rat(1, 2 * n)) + LogForm::log_two_pi(rat(1, 2)))
             .scaled(rat(n + 1) * dn1 / (2 * n1fact));
    v += (upper ? a1_upper(n - 1, D) : a1_lower(n - 1, D))
             .scaled(rat(n + 1) / (2 * n1fact));
    Rat last = rat(Int(n - 1) * (n - 1)) * rat(pow_int(Int(D - 1), n - 1));
    v += log_of_int(D, upper ? last : -last);
    return v;
  }

  LogForm a4_impl(long n, long D, bool upper) {
    require(n >= 1 && D >= 1, "A4: need n >= 1, D >= 1");
    if (n == 1) return -a3_lower(D);
    std::lock_guard<std::mutex> lock(mu_);
    return a4_locked(n, D, upper);
  }

  LogForm a4_locked(long n, long D, bool upper) {
    auto& level = (upper ? a4_upper_prefix_ : a4_lower_prefix_)[n];
    // level[D] caches sum_{m=1}^{D} A4(n-1, m).
    if (static_cast<long>(level.size()) <= D) {
      if (level.empty()) level.push_back(LogForm::zero());  // empty prefix at D=0
      while (static_cast<long>(level.size()) <= D) {
        long m = static_cast<long>(level.size());
        LogForm term = n - 1 == 1 ? -a3_lower(m) : a4_locked(n - 1, m, upper);
        level.push_back(level.back() + term);
      }
    }
    LogForm correction = upper ? a2_lower(n, D) : a2_upper(n, D);
    return level[D] - correction;
  }

  AsymptConfig cfg_;
  std::mutex mu_;
  std::map<long, std::vector<LogForm>> a4_lower_prefix_;
  std::map<long, std::vector<LogForm>> a4_upper_prefix_;
};

// ---------------------------------------------------------------------------
// Envelope checking and the validity table
// ---------------------------------------------------------------------------

struct EnvelopeCheck {
  Verdict verdict = Verdict::Undecided;
  BoundCertificate cert;
};

inline EnvelopeCheck check_envelope(const Envelope& env, const LogForm& exact, long prec) {
  Ordering lo = LogForm::compare(env.lower, exact, prec);
  Ordering hi = LogForm::compare(exact, env.upper, prec);
  bool lo_ok = lo == Ordering::Less || lo == Ordering::Equal;
  bool hi_ok = hi == Ordering::Less || hi == Ordering::Equal;
  EnvelopeCheck out;
  out.cert.rule = std::string("envelope-") + to_string(env.kind);
  out.cert.lhs = env.lower.to_json();
  out.cert.rhs = env.upper.to_json();
  out.cert.witnesses = {{"n", env.key.n},
                        {"D", env.key.D},
                        {"exact", exact.to_json()},
                        {"lower_ok", lo_ok},
                        {"upper_ok", hi_ok}};
  if (lo == Ordering::Undecided || hi == Ordering::Undecided) {
    out.verdict = Verdict::Undecided;
  } else if (lo_ok && hi_ok) {
    out.verdict = Verdict::Pass;
  } else {
    // A containment miss marks the edge of the envelope's validated range,
    // not a broken identity; the certificate carries the exact witnesses.
    out.verdict = Verdict::OutOfValidatedRange;
  }
  out.cert.verdict = out.verdict;
  return out;
}

struct ValidityRecord {
  int n = 0;
  std::string kind;
  int D0 = -1;           // first D of the initial certified run, -1 if none
  int checked_up_to = 0;  // last D of that run
  long precision_bits = 0;

  nlohmann::json to_json() const {
    return {{"n", n},
            {"kind", kind},
            {"D0", D0},
            {"checked_up_to", checked_up_to},
            {"precision_bits", precision_bits}};
  }

  static ValidityRecord from_json(const nlohmann::json& j) {
    return ValidityRecord{j.at("n").get<int>(), j.at("kind").get<std::string>(),
                          j.at("D0").get<int>(), j.at("checked_up_to").get<int>(),
                          j.at("precision_bits").get<long>()};
  }
};

struct ValiditySweep {
  ValidityRecord record;
  std::vector<BoundCertificate> counterexamples;
};

// Sweeps D in [2, D_max], finds the first certified containment D0 and the
// end of the maximal certified run starting there; everything after the run
// is reported as exact counterexample certificates.
inline ValiditySweep sweep_validity(Appendix& ap, EnvelopeKind kind, int n, int D_max,
                                    long prec) {
  ValiditySweep out;
  out.record.n = n;
  out.record.kind = to_string(kind);
  out.record.precision_bits = prec;
  bool in_run = false;
  for (int D = 2; D <= D_max; ++D) {
    Envelope env;
    LogForm exact;
    switch (kind) {
      case EnvelopeKind::S:
        env = ap.s_envelope(n, D);
        exact = s_exact(n, D);
        break;
      case EnvelopeKind::Q:
        env = ap.q_envelope(n, D);
        exact = q_exact(n, D);
        break;
      default:
        env = ap.c_envelope(n, D);
        exact = c_exact(n, D);
        break;
    }
    EnvelopeCheck chk = check_envelope(env, exact, prec);
    if (chk.verdict == Verdict::Pass) {
      if (out.record.D0 < 0) {
        out.record.D0 = D;
        in_run = true;
      }
      if (in_run) out.record.checked_up_to = D;
    } else {
      if (in_run) in_run = false;
      if (out.record.D0 >= 0) out.counterexamples.push_back(std::move(chk.cert));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Certified lower bound for B0(n)
// ---------------------------------------------------------------------------

struct B0Search {
  long D_max = 200;
  long delta_max = 20;
  long precision_bits = 192;
};

// Raised when a formula needs a certified constant that is not available.
struct NotCertified : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct B0Result {
  Interval value_lower;  // enclosure of the certified lower bound for B0(n)
  int n = 0;
  long search_D_max = 0;
  long search_delta_max = 0;
  Interval tail_bound;
  std::string notes;
  bool certified = false;

  nlohmann::json to_json() const {
    return {{"n", n},
            {"value_lower", {{"lo", value_lower.lo_string(30)}, {"hi", value_lower.hi_string(30)}}},
            {"search_D_max", search_D_max},
            {"search_delta_max", search_delta_max},
            {"tail_bound", {{"lo", tail_bound.lo_string(30)}, {"hi", tail_bound.hi_string(30)}}},
            {"certified", certified},
            {"notes", notes}};
  }
};

namespace detail_tail {

// Coefficients (kappa, lambda) of a bound
//   |X(D)| <= kappa D^{n-1/2+3eps} log D + lambda D^{n-1} log D,  D >= 2,
// propagated mechanically through the remainder recursions.  Every step
// below states the inequality it uses; all constants are outward rationals.
struct TailEnvelope {
  long n = 0;
  Rat kappa;
  Rat lambda;
};

struct TailConstants {
  Rat inv_log2_up;    // 1/log 2, rounded up
  Rat log_shift_up;   // log(D+1/2) <= c log D for D >= 2: c = 1 + log(5/4)/log 2
  TailConstants() {
    Interval l2 = Interval::log_rat(rat(2), 192);
    inv_log2_up = (Interval::from_rat(rat(1), 192) / l2).hi_rat();
    Interval l54 = Interval::log_rat(rat(5, 4), 192);
    log_shift_up = rat(1) + (l54 / l2).hi_rat();
  }
};

inline const TailConstants& tc() {
  static TailConstants c;
  return c;
}

// Absorb a constant c >= 0: c <= c/(2^{n-1} log 2) * D^{n-1} log D for D >= 2.
inline TailEnvelope from_const(long n, const Rat& c) {
  return TailEnvelope{n, rat(0), c * tc().inv_log2_up / rat(pow_int(Int(2), n - 1))};
}

inline TailEnvelope add(const TailEnvelope& a, const TailEnvelope& b) {
  if (a.n != b.n) throw std::logic_error("tail envelope slot mismatch");
  return TailEnvelope{a.n, a.kappa + b.kappa, a.lambda + b.lambda};
}

inline TailEnvelope scale(const TailEnvelope& a, const Rat& c) {
  if (c < 0) throw std::logic_error("tail envelope scale must be >= 0");
  return TailEnvelope{a.n, a.kappa * c, a.lambda * c};
}

// Reinterpret a slot-(n-1) envelope at slot n: D^{x-1} <= D^x / 2 for D >= 2.
inline TailEnvelope lift(const TailEnvelope& a) {
  return TailEnvelope{a.n + 1, a.kappa / 2, a.lambda / 2};
}

}  // namespace detail_tail

class B0Calculator {
 public:
  explicit B0Calculator(AsymptConfig cfg = {}) : ap_(cfg), cfg_(cfg) {}

  Appendix& appendix() { return ap_; }

  // Closed part of B0(n): everything except the inf term.
  //   1/(2 n!) - log(n+1)/2 + 2^{n-1}(1-H_{n+1})(n+1)/n - 2^{n-2}(n-2)/n
  //   + 2^{n-2} gamma(n)/n.
  LogForm closed_part(long n) const {
    require_n(n);
    Rat nfact = rat(factorial(static_cast<unsigned long>(n)));
    LogForm v = LogForm::constant(rat(1) / (2 * nfact));
    v -= log_of_int(n + 1, rat(1, 2));
    Rat p2 = rat(pow_int(Int(2), n - 1));
    v += LogForm::constant(p2 * (rat(1) - harmonic(n + 1)) * rat(n + 1, n));
    v -= LogForm::constant(p2 / 2 * rat(n - 2, n));
    v += ap_.gamma_coef(n).scaled(p2 / 2 / rat(n));
    return v;
  }

  // Certified lower bound for B0(n): exhaustive interval search of the inf
  // term over 1 <= delta <= delta_max, delta+1 <= D <= D_max, joined with a
  // tail bound that covers every cell outside the searched box.
  B0Result lower_bound(int n, const B0Search& search = {}) {
    require_n(n);
    if (search.D_max < 1 || search.delta_max < 1)
      throw std::domain_error("b0: search bounds must be positive");
    long prec = search.precision_bits;

    B0Result out;
    out.n = n;
    out.search_D_max = search.D_max;
    out.search_delta_max = search.delta_max;

    // Exhaustive sweep of T(delta, D) = (A4(n,D) - A4'(n,D-delta)) / (2^{n-1} delta D^n).
    std::optional<Rat> searched_min_lo, searched_min_hi;
    std::map<long, Rat> per_delta_min;
    for (long delta = 1; delta <= search.delta_max; ++delta) {
      for (long D = delta + 1; D <= search.D_max; ++D) {
        LogForm t = ap_.a4_lower(n, D) - ap_.a4_upper(n, D - delta);
        Rat scale = rat(1) / (rat(pow_int(Int(2), n - 1)) * rat(delta) *
                              rat(pow_int(Int(D), n)));
        Interval iv = t.scaled(scale).eval(prec);
        Rat lo = iv.lo_rat(), hi = iv.hi_rat();
        if (!searched_min_lo || lo < *searched_min_lo) searched_min_lo = lo;
        if (!searched_min_hi || hi < *searched_min_hi) searched_min_hi = hi;
        auto [it, fresh] = per_delta_min.try_emplace(delta, hi);
        if (!fresh && hi < it->second) it->second = hi;
      }
    }

    // Tail over the unsearched region.
    std::optional<Rat> tail = tail_bound(n, search);
    if (!tail) {
      out.certified = false;
      out.notes = "tail bound not derivable for this configuration";
      out.value_lower = Interval(prec);
      out.tail_bound = Interval(prec);
      return out;
    }
    out.tail_bound = Interval::from_rat(*tail, prec);

    Rat inf_lower = -*tail;
    if (searched_min_lo && *searched_min_lo < inf_lower) inf_lower = *searched_min_lo;

    Interval value = closed_part(n).eval(prec) + Interval::from_rat(inf_lower, prec);
    out.value_lower = value;
    out.certified = true;

    std::string note = "inf term searched jointly over delta and D; per-delta minima:";
    for (const auto& [d, v] : per_delta_min) {
      if (d > 3) break;
      note += " delta=" + std::to_string(d) + ": " +
              Interval::from_rat(v, 64).hi_string(8) + ";";
    }
    if (searched_min_hi)
      note += " joint searched min <= " + Interval::from_rat(*searched_min_hi, 64).hi_string(8);
    out.notes = note;
    return out;
  }

 private:
  static void require_n(long n) {
    if (n < 2) throw std::domain_error("B0 is defined for n >= 2");
  }

  // Mechanical |A4|,|A4'| envelope at slot n (valid for all D >= 2).
  detail_tail::TailEnvelope a4_tail_envelope(long n) {
    using namespace detail_tail;
    if (n == 1) {
      // |A3(D)| <= (1/2 + 1/8) log(D+1/2) + 1/8 log(3/2) + 1/4 + |const|,
      // from |a3| <= 1/4 + (1/2)log(D+1/2) + |3/2 - (9/4)log(3/2) - (1/2)log 2pi|.
      Rat c0 = abs_upper(LogForm::constant(rat(3, 2)) - log_of_rat(rat(3, 2), rat(9, 4)) -
                         LogForm::log_two_pi(rat(1, 2)));
      Rat c1 = abs_upper(log_of_rat(rat(3, 2), rat(1, 8)));
      TailEnvelope env{1, rat(0), rat(5, 8) * tc().log_shift_up};
      return add(env, from_const(1, rat(1, 4) + c0 + c1));
    }
    auto it = a4_env_cache_.find(n);
    if (it != a4_env_cache_.end()) return it->second;

    TailEnvelope child = a4_tail_envelope(n - 1);
    // sum_{m=2}^D m^a log m <= log D * (3/2)^{a+1} D^{a+1} / (a+1):
    //   kappa slot: a+1 = n-1/2+3eps, use (3/2)^n and 1/(a+1) <= 2/(2n-1);
    //   lambda slot: a+1 = n-1, use (3/2)^{n-1} and 1/(n-1).
    TailEnvelope summed{n,
                        child.kappa * pow_rat(rat(3, 2), n) * rat(2, 2 * n - 1),
                        child.lambda * pow_rat(rat(3, 2), n - 1) / rat(n - 1)};
    // m = 1 term of the recursion sum.
    Rat m1 = abs_upper(n - 1 == 1 ? -ap_.a3_lower(1) : ap_.a4_lower(n - 1, 1));
    Rat m1u = abs_upper(n - 1 == 1 ? -ap_.a3_lower(1) : ap_.a4_upper(n - 1, 1));
    TailEnvelope env = add(summed, from_const(n, std::max(m1, m1u)));
    env = add(env, a2_tail_envelope(n));
    a4_env_cache_.emplace(n, env);
    return env;
  }

  detail_tail::TailEnvelope a2_tail_envelope(long n) {
    using namespace detail_tail;
    Rat nfact = rat(factorial(static_cast<unsigned long>(n)));
    Rat n1fact = rat(factorial(static_cast<unsigned long>(n - 1)));
    // |A1(n,D)|, |A1'(n,D)| <= 9n(n-1)-or-2^{n+3} times (5/4 D)^{n-1} log(D+1/2)
    // plus the outward-rational kappa term and small constants.
    Rat shape = pow_rat(rat(5, 4), n - 1) * tc().log_shift_up;
    Rat a1_coef = std::max(rat(pow_int(Int(2), n + 3)), rat(9 * n * (n - 1))) * shape;
    Rat a1_const = abs_upper(LogForm::constant(rat(3, 2)) +
                             log_of_rat(rat(3, 2), rat(3, 2)) -
                             LogForm::log_two_pi(rat(1, 2)));
    TailEnvelope a1{n, rat(0), a1_coef};
    a1 = add(a1, from_const(n, a1_const));
    if (n >= 2)
      a1.kappa += rat((n - 1) * pow_int(Int(2), n)) * outward::e_over_pi_sqrt_upper(n);
    TailEnvelope a1_child{n - 1, rat(0),
                          std::max(rat(pow_int(Int(2), n + 2)), rat(9 * (n - 1) * (n - 2))) *
                              pow_rat(rat(5, 4), n - 2) * tc().log_shift_up};
    a1_child = add(a1_child, from_const(n - 1, a1_const));
    if (n - 1 >= 2)
      a1_child.kappa +=
          rat((n - 2) * pow_int(Int(2), n - 1)) * outward::e_over_pi_sqrt_upper(n - 1);

    TailEnvelope env = scale(a1, 1 / nfact);
    env.lambda += rat(n + 1) / (4 * n1fact);                       // D^{n-1} log D term
    Rat midc = abs_upper(LogForm::constant(rat(-1) - rat(1, 2 * n)) +
                         LogForm::log_two_pi(rat(1, 2))) *
               rat(n + 1) / (2 * n1fact);
    env.lambda += midc * tc().inv_log2_up;                          // absorb D^{n-1}
    env = add(env, scale(lift(a1_child), rat(n + 1) / (2 * n1fact)));
    env.lambda += rat(Int(n - 1) * (n - 1));                        // (D-1)^{n-1} log D
    return env;
  }

  // sup over D >= D0 of g(D), where
  //   g(D) = (2 kappa D^{-(1/2-3eps)} + 2 lambda D^{-1}) log D / 2^{n-1}.
  // Both terms decrease once log D exceeds the inverse exponent, so a scan
  // up to that point plus the boundary value is a certified sup.
  std::optional<Rat> tail_sup(const detail_tail::TailEnvelope& env, long D0) {
    Rat beta = rat(1, 2) - 3 * cfg_.epsilon;  // in ]0, 1/2[
    Interval thr = (Interval::from_rat(1 / beta, 96)).exp();
    Rat thr_up = thr.hi_rat();
    if (thr_up > 1000000) return std::nullopt;
    long d_mono = 3;
    while (rat(d_mono) < thr_up) ++d_mono;
    long scan_to = std::max(D0, d_mono);
    if (scan_to - D0 > 2000000) return std::nullopt;
    std::optional<Rat> best;
    for (long D = D0; D <= scan_to; ++D) {
      Rat g = g_value(env, D);
      if (!best || g > *best) best = g;
    }
    return best;
  }

  Rat g_value(const detail_tail::TailEnvelope& env, long D) {
    Rat beta = rat(1, 2) - 3 * cfg_.epsilon;
    // Upper rational for D^{-beta} = 1/D^{beta}.
    Rat pow_lo = (Interval::log_rat(rat(D), 128).scaled(-beta)).exp().hi_rat();
    Rat logD_up = Interval::log_rat(rat(D), 128).hi_rat();
    Rat g = (2 * env.kappa * pow_lo + 2 * env.lambda / rat(D)) * logD_up /
            rat(pow_int(Int(2), env.n - 1));
    return g;
  }

  // Best bound for |T(delta,D)| over the three unsearched regimes.
  std::optional<Rat> tail_bound(long n, const B0Search& search) {
    using namespace detail_tail;
    TailEnvelope env = a4_tail_envelope(n);

    // (i) delta <= delta_max, D > D_max, D-delta >= 2: |T| <= g(D).
    auto t1 = tail_sup(env, search.D_max + 1);
    // (ii) delta > delta_max, D >= delta+1, D-delta >= 2: |T| <= g(D)/delta.
    auto t2 = tail_sup(env, search.delta_max + 2);
    if (!t1 || !t2) return std::nullopt;
    Rat t2_scaled = *t2 / rat(search.delta_max + 1);
    Rat tail = std::max(*t1, t2_scaled);

    // (iii) D - delta = 1 outside the box: delta = D-1 > min(delta_max, D_max-1).
    //   |T| <= (2 kappa D^{-3/2+3eps} log D + 2 lambda D^{-2} log D
    //           + 2 c1 D^{-n-1}) / 2^{n-1},  using D-1 >= D/2.
    Rat c1 = std::max(abs_upper(ap_.a4_upper(n, 1)), abs_upper(ap_.a4_lower(n, 1)));
    long D0 = std::min(search.delta_max, search.D_max - 1) + 2;
    D0 = std::max(D0, 3L);
    Rat beta3 = rat(3, 2) - 3 * cfg_.epsilon;  // > 1, so decreasing from D >= 3
    auto g3 = [&](long D) -> Rat {
      Rat pow_up = (Interval::log_rat(rat(D), 128).scaled(-beta3)).exp().hi_rat();
      Rat logD_up = Interval::log_rat(rat(D), 128).hi_rat();
      return (2 * env.kappa * pow_up * logD_up + 2 * env.lambda * logD_up / rat(Int(D) * D) +
              2 * c1 / rat(pow_int(Int(D), n + 1))) /
             rat(pow_int(Int(2), n - 1));
    };
    Rat t3 = std::max(g3(D0), g3(D0 + 1));
    return std::max(tail, t3);
  }

  Rat abs_upper(const LogForm& f) {
    Interval iv = f.eval(160);
    Rat lo = iv.lo_rat(), hi = iv.hi_rat();
    Rat a = lo < 0 ? -lo : lo;
    Rat b = hi < 0 ? -hi : hi;
    return std::max(a, b);
  }

  Appendix ap_;
  AsymptConfig cfg_;
  std::map<long, detail_tail::TailEnvelope> a4_env_cache_;
};

// ---------------------------------------------------------------------------
// Euler-Maclaurin midpoint certificates
// ---------------------------------------------------------------------------

// Exact data for one function in the midpoint formula
//   sum_{m=p}^q f(m) = int_{p-1/2}^{q+1/2} f + f'(p-1/2)/8 - f'(q+1/2)/8 + Theta,
//   |Theta| <= (q - p + 1) sup |f''|.
struct EmFunction {
  std::string id;
  std::function<LogForm(long)> value;           // f(m) at integers
  std::function<LogForm(const Rat&)> antideriv; // F with F' = f, at rationals
  std::function<LogForm(const Rat&)> deriv;     // f' at rationals
  std::function<Rat(long, long)> curvature_sup; // sup |f''| on [p-1/2, q+1/2]
};

inline EmFunction em_log() {
  return EmFunction{
      "log",
      [](long m) { return log_of_int(m); },
      [](const Rat& x) { return log_of_rat(x, x) - LogForm::constant(x); },
      [](const Rat& x) { return LogForm::constant(1 / x); },
      [](long p, long) -> Rat { return 1 / (rat(2 * p - 1, 2) * rat(2 * p - 1, 2)); }};
}

inline EmFunction em_xlog() {
  return EmFunction{
      "xlog",
      [](long m) { return log_of_int(m, rat(m)); },
      [](const Rat& x) { return log_of_rat(x, x * x / 2) - LogForm::constant(x * x / 4); },
      [](const Rat& x) { return log_of_rat(x) + LogForm::constant(rat(1)); },
      [](long p, long) -> Rat { return 1 / rat(2 * p - 1, 2); }};
}

inline EmFunction em_function_by_id(const std::string& id) {
  if (id == "log") return em_log();
  if (id == "xlog") return em_xlog();
  throw std::domain_error("unsupported f_id: " + id);
}

inline BoundCertificate euler_maclaurin_check(const EmFunction& f, long p, long q,
                                              long prec = 256) {
  if (!(1 <= p && p <= q)) throw std::domain_error("euler_maclaurin: need 1 <= p <= q");
  LogForm sum;
  for (long m = p; m <= q; ++m) sum += f.value(m);
  Rat lo = rat(2 * p - 1, 2), hi = rat(2 * q + 1, 2);
  LogForm theta = sum - (f.antideriv(hi) - f.antideriv(lo)) - f.deriv(lo).scaled(rat(1, 8)) +
                  f.deriv(hi).scaled(rat(1, 8));
  Rat bound = rat(q - p + 1) * f.curvature_sup(p, q);
  LogForm bound_form = LogForm::constant(bound);

  Ordering above = LogForm::compare(theta, bound_form, prec);
  Ordering below = LogForm::compare(-bound_form, theta, prec);
  bool ok = (above == Ordering::Less || above == Ordering::Equal) &&
            (below == Ordering::Less || below == Ordering::Equal);
  bool undecided = above == Ordering::Undecided || below == Ordering::Undecided;

  BoundCertificate cert;
  cert.rule = "euler-maclaurin-midpoint";
  cert.lhs = theta.to_json();
  cert.rhs = bound_form.to_json();
  cert.verdict = undecided ? Verdict::Undecided : ok ? Verdict::Pass : Verdict::Fail;
  cert.witnesses = {{"f", f.id}, {"p", p}, {"q", q},
                    {"theta", theta.eval(64).to_string(12)}};
  return cert;
}

}  // namespace ahs

#endif  // AHS_ASYMPT_HPP

#ifndef AHS_LOGFORM_HPP
#define AHS_LOGFORM_HPP

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "ahs/interval.hpp"
#include "ahs/rational.hpp"

namespace ahs {

enum class Ordering { Less, Equal, Greater, Undecided };

// Exact real number of the shape  q0 + sum_p c_p * log(p) + c_pi * log(pi),
// with rational coefficients and prime p.  Values are kept canonical (no
// zero coefficients), so structural equality is semantic equality under the
// standing hypothesis that {1, log 2, log 3, log 5, ..., log pi} is linearly
// independent over Q.  That hypothesis is assumed throughout and is what
// makes exact zero-testing possible without numerics.
class LogForm {
 public:
  LogForm() = default;

  static LogForm zero() { return LogForm(); }

  static LogForm constant(const Rat& q) {
    LogForm f;
    f.const_part_ = q;
    return f;
  }

  static LogForm pi_log(const Rat& coef) {
    LogForm f;
    f.pi_coeff_ = coef;
    return f;
  }

  static LogForm log_prime(const Int& p, const Rat& coef = Rat(1)) {
    if (!is_prime(p)) throw std::domain_error("log_prime: " + p.get_str() + " is not prime");
    LogForm f;
    if (coef != 0) f.log_coeffs_[p] = coef;
    return f;
  }

  // log(2*pi) enters many closed forms; it is stored as log 2 + log pi.
  static LogForm log_two_pi(const Rat& coef = Rat(1)) {
    LogForm f = log_prime(2, coef);
    f.pi_coeff_ = coef;
    return f;
  }

  // Exact decomposition of log(x) for rational x > 0 into prime logs.
  static LogForm from_log_rational(const Rat& x) {
    if (x <= 0) throw std::domain_error("from_log_rational: argument must be positive");
    LogForm f;
    for (const auto& [p, e] : factor(Int(x.get_num()))) f.add_log(p, rat(e));
    for (const auto& [p, e] : factor(Int(x.get_den()))) f.add_log(p, rat(-e));
    return f;
  }

  // log(k!) = sum_{j<=k} log j, memoized.
  static const LogForm& from_log_factorial(unsigned long k) {
    static std::mutex mu;
    static std::vector<LogForm> cache{LogForm(), LogForm()};  // 0!, 1!
    std::lock_guard<std::mutex> lock(mu);
    while (cache.size() <= k) {
      LogForm next = cache.back();
      next += from_log_rational(rat(Int(static_cast<unsigned long>(cache.size()))));
      cache.push_back(std::move(next));
    }
    return cache[k];
  }

  const Rat& const_part() const { return const_part_; }
  const Rat& pi_coeff() const { return pi_coeff_; }
  const std::map<Int, Rat>& log_coeffs() const { return log_coeffs_; }

  Rat log_coeff(const Int& p) const {
    auto it = log_coeffs_.find(p);
    return it == log_coeffs_.end() ? Rat(0) : it->second;
  }

  bool is_zero() const {
    return const_part_ == 0 && pi_coeff_ == 0 && log_coeffs_.empty();
  }

  LogForm& operator+=(const LogForm& o) {
    const_part_ += o.const_part_;
    pi_coeff_ += o.pi_coeff_;
    for (const auto& [p, c] : o.log_coeffs_) add_log(p, c);
    return *this;
  }

  LogForm& operator-=(const LogForm& o) {
    const_part_ -= o.const_part_;
    pi_coeff_ -= o.pi_coeff_;
    for (const auto& [p, c] : o.log_coeffs_) add_log(p, -c);
    return *this;
  }

  friend LogForm operator+(LogForm a, const LogForm& b) { return a += b; }
  friend LogForm operator-(LogForm a, const LogForm& b) { return a -= b; }

  LogForm operator-() const { return scaled(rat(-1)); }

  LogForm scaled(const Rat& c) const {
    LogForm f;
    if (c == 0) return f;
    f.const_part_ = const_part_ * c;
    f.pi_coeff_ = pi_coeff_ * c;
    for (const auto& [p, q] : log_coeffs_) f.log_coeffs_[p] = q * c;
    return f;
  }

  friend LogForm operator*(const Rat& c, const LogForm& f) { return f.scaled(c); }

  friend bool operator==(const LogForm& a, const LogForm& b) {
    return a.const_part_ == b.const_part_ && a.pi_coeff_ == b.pi_coeff_ &&
           a.log_coeffs_ == b.log_coeffs_;
  }

  // Certified enclosure of the real value.  Doubling the precision never
  // widens the result: each endpoint is a directed rounding to a grid that
  // refines as precision grows.  Prime-log enclosures are cached per
  // (prime, precision) since grid sweeps revisit the same primes constantly.
  Interval eval(long precision_bits) const {
    if (precision_bits < 16) throw std::domain_error("eval: precision must be >= 16");
    long work = precision_bits + 16;
    Interval acc = Interval::from_rat(const_part_, work);
    for (const auto& [p, c] : log_coeffs_) {
      if (c == 0) continue;
      acc += cached_log_prime(p, work).scaled(c);
    }
    if (pi_coeff_ != 0) acc += Interval::log_pi(work).scaled(pi_coeff_);
    return acc;
  }

  static Interval cached_log_prime(const Int& p, long prec) {
    static std::mutex mu;
    static std::map<std::pair<Int, long>, Interval> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, prec);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, Interval::log_rat(rat(p), prec)).first;
    return it->second;
  }

  // Exact when structurally equal; otherwise refines intervals until the
  // difference separates from zero or the precision budget is exhausted.
  static Ordering compare(const LogForm& a, const LogForm& b, long max_precision_bits = 4096) {
    if (a == b) return Ordering::Equal;
    LogForm d = a - b;
    for (long prec = 64;; prec *= 2) {
      if (prec > max_precision_bits) prec = max_precision_bits;
      Interval i = d.eval(prec);
      if (i.strictly_negative()) return Ordering::Less;
      if (i.strictly_positive()) return Ordering::Greater;
      if (prec >= max_precision_bits) return Ordering::Undecided;
    }
  }

  double to_double() const { return eval(64).mid_double(); }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    auto push = [&out](const std::string& term) {
      if (!out.empty()) out += " + ";
      out += term;
    };
    if (const_part_ != 0) push(const_part_.get_str());
    for (const auto& [p, c] : log_coeffs_) push(c.get_str() + " * log(" + p.get_str() + ")");
    if (pi_coeff_ != 0) push(pi_coeff_.get_str() + " * log(pi)");
    return out;
  }

  nlohmann::json to_json() const {
    nlohmann::json logs = nlohmann::json::object();
    for (const auto& [p, c] : log_coeffs_) logs[p.get_str()] = c.get_str();
    return {{"const", const_part_.get_str()}, {"logs", logs}, {"pi", pi_coeff_.get_str()}};
  }

  static LogForm from_json(const nlohmann::json& j) {
    LogForm f;
    f.const_part_ = parse_rat(j.at("const").get<std::string>());
    f.pi_coeff_ = parse_rat(j.at("pi").get<std::string>());
    for (const auto& [key, val] : j.at("logs").items()) {
      Int p(key);
      if (!is_prime(p)) throw std::invalid_argument("LogForm json: key not prime: " + key);
      f.add_log(p, parse_rat(val.get<std::string>()));
    }
    return f;
  }

 private:
  void add_log(const Int& p, const Rat& c) {
    if (c == 0) return;
    auto [it, inserted] = log_coeffs_.try_emplace(p, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) log_coeffs_.erase(it);
    }
  }

  Rat const_part_ = 0;
  std::map<Int, Rat> log_coeffs_;
  Rat pi_coeff_ = 0;
};

inline LogForm log_of_int(const Int& n, const Rat& coef = Rat(1)) {
  return LogForm::from_log_rational(rat(n)).scaled(coef);
}

inline LogForm log_of_rat(const Rat& q, const Rat& coef = Rat(1)) {
  return LogForm::from_log_rational(q).scaled(coef);
}

}  // namespace ahs

#endif  // AHS_LOGFORM_HPP

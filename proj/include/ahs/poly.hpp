#ifndef AHS_POLY_HPP
#define AHS_POLY_HPP

#include <algorithm>
#include <cctype>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ahs/rational.hpp"

namespace ahs {

using Expo = std::vector<int>;

// Homogeneous polynomial with integer coefficients, keyed by exponent vector
// of length n+1.  Zero polynomials are not representable.
struct HomoPoly {
  int n = 0;
  int degree = 0;
  std::map<Expo, Int> coeffs;

  HomoPoly() = default;

  HomoPoly(int n_, int degree_, std::map<Expo, Int> coeffs_)
      : n(n_), degree(degree_), coeffs(std::move(coeffs_)) {
    normalize();
    validate();
  }

  static HomoPoly monomial(int n, const Expo& e, const Int& c = 1) {
    int deg = 0;
    for (int a : e) deg += a;
    return HomoPoly(n, deg, {{e, c}});
  }

  void normalize() {
    for (auto it = coeffs.begin(); it != coeffs.end();)
      it = it->second == 0 ? coeffs.erase(it) : std::next(it);
  }

  void validate() const {
    if (coeffs.empty()) throw std::domain_error("HomoPoly: zero polynomial");
    if (degree < 1) throw std::domain_error("HomoPoly: degree must be >= 1");
    for (const auto& [e, c] : coeffs) {
      if (static_cast<int>(e.size()) != n + 1)
        throw std::domain_error("HomoPoly: exponent vector length mismatch");
      int sum = 0;
      for (int a : e) {
        if (a < 0) throw std::domain_error("HomoPoly: negative exponent");
        sum += a;
      }
      if (sum != degree) throw std::domain_error("HomoPoly: non-homogeneous term");
    }
  }

  Int eval(const std::vector<Int>& x) const {
    if (static_cast<int>(x.size()) != n + 1)
      throw std::domain_error("eval: coordinate count mismatch");
    Int total = 0;
    for (const auto& [e, c] : coeffs) {
      Int term = c;
      for (int i = 0; i <= n; ++i)
        for (int k = 0; k < e[i]; ++k) term *= x[i];
      total += term;
    }
    return total;
  }

  std::complex<double> eval(const std::vector<std::complex<double>>& x) const {
    std::complex<double> total = 0;
    for (const auto& [e, c] : coeffs) {
      std::complex<double> term = c.get_d();
      for (int i = 0; i <= n; ++i)
        for (int k = 0; k < e[i]; ++k) term *= x[i];
      total += term;
    }
    return total;
  }

  friend bool operator==(const HomoPoly& a, const HomoPoly& b) {
    return a.n == b.n && a.degree == b.degree && a.coeffs == b.coeffs;
  }

  friend HomoPoly operator*(const HomoPoly& a, const HomoPoly& b) {
    if (a.n != b.n) throw std::domain_error("poly product: variable count mismatch");
    std::map<Expo, Int> out;
    for (const auto& [ea, ca] : a.coeffs)
      for (const auto& [eb, cb] : b.coeffs) {
        Expo e(ea.size());
        for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out[e] += ca * cb;
      }
    return HomoPoly(a.n, a.degree + b.degree, std::move(out));
  }

  std::string to_string() const {
    std::string out;
    // Iterate in x0-major (lex-descending) order for readability.
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
      const auto& [e, c] = *it;
      std::string term;
      Int abs_c = abs(c);
      bool first_factor = abs_c != 1;
      if (first_factor) term = abs_c.get_str();
      for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (first_factor) term += "*";
        term += "x" + std::to_string(i);
        if (e[i] > 1) term += "^" + std::to_string(e[i]);
        first_factor = true;
      }
      if (!first_factor) term = "1";
      if (out.empty())
        out = (c < 0 ? "-" : "") + term;
      else
        out += (c < 0 ? "-" : "+") + term;
    }
    return out;
  }

  nlohmann::json to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : coeffs)
      terms.push_back({{"exp", e}, {"coef", c.get_str()}});
    return {{"n", n}, {"delta", degree}, {"terms", terms}};
  }

  static HomoPoly from_json(const nlohmann::json& j) {
    std::map<Expo, Int> coeffs;
    for (const auto& t : j.at("terms")) {
      Expo e = t.at("exp").get<Expo>();
      coeffs[e] += Int(t.at("coef").get<std::string>());
    }
    return HomoPoly(j.at("n").get<int>(), j.at("delta").get<int>(), std::move(coeffs));
  }
};

// All exponent vectors of total degree D in n+1 variables, x0-major
// (lex-descending), so x0^D comes first.
inline std::vector<Expo> monomials_of_degree(int n, int D) {
  std::vector<Expo> out;
  Expo cur(n + 1, 0);
  auto rec = [&](auto&& self, int var, int rem) -> void {
    if (var == n) {
      cur[var] = rem;
      out.push_back(cur);
      return;
    }
    for (int a = rem; a >= 0; --a) {
      cur[var] = a;
      self(self, var + 1, rem - a);
    }
  };
  rec(rec, 0, D);
  return out;
}

namespace detail {

struct PolyParser {
  const std::string& s;
  size_t pos = 0;
  explicit PolyParser(const std::string& str) : s(str) {}

  [[noreturn]] void fail(const std::string& msg, size_t at) const {
    throw std::invalid_argument("poly parse error at position " + std::to_string(at) +
                                ": " + msg);
  }

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  Int parse_uint() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) fail("expected digits", start);
    return Int(s.substr(start, pos - start));
  }

  // term := [integer] {'*' factor} | factor {'*' factor}
  // factor := 'x' index ['^' exponent]
  void parse_term(int sign, std::map<int, int>& exps, Int& coef, int& max_var) {
    skip_ws();
    size_t term_start = pos;
    coef = sign;
    exps.clear();
    bool any = false;
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      coef *= parse_uint();
      any = true;
      if (!eat('*')) {
        skip_ws();
        if (pos < s.size() && s[pos] == 'x') fail("missing '*' before variable", pos);
        return;  // pure constant term; homogeneity check will reject it later
      }
    }
    for (;;) {
      skip_ws();
      if (pos >= s.size() || s[pos] != 'x') {
        if (!any) fail("expected coefficient or variable", term_start);
        fail("expected variable after '*'", pos);
      }
      ++pos;
      Int idx = parse_uint();
      if (idx > 64) fail("variable index too large", pos);
      int var = static_cast<int>(idx.get_si());
      max_var = std::max(max_var, var);
      int e = 1;
      if (eat('^')) {
        Int ei = parse_uint();
        if (ei > 1000) fail("exponent too large", pos);
        e = static_cast<int>(ei.get_si());
      }
      exps[var] += e;
      any = true;
      if (!eat('*')) break;
    }
  }
};

}  // namespace detail

// Parses the text format `c*x0^a0*...*xn^an +/- ...`.  When n < 0 the
// variable count is inferred from the highest index used.  Homogeneity is
// validated with a precise error position.
inline HomoPoly parse_poly(const std::string& text, int n = -1) {
  detail::PolyParser p(text);
  struct RawTerm {
    std::map<int, int> exps;
    Int coef;
    size_t at;
  };
  std::vector<RawTerm> terms;
  int max_var = 0;
  int sign = 1;
  p.skip_ws();
  if (p.eat('-')) sign = -1;
  else p.eat('+');
  for (;;) {
    RawTerm t;
    p.skip_ws();
    t.at = p.pos;
    p.parse_term(sign, t.exps, t.coef, max_var);
    terms.push_back(std::move(t));
    p.skip_ws();
    if (p.pos >= p.s.size()) break;
    if (p.eat('+')) sign = 1;
    else if (p.eat('-')) sign = -1;
    else p.fail("expected '+' or '-'", p.pos);
  }
  if (n < 0) n = max_var;
  if (max_var > n) throw std::invalid_argument("poly uses variable beyond x" + std::to_string(n));

  int degree = -1;
  std::map<Expo, Int> coeffs;
  for (const auto& t : terms) {
    Expo e(n + 1, 0);
    int deg = 0;
    for (const auto& [var, ex] : t.exps) {
      e[var] = ex;
      deg += ex;
    }
    if (degree < 0) degree = deg;
    if (deg != degree)
      throw std::invalid_argument("poly parse error at position " + std::to_string(t.at) +
                                  ": term of degree " + std::to_string(deg) +
                                  " in a polynomial of degree " + std::to_string(degree));
    coeffs[e] += t.coef;
  }
  return HomoPoly(n, degree, std::move(coeffs));
}

// f = content * primitive with content > 0 and primitive of coefficient gcd 1.
inline std::pair<Int, HomoPoly> content_and_primitive(const HomoPoly& f) {
  Int g = 0;
  for (const auto& [e, c] : f.coeffs) {
    Int gc;
    mpz_gcd(gc.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    g = gc;
  }
  std::map<Expo, Int> prim;
  for (const auto& [e, c] : f.coeffs) prim[e] = c / g;
  return {g, HomoPoly(f.n, f.degree, std::move(prim))};
}

inline bool is_primitive(const HomoPoly& f) {
  return content_and_primitive(f).first == 1;
}

// Exact divisibility of homogeneous polynomials over Q: true iff g = f*h.
// Division by the single divisor f with lex leading-term recursion; the
// quotient coefficients live in Q, which is what "integer after clearing
// denominators" amounts to.
inline bool divides(const HomoPoly& f, const HomoPoly& g) {
  if (f.n != g.n) throw std::domain_error("divides: variable count mismatch");
  if (g.degree < f.degree) return false;
  // Leading term under lex with x0 > x1 > ...: largest exponent vector.
  const Expo& fe = f.coeffs.rbegin()->first;
  const Rat fc = rat(f.coeffs.rbegin()->second);
  std::map<Expo, Rat> rem;
  for (const auto& [e, c] : g.coeffs) rem[e] = rat(c);
  while (!rem.empty()) {
    auto lead = std::prev(rem.end());
    const Expo& ge = lead->first;
    Expo q(ge.size());
    for (size_t i = 0; i < ge.size(); ++i) {
      q[i] = ge[i] - fe[i];
      if (q[i] < 0) return false;  // leading term not divisible: nonzero remainder
    }
    Rat qc = lead->second / fc;
    for (const auto& [e, c] : f.coeffs) {
      Expo t(e.size());
      for (size_t i = 0; i < e.size(); ++i) t[i] = e[i] + q[i];
      auto [it, inserted] = rem.try_emplace(t, 0);
      it->second -= qc * rat(c);
      if (it->second == 0) rem.erase(it);
    }
  }
  return true;
}

}  // namespace ahs

#endif  // AHS_POLY_HPP

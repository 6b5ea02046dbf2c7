#ifndef AHS_HEIGHTS_HPP
#define AHS_HEIGHTS_HPP

#include <algorithm>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "ahs/certificate.hpp"
#include "ahs/combinat.hpp"
#include "ahs/logform.hpp"
#include "ahs/poly.hpp"
#include "ahs/rational.hpp"

namespace ahs {

// Point of P^n(Q) as a primitive integer vector whose first nonzero
// coordinate is positive.
struct RatPoint {
  std::vector<Int> coords;

  int n() const { return static_cast<int>(coords.size()) - 1; }

  friend bool operator==(const RatPoint& a, const RatPoint& b) { return a.coords == b.coords; }
  friend bool operator<(const RatPoint& a, const RatPoint& b) { return a.coords < b.coords; }
};

inline RatPoint normalize_point(std::vector<Int> raw) {
  Int g = 0;
  for (const Int& x : raw) {
    Int t;
    mpz_gcd(t.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    g = t;
  }
  if (g == 0) throw std::domain_error("normalize_point: zero vector");
  for (Int& x : raw) x /= g;
  for (const Int& x : raw) {
    if (x == 0) continue;
    if (x < 0)
      for (Int& y : raw) y = -y;
    break;
  }
  return RatPoint{std::move(raw)};
}

// Absolute logarithmic (Weil) height: log max |x_i| for a canonical
// representative; the finite places contribute nothing by primitivity.
inline LogForm weil_height(const RatPoint& p) {
  Int m = 0;
  for (const Int& x : p.coords) m = std::max(m, Int(abs(x)));
  return log_of_int(m);
}

// Height attached to the Fubini-Study metric: (1/2) log(sum x_j^2).
inline LogForm arakelov_height_point(const RatPoint& p) {
  Int s = 0;
  for (const Int& x : p.coords) s += x * x;
  return log_of_int(s, rat(1, 2));
}

// Classic height of a hypersurface: log of the max coefficient of the
// primitive defining form (the place sum telescopes to this over Q).
inline LogForm classic_height_poly(const HomoPoly& f) {
  auto [content, prim] = content_and_primitive(f);
  Int m = 0;
  for (const auto& [e, c] : prim.coeffs) m = std::max(m, Int(abs(c)));
  return log_of_int(m);
}

namespace detail {
inline Rat bombieri_weight(const Expo& e, int degree) {
  Int num = 1;
  for (int a : e) num *= factorial(static_cast<unsigned long>(a));
  return rat(num, factorial(static_cast<unsigned long>(degree)));
}
}  // namespace detail

// Bombieri inner product: sum_alpha f_alpha g_alpha alpha!/D!.
inline Rat bombieri_inner(const HomoPoly& f, const HomoPoly& g) {
  if (f.n != g.n || f.degree != g.degree)
    throw std::domain_error("bombieri_inner: degree or variable mismatch");
  Rat acc = 0;
  for (const auto& [e, c] : f.coeffs) {
    auto it = g.coeffs.find(e);
    if (it == g.coeffs.end()) continue;
    acc += rat(c * it->second) * detail::bombieri_weight(e, f.degree);
  }
  return acc;
}

inline Rat bombieri_norm_sq(const HomoPoly& f) { return bombieri_inner(f, f); }

// Arakelov degree of a global section over Q: the finite part cancels the
// content, leaving minus the log Bombieri norm of the primitive part.
inline LogForm deg_n_section(const HomoPoly& f) {
  auto [content, prim] = content_and_primitive(f);
  return log_of_rat(bombieri_norm_sq(prim), rat(-1, 2));
}

// The only knowledge this library keeps of the John/Bombieri norm gap
// R0(n,D): the sandwich 0 <= R0 <= (1/2) log r(n,D).
struct NormGapBounds {
  Int r;
  LogForm r0_lo;  // zero
  LogForm r0_hi;  // (1/2) log r

  static NormGapBounds for_space(long n, long D) {
    Int r = rank_e(n, D);
    return NormGapBounds{r, LogForm::zero(), log_of_int(r, rat(1, 2))};
  }
};

// Exact check of the Bombieri product inequality
//   ||f g||^2 * C(D+D', D) >= ||f||^2 ||g||^2
// as a rational comparison; the verdict is carried in the certificate.
inline BoundCertificate product_inequality_check(const HomoPoly& f, const HomoPoly& g) {
  if (f.n != g.n) throw std::domain_error("product_inequality_check: variable mismatch");
  Rat lhs = bombieri_norm_sq(f * g) *
            rat(binomial(static_cast<unsigned long>(f.degree + g.degree),
                         static_cast<unsigned long>(f.degree)));
  Rat rhs = bombieri_norm_sq(f) * bombieri_norm_sq(g);
  BoundCertificate cert;
  cert.rule = "bombieri-product";
  cert.lhs = to_string(lhs);
  cert.rhs = to_string(rhs);
  cert.verdict = lhs >= rhs ? Verdict::Pass : Verdict::Fail;
  cert.witnesses = {{"f", f.to_string()}, {"g", g.to_string()}};
  return cert;
}

struct SupNormEstimate {
  double lower_estimate = 0;
  std::vector<std::complex<double>> argmax;
};

// Lower estimate of the sup of the Fubini-Study norm |f(x)|/|x|^degree over
// the complex unit sphere, by seeded sampling plus projected gradient
// ascent.  Deterministic given the seed; never used on a soundness path.
inline SupNormEstimate sup_norm_estimate(const HomoPoly& f, int samples = 256,
                                         int refine_iters = 200, uint64_t seed = 1) {
  int dim = f.n + 1;
  auto norm = [&](const std::vector<std::complex<double>>& x) {
    double s = 0;
    for (const auto& z : x) s += std::norm(z);
    return std::sqrt(s);
  };
  auto value = [&](const std::vector<std::complex<double>>& x) {
    double r = norm(x);
    if (r == 0) return 0.0;
    return std::abs(f.eval(x)) / std::pow(r, f.degree);
  };
  auto grad_step = [&](std::vector<std::complex<double>>& x) {
    // Numerical gradient of |f|^2 on the sphere, then renormalize.
    const double h = 1e-6;
    std::vector<std::complex<double>> g(dim);
    double base = value(x);
    for (int i = 0; i < dim; ++i) {
      for (int part = 0; part < 2; ++part) {
        auto y = x;
        y[i] += part == 0 ? std::complex<double>(h, 0) : std::complex<double>(0, h);
        double d = (value(y) - base) / h;
        g[i] += part == 0 ? std::complex<double>(d, 0) : std::complex<double>(0, d);
      }
    }
    double step = 0.05;
    for (int tries = 0; tries < 8; ++tries) {
      auto y = x;
      for (int i = 0; i < dim; ++i) y[i] += step * g[i];
      double r = norm(y);
      for (auto& z : y) z /= r;
      if (value(y) > base) {
        x = y;
        return true;
      }
      step /= 4;
    }
    return false;
  };

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  SupNormEstimate best;
  auto consider = [&](std::vector<std::complex<double>> x) {
    double r = norm(x);
    if (r == 0) return;
    for (auto& z : x) z /= r;
    double v = value(x);
    if (v > best.lower_estimate) {
      best.lower_estimate = v;
      best.argmax = x;
    }
  };
  // Deterministic starts: coordinate vectors and the all-ones vector.
  for (int i = 0; i < dim; ++i) {
    std::vector<std::complex<double>> x(dim);
    x[i] = 1;
    consider(x);
  }
  consider(std::vector<std::complex<double>>(dim, {1.0, 0.0}));
  for (int s = 0; s < samples; ++s) {
    std::vector<std::complex<double>> x(dim);
    for (auto& z : x) z = {gauss(rng), gauss(rng)};
    consider(x);
  }
  if (!best.argmax.empty()) {
    auto x = best.argmax;
    for (int it = 0; it < refine_iters; ++it)
      if (!grad_step(x)) break;
    consider(x);
  }
  return best;
}

}  // namespace ahs

#endif  // AHS_HEIGHTS_HPP

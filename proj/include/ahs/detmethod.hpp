#ifndef AHS_DETMETHOD_HPP
#define AHS_DETMETHOD_HPP

#include <cmath>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ahs/asympt.hpp"
#include "ahs/heights.hpp"
#include "ahs/matrix.hpp"
#include "ahs/poly.hpp"

namespace ahs {

// Rational points of f = 0 with squared Fubini-Study height at most B^2.
struct PointSet {
  std::vector<RatPoint> points;
  Rat B;
  HomoPoly hypersurface;

  nlohmann::json to_json() const {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : points) {
      nlohmann::json row = nlohmann::json::array();
      for (const auto& x : p.coords) row.push_back(x.get_str());
      pts.push_back(row);
    }
    return {{"f", hypersurface.to_string()}, {"B", to_string(B)}, {"points", pts}};
  }
};

// Exactly the canonical points with f = 0 and sum x_i^2 <= B^2, enumerated
// by nested coordinate ranges with pruning on the partial sum of squares.
// Only representatives with positive first nonzero coordinate are visited,
// so the output is duplicate-free and lexicographically sorted.
inline PointSet enumerate_points(const HomoPoly& f, const Rat& B) {
  if (B < 1) throw std::domain_error("enumerate_points: need B >= 1");
  int dim = f.n + 1;
  Rat b2 = B * B;
  // Coordinates are bounded by floor(B).
  Int bound_int(b2.get_num() / b2.get_den());
  long bound = isqrt(bound_int).get_si();

  PointSet out;
  out.B = B;
  out.hypersurface = f;
  std::vector<Int> x(dim);
  auto rec = [&](auto&& self, int i, const Int& sum_sq, bool lead_found) -> void {
    if (i == dim) {
      if (!lead_found) return;
      if (f.eval(x) != 0) return;
      Int g = 0;
      for (const Int& c : x) {
        Int t;
        mpz_gcd(t.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        g = t;
      }
      if (g != 1) return;  // non-primitive vectors repeat a smaller point
      out.points.push_back(RatPoint{x});
      return;
    }
    long lo = lead_found ? -bound : 0;
    for (long v = lo; v <= bound; ++v) {
      Int sq = sum_sq + Int(v) * v;
      if (rat(sq) > b2) continue;
      x[i] = v;
      self(self, i + 1, sq, lead_found || v > 0);
    }
  };
  rec(rec, 0, Int(0), false);
  std::sort(out.points.begin(), out.points.end());
  return out;
}

// Multiplicative height threshold of the covering theorem:
//   exp(K_degree * (h(X)/(n delta) + B0(n) - (log(n+1) + 1)/2)),
// evaluated with the certified lower bound for B0(n), hence sound downward.
inline Interval threshold_B(int n, int delta, const LogForm& h_X, const B0Result& b0,
                            int K_degree = 1, long prec = 128) {
  if (!b0.certified) throw NotCertified("threshold_B: B0(n) lower bound not certified");
  if (b0.n != n) throw std::domain_error("threshold_B: B0 computed for a different n");
  LogForm exact = h_X.scaled(rat(1, n * delta)) - log_of_int(n + 1, rat(1, 2)) -
                  LogForm::constant(rat(1, 2));
  Interval exponent = exact.eval(prec) + b0.value_lower;
  return exponent.scaled(rat(K_degree)).exp();
}

// Rows = points, columns = the monomials of the given degree evaluated at
// the primitive coordinates (row scaling is irrelevant for kernel purposes).
inline ExactMatrix evaluation_matrix(const PointSet& ps, int degree) {
  if (degree < 1) throw std::domain_error("evaluation_matrix: degree must be >= 1");
  int n = ps.hypersurface.n;
  auto monos = monomials_of_degree(n, degree);
  ExactMatrix m(ps.points.size(), monos.size());
  for (size_t i = 0; i < ps.points.size(); ++i)
    for (size_t j = 0; j < monos.size(); ++j) {
      Int v = 1;
      for (int k = 0; k <= n; ++k)
        for (int e = 0; e < monos[j][k]; ++e) v *= ps.points[i].coords[k];
      m.at(i, j) = rat(v);
    }
  return m;
}

struct CoverFailure {
  size_t rank = 0;
  size_t rows = 0;
  size_t cols = 0;
  std::string reason;
};

using CoverOutcome = std::variant<HomoPoly, CoverFailure>;

namespace detail_cover {

// Integer vector from a rational one: clear denominators, divide by content,
// keep the sign of the first nonzero entry positive.
inline std::vector<Int> normalize_vector(const std::vector<Rat>& v) {
  Int lcm = 1;
  for (const Rat& q : v) {
    Int l;
    mpz_lcm(l.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
    lcm = l;
  }
  std::vector<Int> w;
  Int g = 0;
  for (const Rat& q : v) {
    Rat s = q * rat(lcm);
    w.push_back(Int(s.get_num()));
    Int t;
    mpz_gcd(t.get_mpz_t(), g.get_mpz_t(), w.back().get_mpz_t());
    g = t;
  }
  if (g == 0) throw std::logic_error("zero kernel vector");
  for (Int& c : w) c /= g;
  for (const Int& c : w) {
    if (c == 0) continue;
    if (c < 0)
      for (Int& y : w) y = -y;
    break;
  }
  return w;
}

inline Int max_abs(const std::vector<Int>& v) {
  Int m = 0;
  for (const Int& c : v) m = std::max(m, Int(abs(c)));
  return m;
}

}  // namespace detail_cover

// Constructs a form g of the requested degree vanishing on every point of
// S(f; B) with f not dividing g, from the kernel of the evaluation map.
// Kernel vectors lying in the subspace f * E_{degree - deg f} are filtered
// out by an exact divisibility test; among the survivors the vector with the
// smallest max coefficient wins (ties lexicographically).  Cheap necessary
// irreducibility conditions only; full irreducibility of f is the caller's
// responsibility.
inline CoverOutcome auxiliary_hypersurface(const HomoPoly& f, const Rat& B, int degree) {
  if (degree < 1) throw std::domain_error("auxiliary_hypersurface: degree must be >= 1");
  PointSet ps = enumerate_points(f, B);
  auto monos = monomials_of_degree(f.n, degree);

  std::vector<std::vector<Rat>> kernel;
  size_t rank = 0;
  if (ps.points.empty()) {
    // Vacuous vanishing: every form qualifies.
    kernel.reserve(monos.size());
    for (size_t j = 0; j < monos.size(); ++j) {
      std::vector<Rat> v(monos.size(), Rat(0));
      v[j] = 1;
      kernel.push_back(std::move(v));
    }
  } else {
    ExactMatrix m = evaluation_matrix(ps, degree);
    rank = m.rank();
    kernel = m.kernel_basis();
  }

  std::optional<HomoPoly> best;
  Int best_max;
  std::vector<Int> best_vec;
  for (const auto& kv : kernel) {
    std::vector<Int> w = detail_cover::normalize_vector(kv);
    std::map<Expo, Int> cs;
    for (size_t j = 0; j < monos.size(); ++j)
      if (w[j] != 0) cs[monos[j]] = w[j];
    HomoPoly g(f.n, degree, std::move(cs));
    if (degree >= f.degree && divides(f, g)) continue;
    Int mx = detail_cover::max_abs(w);
    if (!best || mx < best_max || (mx == best_max && w < best_vec)) {
      best = g;
      best_max = mx;
      best_vec = w;
    }
  }
  if (!best) {
    return CoverFailure{rank, ps.points.size(), monos.size(),
                        "no kernel vector escapes the multiples of f"};
  }
  return *best;
}

// Inputs of the covering-degree bound; the reduction constant b' and the
// ambient constant C2 are caller-supplied (they live outside this library).
struct VarpiInputs {
  int n = 2;
  int delta = 2;
  double B = 1.0;
  double H_K = 1.0;      // exp([K:Q] h(X))
  double b_prime = 1.0;  // >= 1
  double C2 = 0.0;

  void validate() const {
    if (n < 2 || delta < 2) throw std::domain_error("varpi: need n >= 2 and delta >= 2");
    if (B < 1 || H_K < 1 || b_prime < 1) throw std::domain_error("varpi: need B, H_K, b' >= 1");
  }
};

// exp(C2) * B^{n/((n-1) delta^{1/(n-1)})} * delta^{4 - 1/(n-1)} * b' / H_K^{1/(n delta)}.
inline double varpi_bound(const VarpiInputs& in) {
  in.validate();
  double nm1 = in.n - 1;
  double b_exp = in.n / (nm1 * std::pow(in.delta, 1.0 / nm1));
  double d_exp = 4.0 - 1.0 / nm1;
  return std::exp(in.C2) * std::pow(in.B, b_exp) * std::pow(in.delta, d_exp) * in.b_prime /
         std::pow(in.H_K, 1.0 / (in.n * in.delta));
}

}  // namespace ahs

#endif  // AHS_DETMETHOD_HPP

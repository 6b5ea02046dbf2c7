#ifndef AHS_VERIFY_HPP
#define AHS_VERIFY_HPP

#include <atomic>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ahs/config.hpp"
#include "ahs/detmethod.hpp"
#include "ahs/hilbert.hpp"
#include "ahs/parallel.hpp"

namespace ahs {

struct SuiteResult {
  std::string name;
  std::vector<BoundCertificate> certs;
  std::vector<ValiditySweep> sweeps;  // appendix suite only
  int pass = 0, fail = 0, undecided = 0, out_of_range = 0;

  void add(BoundCertificate c) {
    switch (c.verdict) {
      case Verdict::Pass: ++pass; break;
      case Verdict::Fail: ++fail; break;
      case Verdict::OutOfValidatedRange: ++out_of_range; break;
      default: ++undecided; break;
    }
    certs.push_back(std::move(c));
  }

  void merge(SuiteResult other) {
    pass += other.pass;
    fail += other.fail;
    undecided += other.undecided;
    out_of_range += other.out_of_range;
    for (auto& c : other.certs) certs.push_back(std::move(c));
    for (auto& s : other.sweeps) sweeps.push_back(std::move(s));
  }

  bool ok() const { return fail == 0 && undecided == 0; }

  std::string summary() const {
    return name + ": " + std::to_string(pass) + " pass, " + std::to_string(fail) +
           " fail, " + std::to_string(out_of_range) + " out-of-validated-range, " +
           std::to_string(undecided) + " undecided";
  }
};

namespace harness {

inline HomoPoly random_poly(std::mt19937_64& rng, int n, int deg, long amp = 9) {
  std::uniform_int_distribution<long> coef(-amp, amp);
  for (;;) {
    std::map<Expo, Int> cs;
    for (const auto& e : monomials_of_degree(n, deg))
      if (long c = coef(rng); c != 0) cs[e] = c;
    if (!cs.empty()) return HomoPoly(n, deg, std::move(cs));
  }
}

inline HomoPoly random_primitive(std::mt19937_64& rng, int n, int deg, long amp = 9) {
  for (;;) {
    HomoPoly f = random_poly(rng, n, deg, amp);
    if (is_primitive(f)) return f;
  }
}

// Brute-force point scan over the full coordinate box, as an independent
// check of the pruned enumeration.
inline std::set<std::vector<Int>> naive_point_scan(const HomoPoly& f, const Rat& B) {
  std::set<std::vector<Int>> out;
  Rat b2 = B * B;
  long bound = isqrt(Int(b2.get_num() / b2.get_den())).get_si();
  int dim = f.n + 1;
  std::vector<long> x(dim, -bound);
  for (;;) {
    std::vector<Int> v(dim);
    bool nonzero = false;
    Int sq = 0;
    for (int i = 0; i < dim; ++i) {
      v[i] = x[i];
      sq += v[i] * v[i];
      nonzero |= x[i] != 0;
    }
    if (nonzero && rat(sq) <= b2 && f.eval(v) == 0) out.insert(normalize_point(v).coords);
    int j = dim - 1;
    while (j >= 0 && x[j] == bound) x[j--] = -bound;
    if (j < 0) break;
    ++x[j];
  }
  return out;
}

}  // namespace harness

// Envelope validity sweeps for C (n >= 1), S and Q (n >= 2), plus the
// Euler-Maclaurin certificates.  Containment misses surface as
// OutOfValidatedRange certificates, never as failures.
inline SuiteResult run_appendix_suite(const RunConfig& cfg, int n_max = 4, int D_max = 60,
                                      long prec = 256) {
  SuiteResult out;
  out.name = "appendix";
  struct Cell {
    EnvelopeKind kind;
    int n;
  };
  std::vector<Cell> cells;
  for (int n = 1; n <= n_max; ++n) cells.push_back({EnvelopeKind::C, n});
  for (int n = 2; n <= n_max; ++n) {
    cells.push_back({EnvelopeKind::S, n});
    cells.push_back({EnvelopeKind::Q, n});
  }
  std::vector<ValiditySweep> sweeps = parallel_map<ValiditySweep>(
      cells.size(), [&](size_t i) {
        Appendix ap(cfg.asympt());
        return sweep_validity(ap, cells[i].kind, cells[i].n, D_max, prec);
      });
  for (auto& sw : sweeps) {
    BoundCertificate c;
    c.rule = std::string("validity-") + sw.record.kind;
    c.lhs = sw.record.to_json();
    c.rhs = nlohmann::json();
    c.verdict = sw.record.D0 >= 0 ? Verdict::Pass : Verdict::OutOfValidatedRange;
    c.witnesses = {{"n", sw.record.n}, {"counterexamples", sw.counterexamples.size()}};
    out.add(std::move(c));
    for (const auto& ce : sw.counterexamples) out.certs.push_back(ce), ++out.out_of_range;
    out.sweeps.push_back(std::move(sw));
  }
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<long> pd(1, 30), qd(0, 40);
  for (int t = 0; t < 25; ++t) {
    long p = pd(rng), q = p + qd(rng);
    out.add(euler_maclaurin_check(em_log(), p, q));
    out.add(euler_maclaurin_check(em_xlog(), p, q));
  }
  return out;
}

// The multiplication chain on a named grid of primitive sections.
inline SuiteResult run_chain_suite(const RunConfig& cfg, int D_max = 8) {
  SuiteResult out;
  out.name = "chain";
  SignConvention sign = cfg.resolved_sign();
  struct Case {
    int n, delta;
    const char* f;
  };
  const Case cases[] = {
      {1, 1, "x0"},
      {1, 2, "x0^2+x1^2"},
      {2, 1, "x0+x1+x2"},
      {2, 2, "x0^2+x1^2-x2^2"},
  };
  for (const auto& c : cases) {
    HomoPoly f = parse_poly(c.f, c.n);
    for (auto& cert :
         verify_chain(c.n, c.delta, f, c.delta + 1, std::max(c.delta + 1, D_max), sign,
                      cfg.precision_bits))
      out.add(std::move(cert));
  }
  return out;
}

// Exact height inequalities on random inputs.
inline SuiteResult run_heights_suite(const RunConfig& cfg, int points = 10000,
                                     int slope_cases = 500, int gauss_cases = 1000) {
  SuiteResult out;
  out.name = "heights";
  std::mt19937_64 rng(cfg.seed);

  std::uniform_int_distribution<long> coord(-1000, 1000);
  std::uniform_int_distribution<int> pick_n(1, 5);
  int bad = 0;
  for (int done = 0; done < points;) {
    int n = pick_n(rng);
    std::vector<Int> raw(n + 1);
    bool zero = true;
    for (auto& x : raw) {
      x = coord(rng);
      if (x != 0) zero = false;
    }
    if (zero) continue;
    RatPoint p = normalize_point(raw);
    Int mx = 0, sum = 0;
    for (const Int& x : p.coords) {
      mx = std::max(mx, Int(abs(x)));
      sum += x * x;
    }
    if (!(mx * mx <= sum && sum <= Int(n + 1) * mx * mx)) ++bad;
    ++done;
  }
  {
    BoundCertificate c;
    c.rule = "height-sandwich";
    c.lhs = points;
    c.rhs = bad;
    c.verdict = bad == 0 ? Verdict::Pass : Verdict::Fail;
    out.add(std::move(c));
  }

  std::uniform_int_distribution<int> sn(1, 3), sd(1, 5);
  int slope_bad = 0;
  for (int t = 0; t < slope_cases; ++t) {
    int n = sn(rng), d = sd(rng);
    HomoPoly f = harness::random_poly(rng, n, d, 50);
    // -(n/2)log(d+1) <= (1/2)log N - log M <= (3n/2)log(d+1), with
    // N = ||f_prim||^2 and M = max |coef(f_prim)|, is exactly the pair of
    // rational inequalities M^2 <= N (d+1)^n and N <= M^2 (d+1)^{3n}.
    auto [content, prim] = content_and_primitive(f);
    Rat N = bombieri_norm_sq(prim);
    Int M = 0;
    for (const auto& [e, c] : prim.coeffs) M = std::max(M, Int(abs(c)));
    Rat m2 = rat(M * M);
    Rat growth = pow_rat(rat(d + 1), n);
    if (!(m2 <= N * growth && N <= m2 * pow_rat(growth, 3))) ++slope_bad;
  }
  {
    BoundCertificate c;
    c.rule = "naive-slope-sandwich";
    c.lhs = slope_cases;
    c.rhs = slope_bad;
    c.verdict = slope_bad == 0 ? Verdict::Pass : Verdict::Fail;
    out.add(std::move(c));
  }

  std::uniform_int_distribution<int> gn(1, 2), gd(1, 3);
  int gauss_bad = 0;
  for (int t = 0; t < gauss_cases; ++t) {
    int n = gn(rng);
    HomoPoly f = harness::random_poly(rng, n, gd(rng), 12);
    HomoPoly g = harness::random_poly(rng, n, gd(rng), 12);
    if (content_and_primitive(f * g).first !=
        content_and_primitive(f).first * content_and_primitive(g).first)
      ++gauss_bad;
  }
  {
    BoundCertificate c;
    c.rule = "gauss-content";
    c.lhs = gauss_cases;
    c.rhs = gauss_bad;
    c.verdict = gauss_bad == 0 ? Verdict::Pass : Verdict::Fail;
    out.add(std::move(c));
  }
  return out;
}

inline SuiteResult run_bbem_suite(const RunConfig& cfg, int count = 1000) {
  SuiteResult out;
  out.name = "bbem";
  std::mt19937_64 rng(cfg.seed + 1);
  std::uniform_int_distribution<int> pn(1, 3), pd(1, 4);
  int bad = 0;
  for (int t = 0; t < count; ++t) {
    int n = pn(rng);
    HomoPoly f = harness::random_poly(rng, n, pd(rng));
    HomoPoly g = harness::random_poly(rng, n, pd(rng));
    if (product_inequality_check(f, g).verdict != Verdict::Pass) ++bad;
  }
  BoundCertificate c;
  c.rule = "bombieri-product-sweep";
  c.lhs = count;
  c.rhs = bad;
  c.verdict = bad == 0 ? Verdict::Pass : Verdict::Fail;
  out.add(std::move(c));
  return out;
}

// Enumeration cross-check, covering construction postconditions, and the
// covering-theorem implication below the certified threshold.
inline SuiteResult run_detmethod_suite(const RunConfig& cfg, const B0Result& b0_n2,
                                       int enum_cases = 20) {
  SuiteResult out;
  out.name = "detmethod";
  std::mt19937_64 rng(cfg.seed + 2);
  std::uniform_int_distribution<int> deg(2, 3), bsel(1, 6);
  int enum_bad = 0;
  for (int t = 0; t < enum_cases; ++t) {
    HomoPoly f = harness::random_poly(rng, 2, deg(rng), 4);
    Rat B = rat(bsel(rng));
    PointSet ps = enumerate_points(f, B);
    std::set<std::vector<Int>> got;
    for (const auto& p : ps.points) got.insert(p.coords);
    if (got != harness::naive_point_scan(f, B)) ++enum_bad;
  }
  {
    BoundCertificate c;
    c.rule = "enumeration-vs-scan";
    c.lhs = enum_cases;
    c.rhs = enum_bad;
    c.verdict = enum_bad == 0 ? Verdict::Pass : Verdict::Fail;
    out.add(std::move(c));
  }

  // Covering theorem, conic family: f = x0^2 + x1^2 - N x2^2, N = 10^12.
  {
    HomoPoly f = parse_poly("x0^2+x1^2-1000000000000*x2^2");
    LogForm h = classic_height_poly(f);
    Interval thr = threshold_B(2, 2, h, b0_n2, 1, cfg.precision_bits);
    std::vector<Rat> candidates;
    for (Rat B : {rat(1), rat(3, 2), rat(2), rat(3), rat(5)})
      if (Interval::from_rat(B, 64).hi_double() < thr.lo_double()) candidates.push_back(B);
    bool vacuous = candidates.empty();
    if (vacuous) candidates.push_back(rat(1));  // exercise the pipeline anyway
    bool all_ok = true;
    for (const Rat& B : candidates) {
      CoverOutcome res = auxiliary_hypersurface(f, B, 3);
      if (std::holds_alternative<CoverFailure>(res)) {
        all_ok = false;
        continue;
      }
      const HomoPoly& g = std::get<HomoPoly>(res);
      for (const auto& p : enumerate_points(f, B).points)
        if (g.eval(p.coords) != 0) all_ok = false;
      if (divides(f, g)) all_ok = false;
    }
    BoundCertificate c;
    c.rule = "cover-conic-below-threshold";
    c.lhs = thr.to_string(12);
    c.rhs = vacuous ? "no admissible B >= 1 below threshold" : "tested";
    c.verdict = all_ok ? Verdict::Pass : Verdict::Fail;
    c.witnesses = {{"vacuous", vacuous}, {"candidates", candidates.size()}};
    out.add(std::move(c));
  }

  // Cubic family: choose N = 10^k so that B = 3/2 sits below the certified
  // threshold; then S(X;3/2) = {[1,-1,0]} must be covered at degree <= 4.
  {
    int k = 1;
    for (; k <= 400; ++k) {
      LogForm h = log_of_rat(pow_rat(rat(10), k));
      Interval thr = threshold_B(2, 3, h, b0_n2, 1, cfg.precision_bits);
      if (thr.lo_double() > 1.5) break;
    }
    HomoPoly f = parse_poly("x0^3+x1^3-1" + std::string(k, '0') + "*x2^3");
    Interval thr = threshold_B(2, 3, classic_height_poly(f), b0_n2, 1, cfg.precision_bits);
    bool below = 1.5 < thr.lo_double();
    PointSet ps = enumerate_points(f, rat(3, 2));
    CoverOutcome res = auxiliary_hypersurface(f, rat(3, 2), 4);
    bool ok = below && ps.points.size() == 1 && std::holds_alternative<HomoPoly>(res);
    if (ok) {
      const HomoPoly& g = std::get<HomoPoly>(res);
      ok = g.eval(ps.points[0].coords) == 0 && !divides(f, g) && g.degree <= 4;
    }
    BoundCertificate c;
    c.rule = "cover-cubic-below-threshold";
    c.lhs = thr.to_string(12);
    c.rhs = "B = 3/2";
    c.verdict = ok ? Verdict::Pass : Verdict::Fail;
    c.witnesses = {{"k", k}, {"points", ps.points.size()}};
    out.add(std::move(c));
  }
  return out;
}

}  // namespace ahs

#endif  // AHS_VERIFY_HPP

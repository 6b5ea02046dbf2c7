#include "ahs/detmethod.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace ahs;

namespace {

// Independent oracle: scan every integer vector with |x_i| <= floor(B),
// normalize, and keep the distinct canonical solutions inside the ball.
std::set<std::vector<Int>> naive_scan(const HomoPoly& f, const Rat& B) {
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

HomoPoly random_form(std::mt19937_64& rng, int n, int deg) {
  std::uniform_int_distribution<long> coef(-4, 4);
  for (;;) {
    std::map<Expo, Int> cs;
    for (const auto& e : monomials_of_degree(n, deg))
      if (long c = coef(rng); c != 0) cs[e] = c;
    if (!cs.empty()) return HomoPoly(n, deg, std::move(cs));
  }
}

}  // namespace

TEST(Enumerate, LinePoint) {
  PointSet ps = enumerate_points(parse_poly("x0", 1), rat(1));
  ASSERT_EQ(ps.points.size(), 1u);
  EXPECT_EQ(ps.points[0].coords, (std::vector<Int>{0, 1}));
}

TEST(Enumerate, Circle) {
  PointSet ps = enumerate_points(parse_poly("x0^2+x1^2-x2^2"), rat(2));
  ASSERT_EQ(ps.points.size(), 4u);
  std::set<std::vector<Int>> got;
  for (const auto& p : ps.points) got.insert(p.coords);
  std::set<std::vector<Int>> expect = {{1, 0, 1}, {1, 0, -1}, {0, 1, 1}, {0, 1, -1}};
  EXPECT_EQ(got, expect);
  // Lexicographic output order.
  EXPECT_TRUE(std::is_sorted(ps.points.begin(), ps.points.end()));
}

TEST(Enumerate, FermatCubic) {
  PointSet ps = enumerate_points(parse_poly("x0^3+x1^3+x2^3"), rat(3, 2));
  std::set<std::vector<Int>> got;
  for (const auto& p : ps.points) got.insert(p.coords);
  std::set<std::vector<Int>> expect = {{1, -1, 0}, {1, 0, -1}, {0, 1, -1}};
  EXPECT_EQ(got, expect);
}

TEST(Enumerate, MatchesNaiveScan) {
  std::mt19937_64 rng(1812);
  std::uniform_int_distribution<int> deg(2, 3), bsel(1, 6);
  for (int t = 0; t < 20; ++t) {
    HomoPoly f = random_form(rng, 2, deg(rng));
    Rat B = rat(bsel(rng));
    PointSet ps = enumerate_points(f, B);
    std::set<std::vector<Int>> got;
    for (const auto& p : ps.points) got.insert(p.coords);
    EXPECT_EQ(got, naive_scan(f, B)) << f.to_string() << " B=" << B;
  }
}

TEST(Enumerate, RejectsSmallB) {
  EXPECT_THROW(enumerate_points(parse_poly("x0", 1), rat(1, 2)), std::domain_error);
}

TEST(EvalMatrix, Examples) {
  PointSet one;
  one.hypersurface = parse_poly("x0", 1);
  one.B = rat(1);
  one.points = {normalize_point({Int(1), Int(0)})};
  ExactMatrix m = evaluation_matrix(one, 1);
  EXPECT_EQ(m.rows(), 1u);
  EXPECT_EQ(m.cols(), 2u);
  EXPECT_EQ(m.at(0, 0), rat(1));
  EXPECT_EQ(m.at(0, 1), rat(0));

  PointSet fermat = enumerate_points(parse_poly("x0^3+x1^3+x2^3"), rat(3, 2));
  ExactMatrix fm = evaluation_matrix(fermat, 1);
  EXPECT_EQ(fm.rank(), 2u);
  auto ker = fm.kernel_basis();
  ASSERT_EQ(ker.size(), 1u);
  EXPECT_EQ(ker[0], (std::vector<Rat>{rat(1), rat(1), rat(1)}));
}

TEST(Threshold, ScalingLaw) {
  B0Calculator calc;
  B0Result b0 = calc.lower_bound(2, B0Search{60, 6, 96});
  ASSERT_TRUE(b0.certified);
  // threshold(h + n*delta*log t) = t * threshold(h).
  int n = 2, delta = 2;
  Interval base = threshold_B(n, delta, LogForm::zero(), b0);
  Interval shifted = threshold_B(n, delta, log_of_int(7, rat(n * delta)), b0);
  EXPECT_NEAR(shifted.lo_double() / base.lo_double(), 7.0, 1e-9);
  EXPECT_NEAR(shifted.hi_double() / base.hi_double(), 7.0, 1e-9);
}

TEST(Threshold, PowerOfTenHeight) {
  B0Calculator calc;
  B0Result b0 = calc.lower_bound(2, B0Search{60, 6, 96});
  ASSERT_TRUE(b0.certified);
  // h = log(10^9), n = 2, delta = 2: threshold = 10^{9/4} * threshold(0).
  Interval base = threshold_B(2, 2, LogForm::zero(), b0);
  Interval big = threshold_B(2, 2, log_of_rat(pow_rat(rat(10), 9)), b0);
  EXPECT_NEAR(big.mid_double() / base.mid_double(), std::pow(10.0, 9.0 / 4.0),
              std::pow(10.0, 9.0 / 4.0) * 1e-8);
}

TEST(Cover, CircleDegreeThree) {
  HomoPoly f = parse_poly("x0^2+x1^2-x2^2");
  CoverOutcome out = auxiliary_hypersurface(f, rat(2), 3);
  ASSERT_TRUE(std::holds_alternative<HomoPoly>(out));
  const HomoPoly& g = std::get<HomoPoly>(out);
  EXPECT_EQ(g.degree, 3);
  for (const auto& p : enumerate_points(f, rat(2)).points)
    EXPECT_EQ(g.eval(p.coords), 0) << g.to_string();
  EXPECT_FALSE(divides(f, g));
}

TEST(Cover, FermatDegreeOne) {
  HomoPoly f = parse_poly("x0^3+x1^3+x2^3");
  CoverOutcome out = auxiliary_hypersurface(f, rat(3, 2), 1);
  ASSERT_TRUE(std::holds_alternative<HomoPoly>(out));
  EXPECT_EQ(std::get<HomoPoly>(out), parse_poly("x0+x1+x2"));
}

TEST(Cover, EmptyPointSet) {
  // x0^2 + x1^2 + x2^2 = 0 has no rational points at all.
  HomoPoly f = parse_poly("x0^2+x1^2+x2^2");
  CoverOutcome out = auxiliary_hypersurface(f, rat(5), 2);
  ASSERT_TRUE(std::holds_alternative<HomoPoly>(out));
  const HomoPoly& g = std::get<HomoPoly>(out);
  EXPECT_EQ(g.coeffs.size(), 1u);  // a single monomial suffices vacuously
  EXPECT_FALSE(divides(f, g));
}

TEST(Cover, PostconditionsOnRandomConics) {
  std::mt19937_64 rng(3571);
  int done = 0;
  while (done < 10) {
    HomoPoly f = random_form(rng, 2, 2);
    if (!is_primitive(f)) continue;
    CoverOutcome out = auxiliary_hypersurface(f, rat(3), 3);
    if (std::holds_alternative<CoverFailure>(out)) continue;  // degenerate f; fine
    const HomoPoly& g = std::get<HomoPoly>(out);
    for (const auto& p : enumerate_points(f, rat(3)).points)
      EXPECT_EQ(g.eval(p.coords), 0) << f.to_string() << " | " << g.to_string();
    EXPECT_FALSE(divides(f, g)) << f.to_string();
    ++done;
  }
}

TEST(Varpi, Examples) {
  VarpiInputs base{2, 2, 1.0, 1.0, 1.0, 0.0};
  // B = H = b' = 1, C2 = 0: bound is delta^{4 - 1/(n-1)} = 2^3.
  EXPECT_NEAR(varpi_bound(base), 8.0, 1e-12);

  VarpiInputs doubled = base;
  doubled.H_K = 2.0;
  EXPECT_NEAR(varpi_bound(doubled) / varpi_bound(base), std::pow(2.0, -0.25), 1e-12);

  // n=2, delta=2, B=1e4, H_K=1e8: exponent of B is n/((n-1)delta) = 1,
  // so the bound is 1e4 * 8 * 1e-2 = 800.
  VarpiInputs big{2, 2, 1e4, 1e8, 1.0, 0.0};
  EXPECT_NEAR(varpi_bound(big), 800.0, 1e-6);
}

TEST(Varpi, Validation) {
  VarpiInputs bad{1, 2, 1.0, 1.0, 1.0, 0.0};
  EXPECT_THROW(varpi_bound(bad), std::domain_error);
  VarpiInputs bad2{2, 2, 1.0, 1.0, 0.5, 0.0};
  EXPECT_THROW(varpi_bound(bad2), std::domain_error);
}

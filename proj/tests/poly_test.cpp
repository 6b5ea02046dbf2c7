#include "ahs/poly.hpp"

#include <gtest/gtest.h>

#include <optional>
#include <random>

using namespace ahs;

TEST(PolyParse, Basic) {
  HomoPoly f = parse_poly("x0^2+x1^2-x2^2");
  EXPECT_EQ(f.n, 2);
  EXPECT_EQ(f.degree, 2);
  EXPECT_EQ(f.coeffs.size(), 3u);
  EXPECT_EQ(f.coeffs.at(Expo{2, 0, 0}), 1);
  EXPECT_EQ(f.coeffs.at(Expo{0, 0, 2}), -1);
}

TEST(PolyParse, CoefficientsAndProducts) {
  HomoPoly f = parse_poly("3*x0*x1 - 2*x1^2");
  EXPECT_EQ(f.coeffs.at(Expo{1, 1}), 3);
  EXPECT_EQ(f.coeffs.at(Expo{0, 2}), -2);
  EXPECT_EQ(parse_poly("x0*x0*x1"), parse_poly("x0^2*x1"));
}

TEST(PolyParse, BigCoefficient) {
  HomoPoly f = parse_poly("x0^2+x1^2-1000000000000*x2^2");
  EXPECT_EQ(f.coeffs.at(Expo{0, 0, 2}), Int("-1000000000000"));
}

TEST(PolyParse, HomogeneityErrorHasPosition) {
  try {
    parse_poly("x0^2+x1");
    FAIL() << "expected parse error";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("position"), std::string::npos) << e.what();
  }
}

TEST(PolyParse, MalformedInput) {
  EXPECT_THROW(parse_poly("x0^2 + + x1^2"), std::invalid_argument);
  EXPECT_THROW(parse_poly("2x0"), std::invalid_argument);
  EXPECT_THROW(parse_poly(""), std::invalid_argument);
}

TEST(PolyParse, ExplicitVariableCount) {
  HomoPoly f = parse_poly("x0^2+x1^2", 2);
  EXPECT_EQ(f.n, 2);
  EXPECT_EQ(f.coeffs.begin()->first.size(), 3u);
}

TEST(PolyText, RoundTrip) {
  const char* cases[] = {"x0^2+x1^2-x2^2", "3*x0*x1-2*x1^2", "x0^3+x1^3+x2^3"};
  for (const char* c : cases) {
    HomoPoly f = parse_poly(c);
    EXPECT_EQ(parse_poly(f.to_string()), f) << c;
  }
}

TEST(PolyJson, RoundTrip) {
  HomoPoly f = parse_poly("7*x0^2*x1-x1^3+2*x2^3");
  EXPECT_EQ(HomoPoly::from_json(f.to_json()), f);
}

TEST(PolyMonomials, OrderAndCount) {
  auto ms = monomials_of_degree(1, 2);
  ASSERT_EQ(ms.size(), 3u);
  EXPECT_EQ(ms[0], (Expo{2, 0}));
  EXPECT_EQ(ms[1], (Expo{1, 1}));
  EXPECT_EQ(ms[2], (Expo{0, 2}));
  EXPECT_EQ(monomials_of_degree(2, 3).size(), 10u);
}

TEST(PolyContent, Examples) {
  auto [c1, p1] = content_and_primitive(parse_poly("2*x0+4*x1"));
  EXPECT_EQ(c1, 2);
  EXPECT_EQ(p1, parse_poly("x0+2*x1"));
  auto [c2, p2] = content_and_primitive(parse_poly("x0^2", 1));
  EXPECT_EQ(c2, 1);
  auto [c3, p3] = content_and_primitive(parse_poly("6*x0*x1-9*x1^2"));
  EXPECT_EQ(c3, 3);
  EXPECT_EQ(p3, parse_poly("2*x0*x1-3*x1^2"));
}

TEST(PolyContent, GaussMultiplicativity) {
  // content(f*g) = content(f) * content(g) for random integer polynomials.
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> coef(-12, 12);
  std::uniform_int_distribution<int> pick_n(1, 2), pick_d(1, 3);
  int done = 0;
  while (done < 1000) {
    int n = pick_n(rng);
    auto rand_poly = [&](int deg) -> std::optional<HomoPoly> {
      std::map<Expo, Int> cs;
      for (const auto& e : monomials_of_degree(n, deg)) {
        long c = coef(rng);
        if (c != 0) cs[e] = c;
      }
      if (cs.empty()) return std::nullopt;
      return HomoPoly(n, deg, std::move(cs));
    };
    auto f = rand_poly(pick_d(rng));
    auto g = rand_poly(pick_d(rng));
    if (!f || !g) continue;
    EXPECT_EQ(content_and_primitive(*f * *g).first,
              content_and_primitive(*f).first * content_and_primitive(*g).first);
    ++done;
  }
}

TEST(PolyDivides, Examples) {
  EXPECT_TRUE(divides(parse_poly("x0+x1"), parse_poly("x0^2-x1^2")));
  EXPECT_FALSE(divides(parse_poly("x0^2+x1^2"), parse_poly("x0^3", 1)));
  EXPECT_FALSE(divides(parse_poly("x0^2+x1^2-x2^2"), parse_poly("x0*x1*x2")));
}

TEST(PolyDivides, RationalQuotients) {
  // 2*x0+2*x1 divides x0^2-x1^2 over Q though the cofactor is not integral.
  EXPECT_TRUE(divides(parse_poly("2*x0+2*x1"), parse_poly("x0^2-x1^2")));
}

TEST(PolyDivides, ProductsAlwaysDivide) {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<long> coef(-9, 9);
  std::uniform_int_distribution<int> pick_d(1, 3);
  int done = 0;
  while (done < 200) {
    int n = 2;
    std::map<Expo, Int> cf, cg;
    int df = pick_d(rng), dg = pick_d(rng);
    for (const auto& e : monomials_of_degree(n, df))
      if (long c = coef(rng); c != 0) cf[e] = c;
    for (const auto& e : monomials_of_degree(n, dg))
      if (long c = coef(rng); c != 0) cg[e] = c;
    if (cf.empty() || cg.empty()) continue;
    HomoPoly f(n, df, std::move(cf)), g(n, dg, std::move(cg));
    EXPECT_TRUE(divides(f, f * g));
    ++done;
  }
}

TEST(PolyEval, IntegerAndComplex) {
  HomoPoly f = parse_poly("x0^2+x1^2-x2^2");
  EXPECT_EQ(f.eval({Int(3), Int(4), Int(5)}), 0);
  EXPECT_EQ(f.eval({Int(1), Int(1), Int(1)}), 1);
  auto z = f.eval(std::vector<std::complex<double>>{{1, 0}, {0, 1}, {0, 0}});
  EXPECT_NEAR(std::abs(z), 0.0, 1e-12);
}

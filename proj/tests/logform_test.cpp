#include "ahs/logform.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ahs;

TEST(LogFormConstruct, LogOfOneIsZero) {
  EXPECT_TRUE(LogForm::from_log_rational(rat(1)).is_zero());
}

TEST(LogFormConstruct, PrimeBase) {
  LogForm f = LogForm::from_log_rational(rat(2));
  EXPECT_EQ(f, LogForm::log_prime(2));
  EXPECT_EQ(f.log_coeff(2), rat(1));
  EXPECT_EQ(f.const_part(), 0);
  EXPECT_EQ(f.pi_coeff(), 0);
}

TEST(LogFormConstruct, NineHalves) {
  // 9/2 = 3^2 * 2^-1
  LogForm f = LogForm::from_log_rational(rat(9, 2));
  EXPECT_EQ(f.log_coeff(3), rat(2));
  EXPECT_EQ(f.log_coeff(2), rat(-1));
  EXPECT_EQ(f.log_coeffs().size(), 2u);
}

TEST(LogFormConstruct, NonPositiveRejected) {
  EXPECT_THROW(LogForm::from_log_rational(rat(0)), std::domain_error);
  EXPECT_THROW(LogForm::from_log_rational(rat(-3, 7)), std::domain_error);
}

TEST(LogFormEval, ZeroIsPointInterval) {
  Interval i = LogForm::zero().eval(64);
  EXPECT_TRUE(i.contains(rat(0)));
  EXPECT_EQ(i.width_double(), 0.0);
}

TEST(LogFormEval, Log2) {
  Interval i = LogForm::log_prime(2).eval(64);
  EXPECT_GT(i.lo_double(), 0.693147180);
  EXPECT_LT(i.hi_double(), 0.693147181);
}

TEST(LogFormEval, OnePlusLogPi) {
  LogForm f = LogForm::constant(rat(1)) + LogForm::pi_log(rat(1));
  Interval i = f.eval(64);
  EXPECT_GT(i.lo_double(), 2.144729885);
  EXPECT_LT(i.hi_double(), 2.144729886);
}

TEST(LogFormEval, PrecisionBelow16Rejected) {
  EXPECT_THROW(LogForm::log_prime(2).eval(8), std::domain_error);
}

TEST(LogFormCompare, EqualIffStructural) {
  EXPECT_EQ(LogForm::compare(LogForm::log_prime(2), LogForm::log_prime(2)), Ordering::Equal);
  EXPECT_EQ(LogForm::compare(LogForm::log_prime(2), LogForm::log_prime(3)), Ordering::Less);
}

TEST(LogFormCompare, ThreeLogTwoVsTwoLogThree) {
  // 2^3 = 8 < 9 = 3^2
  LogForm a = LogForm::log_prime(2, rat(3));
  LogForm b = LogForm::log_prime(3, rat(2));
  EXPECT_EQ(LogForm::compare(a, b), Ordering::Less);
  EXPECT_EQ(LogForm::compare(b, a), Ordering::Greater);
}

TEST(LogFormCompare, TinyDifferenceStillResolves) {
  // 24727/15601 is a continued-fraction convergent of log2(3), so these two
  // forms are extremely close; the comparison must still separate them and
  // agree with the exact integer comparison of 2^24727 vs 3^15601.
  LogForm a = LogForm::log_prime(2, rat(24727));
  LogForm b = LogForm::log_prime(3, rat(15601));
  Ordering expected =
      pow_int(Int(2), 24727) < pow_int(Int(3), 15601) ? Ordering::Less : Ordering::Greater;
  EXPECT_EQ(LogForm::compare(a, b, 4096), expected);
}

namespace {

Rat random_positive_rat(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(1, 100000);
  std::uniform_int_distribution<long> den(1, 1000);
  return rat(num(rng), den(rng));
}

LogForm random_form(std::mt19937_64& rng) {
  static const long primes[] = {2, 3, 5, 7, 11, 13};
  std::uniform_int_distribution<long> coef(-100, 100);
  LogForm f = LogForm::constant(rat(coef(rng), 7));
  for (long p : primes) f += LogForm::log_prime(p, rat(coef(rng), 3));
  f += LogForm::pi_log(rat(coef(rng), 5));
  return f;
}

}  // namespace

TEST(LogFormProperty, RoundTripInverse) {
  // log(p/q) + log(q/p) == 0 structurally.
  std::mt19937_64 rng(20240811);
  for (int i = 0; i < 500; ++i) {
    Rat x = random_positive_rat(rng);
    LogForm sum = LogForm::from_log_rational(x) + LogForm::from_log_rational(1 / x);
    EXPECT_TRUE(sum.is_zero()) << "x=" << x;
  }
}

TEST(LogFormProperty, Additivity) {
  // log(ab) == log(a) + log(b) structurally.
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    Rat a = random_positive_rat(rng);
    Rat b = random_positive_rat(rng);
    EXPECT_EQ(LogForm::from_log_rational(a * b),
              LogForm::from_log_rational(a) + LogForm::from_log_rational(b));
  }
}

TEST(LogFormProperty, EnclosureNesting) {
  // Evaluation at 256 bits is nested inside evaluation at 64 bits.
  std::mt19937_64 rng(42);
  for (int i = 0; i < 1000; ++i) {
    LogForm f = random_form(rng);
    Interval coarse = f.eval(64);
    Interval fine = f.eval(256);
    EXPECT_TRUE(fine.nested_in(coarse)) << f.to_string();
  }
}

TEST(LogFormJson, RoundTrip) {
  LogForm f = LogForm::constant(rat(-7, 3)) + LogForm::log_prime(2, rat(5, 2)) +
              LogForm::log_prime(13, rat(-1)) + LogForm::pi_log(rat(9, 4));
  nlohmann::json j = f.to_json();
  EXPECT_EQ(j["const"], "-7/3");
  EXPECT_EQ(j["logs"]["2"], "5/2");
  EXPECT_EQ(j["pi"], "9/4");
  EXPECT_EQ(LogForm::from_json(j), f);
}

TEST(LogFormText, Format) {
  LogForm c12 = LogForm::log_prime(2, rat(-1));
  EXPECT_EQ(c12.to_string(), "-1 * log(2)");
  EXPECT_EQ(LogForm::zero().to_string(), "0");
}

TEST(IntervalOps, MulSignCases) {
  Interval a = Interval::from_rat(rat(-3, 2), 64);
  Interval b = Interval::log_rat(rat(2), 64);
  Interval p = a * b;
  EXPECT_LT(p.hi_double(), 0);
  EXPECT_GT(p.lo_double(), -1.04);
}

TEST(IntervalOps, ExpMonotone) {
  Interval x = Interval::log_rat(rat(5), 64);
  Interval e = x.exp();
  EXPECT_TRUE(e.contains(rat(5)));
}

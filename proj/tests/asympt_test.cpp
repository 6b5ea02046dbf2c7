#include "ahs/asympt.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ahs;

namespace {

bool contains(const Envelope& env, const LogForm& exact, long prec = 128) {
  return check_envelope(env, exact, prec).verdict == Verdict::Pass;
}

}  // namespace

TEST(Remainders, A1LowerClosedForm) {
  // n=2, D=10: -2^5 (21/2) log(21/2) - (3/2 log(3/2) + 1/2 - 1/2 log(2pi)).
  Appendix ap;
  LogForm expected = log_of_rat(rat(21, 2), rat(-32) * rat(21, 2));
  expected -= log_of_rat(rat(3, 2), rat(3, 2));
  expected -= LogForm::constant(rat(1, 2));
  expected += LogForm::log_two_pi(rat(1, 2));
  EXPECT_EQ(ap.a1_lower(2, 10), expected);
}

TEST(Remainders, A1PairOrdered) {
  Appendix ap;
  for (long n : {2L, 3L, 4L})
    for (long D : {2L, 5L, 17L, 60L}) {
      auto [lo, hi] = ap.remainder_pair(EnvelopeKind::A1, n, D);
      EXPECT_EQ(LogForm::compare(lo, hi, 128), Ordering::Less) << n << " " << D;
    }
}

TEST(Remainders, A4BaseIsMinusA3) {
  Appendix ap;
  for (long D : {2L, 7L, 31L}) {
    EXPECT_EQ(ap.a4_lower(1, D), -ap.a3_lower(D));
    EXPECT_EQ(ap.a4_upper(1, D), -ap.a3_lower(D));
  }
}

TEST(Remainders, A3PairAtFour) {
  Appendix ap;
  auto [lo, hi] = ap.remainder_pair(EnvelopeKind::A3, 1, 4);
  EXPECT_EQ(LogForm::compare(lo, hi, 128), Ordering::Less);
  // Frozen enclosures: A3(4) ~ -1.0801, A3'(4) ~ 4.1481.
  EXPECT_NEAR(lo.to_double(), -1.0801, 1e-3);
  EXPECT_NEAR(hi.to_double(), 4.1481, 1e-3);
}

TEST(Remainders, EpsilonValidation) {
  EXPECT_THROW(Appendix(AsymptConfig{rat(1, 6), 128}), std::domain_error);
  EXPECT_THROW(Appendix(AsymptConfig{rat(0), 128}), std::domain_error);
  EXPECT_NO_THROW(Appendix(AsymptConfig{rat(1, 7), 128}));
}

TEST(Envelopes, SContainsExact) {
  Appendix ap;
  EXPECT_TRUE(contains(ap.s_envelope(2, 10), s_exact(2, 10)));
  EXPECT_TRUE(contains(ap.s_envelope(3, 20), s_exact(3, 20)));
  // Small D: the check reports a determinate verdict either way; here it holds.
  auto chk = check_envelope(ap.s_envelope(2, 3), s_exact(2, 3), 128);
  EXPECT_EQ(chk.verdict, Verdict::Pass);
}

TEST(Envelopes, QContainsExact) {
  Appendix ap;
  EXPECT_TRUE(contains(ap.q_envelope(2, 10), q_exact(2, 10)));
  EXPECT_TRUE(contains(ap.q_envelope(3, 15), q_exact(3, 15)));
  auto chk = check_envelope(ap.q_envelope(2, 2), q_exact(2, 2), 128);
  EXPECT_EQ(chk.verdict, Verdict::Pass);
}

TEST(Envelopes, CContainsExact) {
  Appendix ap;
  EXPECT_TRUE(contains(ap.c_envelope(1, 10), c_exact(1, 10)));
  EXPECT_TRUE(contains(ap.c_envelope(2, 20), c_exact(2, 20)));
}

TEST(Envelopes, CNegativeAtDTwo) {
  // Every summand of C(n,2) is log of a number <= 1, so the exact value is
  // negative (the envelope itself is far wider at D = 2).
  for (long n : {2L, 3L, 4L}) {
    Interval v = c_exact(n, 2).eval(64);
    EXPECT_TRUE(v.strictly_negative()) << n;
  }
}

TEST(Envelopes, UpperBreaksAtKnownD) {
  // The printed upper remainder genuinely under-covers from D = 31 (n = 2):
  // the sweep records the maximal initial certified run and emits exact
  // counterexample certificates after it.
  Appendix ap;
  ValiditySweep sweep = sweep_validity(ap, EnvelopeKind::C, 2, 35, 256);
  EXPECT_EQ(sweep.record.D0, 2);
  EXPECT_EQ(sweep.record.checked_up_to, 30);
  ASSERT_FALSE(sweep.counterexamples.empty());
  EXPECT_EQ(sweep.counterexamples.front().witnesses.at("D").get<int>(), 31);
  EXPECT_FALSE(sweep.counterexamples.front().witnesses.at("upper_ok").get<bool>());
}

TEST(B0, ClosedTermsAndSign) {
  B0Calculator calc;
  // Closed part at n = 2: 1/4 - log(3)/2 - 5/2 + gamma(2)/2 ~ -4.105.
  EXPECT_NEAR(calc.closed_part(2).to_double(), -4.1049, 1e-3);
  B0Result r = calc.lower_bound(2, B0Search{120, 12, 128});
  ASSERT_TRUE(r.certified);
  EXPECT_LT(r.value_lower.hi_double(), 0.0);
}

TEST(B0, DegenerateSearchStillSound) {
  B0Calculator calc;
  B0Result tiny = calc.lower_bound(2, B0Search{1, 1, 96});
  ASSERT_TRUE(tiny.certified);
  B0Result wide = calc.lower_bound(2, B0Search{120, 12, 96});
  ASSERT_TRUE(wide.certified);
  // Smaller search set gives a weaker (smaller) certified bound.
  EXPECT_LE(tiny.value_lower.lo_rat(), wide.value_lower.lo_rat());
}

TEST(B0, MonotoneInSearchWidth) {
  B0Calculator calc;
  Rat prev;
  bool first = true;
  for (long dmax : {60L, 120L, 240L}) {
    B0Result r = calc.lower_bound(3, B0Search{dmax, 10, 96});
    ASSERT_TRUE(r.certified) << dmax;
    if (!first) EXPECT_LE(prev, r.value_lower.lo_rat()) << dmax;
    prev = r.value_lower.lo_rat();
    first = false;
  }
}

TEST(B0, Reproducible) {
  B0Calculator a, b;
  B0Result r1 = a.lower_bound(2, B0Search{80, 8, 128});
  B0Result r2 = b.lower_bound(2, B0Search{80, 8, 128});
  EXPECT_EQ(r1.value_lower.lo_rat(), r2.value_lower.lo_rat());
  EXPECT_EQ(r1.value_lower.hi_rat(), r2.value_lower.hi_rat());
  EXPECT_EQ(r1.tail_bound.hi_rat(), r2.tail_bound.hi_rat());
}

TEST(B0, RequiresNAtLeastTwo) {
  B0Calculator calc;
  EXPECT_THROW(calc.lower_bound(1), std::domain_error);
}

TEST(EulerMaclaurin, LogExample) {
  auto cert = euler_maclaurin_check(em_log(), 2, 50);
  EXPECT_EQ(cert.verdict, Verdict::Pass);
  // Bound is 49 * (1/(3/2)^2) = 196/9.
  EXPECT_EQ(LogForm::from_json(cert.rhs), LogForm::constant(rat(196, 9)));
}

TEST(EulerMaclaurin, SingleTerm) {
  EXPECT_EQ(euler_maclaurin_check(em_log(), 3, 3).verdict, Verdict::Pass);
}

TEST(EulerMaclaurin, XLogExample) {
  EXPECT_EQ(euler_maclaurin_check(em_xlog(), 2, 40).verdict, Verdict::Pass);
}

TEST(EulerMaclaurin, UnknownIdRejected) {
  EXPECT_THROW(em_function_by_id("sin"), std::domain_error);
}

TEST(EulerMaclaurin, RandomPairs) {
  std::mt19937_64 rng(60221023);
  std::uniform_int_distribution<long> pd(1, 40), qd(0, 60);
  for (int t = 0; t < 100; ++t) {
    long p = pd(rng);
    long q = p + qd(rng);
    EXPECT_EQ(euler_maclaurin_check(em_log(), p, q).verdict, Verdict::Pass) << p << " " << q;
    EXPECT_EQ(euler_maclaurin_check(em_xlog(), p, q).verdict, Verdict::Pass) << p << " " << q;
  }
}

TEST(Validity, JsonRoundTrip) {
  ValidityRecord r{3, "C", 2, 47, 256};
  ValidityRecord back = ValidityRecord::from_json(r.to_json());
  EXPECT_EQ(back.n, 3);
  EXPECT_EQ(back.kind, "C");
  EXPECT_EQ(back.D0, 2);
  EXPECT_EQ(back.checked_up_to, 47);
  EXPECT_EQ(back.precision_bits, 256);
}

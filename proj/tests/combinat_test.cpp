#include "ahs/combinat.hpp"

#include <gtest/gtest.h>

using namespace ahs;

TEST(Rank, Examples) {
  EXPECT_EQ(rank_e(1, 2), 3);
  EXPECT_EQ(rank_e(2, 2), 6);
  EXPECT_EQ(rank_e(2, 3), 10);
  EXPECT_EQ(rank_e(0, 17), 1);
}

TEST(Rank, QuotientExamples) {
  EXPECT_EQ(rank_fd(2, 1, 2), 3);  // 6 - 3
  EXPECT_EQ(rank_fd(1, 1, 5), 1);  // 6 - 5
  EXPECT_EQ(rank_fd(2, 2, 3), 7);  // 10 - 3
  EXPECT_THROW(rank_fd(2, 3, 2), std::domain_error);
}

TEST(Rank, PascalRecursion) {
  // r(n,D) = sum_{m<=D} r(n-1,m) on the desk grid.
  for (long n = 1; n <= 5; ++n)
    for (long D = 0; D <= 60; ++D) {
      Int sum = 0;
      for (long m = 0; m <= D; ++m) sum += rank_e(n - 1, m);
      EXPECT_EQ(rank_e(n, D), sum) << "n=" << n << " D=" << D;
    }
}

TEST(Harmonic, Values) {
  EXPECT_EQ(harmonic(1), rat(1));
  EXPECT_EQ(harmonic(3), rat(11, 6));
  EXPECT_EQ(harmonic(5), rat(137, 60));
  EXPECT_THROW(harmonic(0), std::domain_error);
}

TEST(CBrute, Examples) {
  EXPECT_TRUE(c_bruteforce(0, 5).is_zero());
  EXPECT_EQ(c_bruteforce(1, 2), LogForm::log_prime(2, rat(-1)));
  EXPECT_EQ(c_bruteforce(2, 2), LogForm::log_prime(2, rat(-3)));
}

TEST(CBrute, CapEnforced) {
  EXPECT_THROW(c_bruteforce(3, 10, 100), CapExceeded);
}

TEST(CExact, Examples) {
  EXPECT_TRUE(c_exact(4, 1).is_zero());
  EXPECT_TRUE(c_exact(3, 0).is_zero());
  EXPECT_EQ(c_exact(1, 3), LogForm::log_prime(3, rat(-2)));
  EXPECT_EQ(c_exact(1, 2), LogForm::log_prime(2, rat(-1)));
}

TEST(CExact, MatchesBruteForceSmall) {
  for (long n = 0; n <= 3; ++n)
    for (long D = 0; D <= 12; ++D)
      EXPECT_EQ(c_exact(n, D), c_bruteforce(n, D)) << "n=" << n << " D=" << D;
}

TEST(CExact, LayerRecursion) {
  // C(n,D) = sum_m (C(n-1,m) - r(n-1,m) log C(D,m)) on n <= 4, D <= 30.
  for (long n = 1; n <= 4; ++n)
    for (long D = 0; D <= 30; ++D) {
      LogForm rhs;
      for (long m = 0; m <= D; ++m) {
        rhs += c_exact(n - 1, m);
        rhs -= log_binomial(D, m).scaled(rat(rank_e(n - 1, m)));
      }
      EXPECT_EQ(c_exact(n, D), rhs) << "n=" << n << " D=" << D;
    }
}

TEST(CExact, PlaneCurveProductIdentity) {
  // C(1,D) = -log prod_m C(D,m) for D <= 60.
  for (long D = 0; D <= 60; ++D) {
    LogForm rhs;
    for (long m = 0; m <= D; ++m) rhs -= log_binomial(D, m);
    EXPECT_EQ(c_exact(1, D), rhs) << "D=" << D;
  }
}

TEST(QExact, Examples) {
  EXPECT_EQ(q_exact(1, 2), LogForm::log_prime(2));
  EXPECT_EQ(q_exact(1, 3), LogForm::log_prime(3, rat(2)));
  EXPECT_EQ(q_exact(1, 3), -c_exact(1, 3));
  EXPECT_EQ(q_exact(2, 2), LogForm::log_prime(2, rat(2)));
}

TEST(QExact, TwoFormulasAgreeOnGrid) {
  // The cross-check lives inside q_exact; this sweep would throw on mismatch.
  for (long n = 1; n <= 4; ++n)
    for (long D = 0; D <= 60; ++D) EXPECT_NO_THROW(q_exact(n, D));
}

TEST(SExact, Examples) {
  EXPECT_EQ(s_exact(1, 2), LogForm::log_prime(2));
  EXPECT_EQ(s_exact(2, 3), LogForm::log_prime(3, rat(4)));
  EXPECT_EQ(s_exact(1, 3), LogForm::log_prime(3, rat(2)));
  EXPECT_TRUE(s_exact(2, 1).is_zero());
  EXPECT_TRUE(s_exact(3, 0).is_zero());
}

TEST(SExact, MatchesQForPlaneCase) {
  // S(1,D) and Q(1,D) have the same terms.
  for (long D = 2; D <= 40; ++D) EXPECT_EQ(s_exact(1, D), q_exact(1, D));
}

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "mfm/rng.hpp"

namespace {

// Reference values from an independent implementation of SplitMix64 and
// xoshiro256++ written from the published algorithm descriptions.
TEST(Rng, SplitMixMatchesReference) {
  EXPECT_EQ(mfm::splitmix64(0), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(mfm::splitmix64(1), 0x910a2dec89025cc1ULL);
}

TEST(Rng, XoshiroMatchesReference) {
  mfm::Xoshiro256pp g(1);
  EXPECT_EQ(g(), 0xcfc5d07f6f03c29bULL);
  EXPECT_EQ(g(), 0xbf424132963fe08dULL);
  EXPECT_EQ(g(), 0x19a37d5757aaf520ULL);
  EXPECT_EQ(g(), 0xbf08119f05cd56d6ULL);

  mfm::Xoshiro256pp h(0x123456789ULL);
  EXPECT_EQ(h(), 0xd4051037674cac05ULL);
  EXPECT_EQ(h(), 0x0757c553b28f997dULL);
  EXPECT_EQ(h(), 0x219dec3cee84559aULL);
}

TEST(Rng, DerivedSeedsDiffer) {
  EXPECT_NE(mfm::derive_seed(1, 0), mfm::derive_seed(1, 1));
  EXPECT_NE(mfm::derive_seed(1, 0), mfm::derive_seed(2, 0));
  EXPECT_EQ(mfm::derive_seed(9, 4), mfm::splitmix64(9 ^ 4));
}

TEST(Rng, UniformRangeAndMean) {
  mfm::Rng rng(3);
  double sum = 0.0;
  constexpr int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(Rng, UniformIndexIsUnbiased) {
  mfm::Rng rng(5);
  std::vector<int> counts(7, 0);
  constexpr int n = 70000;
  for (int i = 0; i < n; ++i) {
    const auto k = rng.uniform_index(7);
    ASSERT_LT(k, 7u);
    ++counts[k];
  }
  // Chi-square with 6 degrees of freedom; 22.46 is the 0.1% critical value.
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - n / 7.0) * (c - n / 7.0) / (n / 7.0);
  EXPECT_LT(chi2, 22.46);
}

TEST(Rng, NormalMoments) {
  mfm::Rng rng(11);
  constexpr int n = 400000;
  double s1 = 0.0, s2 = 0.0, s4 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    s1 += z;
    s2 += z * z;
    s4 += z * z * z * z;
  }
  EXPECT_NEAR(s1 / n, 0.0, 0.01);
  EXPECT_NEAR(s2 / n, 1.0, 0.01);
  EXPECT_NEAR(s4 / n, 3.0, 0.06);
}

TEST(Rng, PoissonMeanAndVariance) {
  for (double lambda : {0.5, 1.0, 4.0}) {
    mfm::Rng rng(17);
    constexpr int n = 200000;
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double k = static_cast<double>(rng.poisson(lambda));
      s1 += k;
      s2 += k * k;
    }
    const double mean = s1 / n;
    const double var = s2 / n - mean * mean;
    EXPECT_NEAR(mean, lambda, 5.0 * std::sqrt(lambda / n)) << lambda;
    EXPECT_NEAR(var, lambda, 0.03 * lambda) << lambda;
  }
}

TEST(Rng, SameSeedSameStream) {
  mfm::Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
}

}  // namespace

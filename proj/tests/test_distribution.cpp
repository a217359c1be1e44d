#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "mfm/distribution.hpp"
#include "synthetic.hpp"

namespace {

using mfm::ValidationError;

TEST(Ccdf, Counting) {
  const mfm::Ccdf c(std::vector<double>{1.0, 2.0, 3.0});
  EXPECT_DOUBLE_EQ(c(0.5), 1.0);
  EXPECT_DOUBLE_EQ(c(1.0), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(c(2.0), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(c(3.0), 0.0);
  const auto pts = c.points();
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_EQ(pts[0].x, 1.0);
  EXPECT_DOUBLE_EQ(pts[0].p, 2.0 / 3.0);
  EXPECT_EQ(pts[1].x, 2.0);
}

TEST(Ccdf, SingleSample) {
  const mfm::Ccdf c(std::vector<double>{5.0});
  EXPECT_EQ(c(4.0), 1.0);
  EXPECT_EQ(c(5.0), 0.0);
  EXPECT_TRUE(c.points().empty());
}

TEST(Ccdf, TiesCollapse) {
  const auto pts = mfm::ccdf(std::vector<double>{2.0, 1.0, 2.0, 1.0, 3.0});
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_DOUBLE_EQ(pts[0].p, 0.6);
  EXPECT_DOUBLE_EQ(pts[1].p, 0.2);
}

TEST(Ccdf, MonotoneForRandomInputs) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto v = mfm_test::gaussian(500, seed);
    for (auto& x : v) x = std::round(x * 4.0);  // force ties
    const auto pts = mfm::ccdf(v);
    for (std::size_t i = 1; i < pts.size(); ++i) {
      ASSERT_GT(pts[i].x, pts[i - 1].x);
      ASSERT_LT(pts[i].p, pts[i - 1].p);
    }
    for (const auto& p : pts) {
      ASSERT_GT(p.p, 0.0);
      ASSERT_LE(p.p, 1.0);
    }
  }
}

TEST(Ccdf, ParetoTailSlope) {
  const auto v = mfm_test::pareto(3.0, 100000, 7);
  std::vector<double> lx, lp;
  for (const auto& p : mfm::ccdf(v)) {
    if (p.p < 1e-1 && p.p > 1e-3) {
      lx.push_back(std::log(p.x));
      lp.push_back(std::log(p.p));
    }
  }
  EXPECT_NEAR(mfm_test::ols_slope(lx, lp), -3.0, 0.15);
}

TEST(Ccdf, RejectsEmpty) { EXPECT_THROW(mfm::Ccdf(std::vector<double>{}), ValidationError); }

TEST(NormalCcdf, KnownValues) {
  EXPECT_DOUBLE_EQ(mfm::normal_ccdf(0.0), 0.5);
  EXPECT_NEAR(mfm::normal_ccdf(1.959963984540054), 0.025, 1e-15);
  EXPECT_NEAR(mfm::normal_ccdf(-1.0) + mfm::normal_ccdf(1.0), 1.0, 1e-15);
}

TEST(LogNormalFit, RecoversParameters) {
  auto v = mfm_test::gaussian(100000, 31);
  for (auto& x : v) x = std::exp(x);
  const auto fit = mfm::lognormal_fit(v, 0.05);
  EXPECT_NEAR(fit.mu_ln, 0.0, 0.02);
  EXPECT_NEAR(fit.sigma_ln, 1.0, 0.02);
  EXPECT_LT(fit.ks_distance, 0.01);
  EXPECT_EQ(fit.n_used, 90000u);
}

TEST(LogNormalFit, ShiftedParameters) {
  auto v = mfm_test::gaussian(100000, 32);
  for (auto& x : v) x = std::exp(-1.5 + 0.4 * x);
  const auto fit = mfm::lognormal_fit(v, 0.05);
  EXPECT_NEAR(fit.mu_ln, -1.5, 0.01);
  EXPECT_NEAR(fit.sigma_ln, 0.4, 0.01);
}

TEST(LogNormalFit, PoorFitForOtherLaws) {
  const auto v = mfm_test::pareto(1.0, 100000, 33);
  // Log of a Pareto(1) is exponential, which is visibly not Gaussian.
  EXPECT_GT(mfm::lognormal_fit(v, 0.05).ks_distance, 0.03);
}

TEST(LogNormalFit, Rejects) {
  EXPECT_THROW(mfm::lognormal_fit(std::vector<double>(100, 2.0)), ValidationError);
  EXPECT_THROW(mfm::lognormal_fit(std::vector<double>{1.0, 2.0, 0.0, 3.0}), ValidationError);
}

TEST(ClassifyTail, ExponentialSamples) {
  const auto d = mfm::classify_tail(mfm_test::exponential(1.0, 100000, 41));
  EXPECT_EQ(d.regime, mfm::TailRegime::Exponential);
  EXPECT_NEAR(d.exponential_rate, 1.0, 0.05);
}

TEST(ClassifyTail, ParetoSamples) {
  const auto d = mfm::classify_tail(mfm_test::symmetric_pareto(3.0, 100000, 42));
  EXPECT_EQ(d.regime, mfm::TailRegime::PowerLaw);
  EXPECT_NEAR(d.power_exponent, 3.0, 0.15);
}

TEST(ClassifyTail, GaussianIsNotPowerLaw) {
  EXPECT_EQ(mfm::classify_tail(mfm_test::gaussian(100000, 43)).regime, mfm::TailRegime::Exponential);
}

TEST(JarqueBera, GaussianPassesHeavyTailFails) {
  const auto g = mfm::jarque_bera(mfm_test::gaussian(100000, 51));
  EXPECT_LT(g.jarque_bera, 9.21);
  EXPECT_NEAR(g.skewness, 0.0, 0.03);
  EXPECT_NEAR(g.excess_kurtosis, 0.0, 0.06);
  const auto p = mfm::jarque_bera(mfm_test::symmetric_pareto(3.0, 100000, 52));
  EXPECT_GT(p.jarque_bera, 1000.0);
  EXPECT_LT(p.p_value, 1e-6);
}

}  // namespace

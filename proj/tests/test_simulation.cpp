#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mfm/market.hpp"
#include "mfm/simulation.hpp"

namespace {

mfm::ModelConfig config(std::uint64_t seed = 3) {
  mfm::ModelConfig c;
  c.n_agents = 1000;
  c.tau = 200;
  c.t_steps = 3000;
  c.seed = seed;
  return c;
}

TEST(Simulation, Deterministic) {
  const auto a = mfm::run_simulation(config());
  const auto b = mfm::run_simulation(config());
  EXPECT_EQ(a.price, b.price);
  EXPECT_EQ(a.fundamental, b.fundamental);
  EXPECT_EQ(a.m, b.m);
  EXPECT_EQ(a.n_traders, b.n_traders);
  EXPECT_EQ(a.volume, b.volume);
}

TEST(Simulation, SeedChangesPath) {
  const auto a = mfm::run_simulation(config(3));
  const auto b = mfm::run_simulation(config(4));
  EXPECT_NE(a.price, b.price);
}

TEST(Simulation, ZeroStepsHoldsInitialState) {
  const auto s = mfm::run_simulation(config(), 0);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s.price[0], 1.0);
  EXPECT_EQ(s.m[0], 0.0);
  EXPECT_EQ(s.n_traders[0], 0u);
  EXPECT_EQ(s.volume[0], 0u);
}

TEST(Simulation, AlignedArrays) {
  const auto s = mfm::run_simulation(config());
  const std::size_t n = config().t_steps + 1;
  EXPECT_EQ(s.price.size(), n);
  EXPECT_EQ(s.fundamental.size(), n);
  EXPECT_EQ(s.m.size(), n);
  EXPECT_EQ(s.n_traders.size(), n);
  EXPECT_EQ(s.volume.size(), n);
  EXPECT_EQ(s.m[0], 0.0);
  EXPECT_EQ(s.n_traders[0], 0u);
}

TEST(Simulation, RecordAtNextIndexProducesNextPrice) {
  const auto c = config();
  const auto s = mfm::run_simulation(c);
  for (std::size_t t = 0; t + 1 < s.size(); ++t) {
    ASSERT_EQ(s.price[t + 1], s.price[t] * mfm::price_factor(mfm::clamp_net_demand(s.m[t + 1], c.n_agents)));
  }
}

TEST(Simulation, FundamentalIsMovingAverageThroughT) {
  const auto c = config();
  const auto s = mfm::run_simulation(c);
  for (std::size_t t = 0; t < s.size(); t += 37) {
    const std::size_t from = t + 1 > c.tau ? t + 1 - c.tau : 0;
    const double direct = std::accumulate(s.price.begin() + static_cast<std::ptrdiff_t>(from),
                                          s.price.begin() + static_cast<std::ptrdiff_t>(t + 1), 0.0) /
                          static_cast<double>(t + 1 - from);
    ASSERT_NEAR(s.fundamental[t], direct, 1e-12 * direct) << t;
  }
}

TEST(Simulation, MatchesManualStepping) {
  const auto c = config();
  const auto s = mfm::run_simulation(c, 500);
  mfm::MarketState state(c);
  for (std::size_t t = 1; t <= 500; ++t) {
    const auto rec = state.step();
    ASSERT_EQ(rec.price, s.price[t]);
    ASSERT_EQ(rec.n_traders, s.n_traders[t]);
  }
}

TEST(Simulation, PropagatesValidation) {
  auto c = config();
  c.n_agents = 0;
  EXPECT_THROW(mfm::run_simulation(c), mfm::ValidationError);
}

}  // namespace

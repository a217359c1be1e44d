#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mfm/model_config.hpp"
#include "mfm/rng.hpp"

namespace mfm {

/// Draws one sensitivity per agent. Homogeneous specs consume no randomness.
std::vector<double> sample_sensitivities(const SensitivitySpec& spec, std::size_t n_agents,
                                         Rng& rng);

/// Probability that an agent with sensitivity `mu` trades when the price
/// deviates from its perceived fundamental value:
///   exp(-mu * |ln(price / fundamental)|).
double trade_probability(double price, double fundamental, double mu);

/// Multiplicative price map f(M) = (1 + M) / (1 - M).
double price_factor(double net_demand);

/// Net demand bound applied before the price map: |M| <= 1 - 1/N.
double clamp_net_demand(double net_demand, std::size_t n_agents);

/// Arithmetic mean of a non-empty price window.
double fundamental_value(std::span<const double> history);

/// Fixed-capacity window over the most recent prices with an O(1) mean.
class PriceHistory {
 public:
  PriceHistory(std::size_t capacity, double initial_price);

  void push(double price);
  double mean() const { return sum_ / static_cast<double>(size_); }
  std::size_t size() const { return size_; }
  std::size_t capacity() const { return buffer_.size(); }

  /// Stored prices, oldest first.
  std::vector<double> values() const;

 private:
  void recompute_sum();

  std::vector<double> buffer_;
  std::size_t head_ = 0;  // next slot to write
  std::size_t size_ = 0;
  std::size_t pushes_since_resum_ = 0;
  double sum_ = 0.0;
};

struct StepRecord {
  double price = 0.0;         // p_{t+1}
  double fundamental = 0.0;   // moving average seen by the agents at t
  double m = 0.0;             // net demand M_t
  std::uint32_t n_traders = 0;
  std::uint64_t volume = 0;
};

/// Evolving market. Agents are labeled in ascending order of sensitivity and
/// decide in label order; each decision consumes one uniform for trade /
/// no-trade and, when trading, one uniform for the side (buy iff < 1/2).
/// Under the Poisson volume variant, trade sizes are drawn after all
/// decisions, one per trader.
class MarketState {
 public:
  /// Validates `config`, samples sensitivities from a stream seeded with
  /// config.seed, and places the market at p0 with history [p0].
  explicit MarketState(const ModelConfig& config);

  /// Advances one time step.
  StepRecord step();

  double price() const { return price_; }
  double fundamental() const { return history_.mean(); }
  std::size_t time() const { return t_; }
  std::span<const double> sensitivities() const { return mu_; }
  const PriceHistory& history() const { return history_; }

  /// Overwrites the current price. Intended for diagnostics and tests that
  /// inject a perturbation; the window is not rewritten.
  void set_price(double price);

 private:
  void decide_from_sensitivities(std::int64_t& signed_sum, std::uint32_t& traders);
  void decide_from_override(std::int64_t& signed_sum, std::uint32_t& traders);

  static constexpr std::size_t kBlock = 64;

  ModelConfig config_;
  Rng rng_;
  std::vector<double> mu_;
  bool homogeneous_ = true;
  double price_;
  PriceHistory history_;
  std::size_t t_ = 0;
};

}  // namespace mfm

#include "mfm/market.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mfm {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

void validate_sensitivity(const SensitivitySpec& spec) {
  std::visit(Overloaded{
                 [](const Homogeneous& h) {
                   if (!(h.mu >= 0.0) || !std::isfinite(h.mu))
                     throw ValidationError("mu", "sensitivity must be finite and non-negative");
                 },
                 [](const UniformHeterogeneous& u) {
                   if (!(u.lo >= 0.0) || !std::isfinite(u.hi))
                     throw ValidationError("mu_lo", "bounds must be finite and non-negative");
                   if (!(u.lo < u.hi))
                     throw ValidationError("mu_hi", "upper bound must exceed lower bound");
                 },
             },
             spec);
}

std::string describe(const SensitivitySpec& spec) {
  return std::visit(Overloaded{
                        [](const Homogeneous& h) { return "homogeneous(" + std::to_string(h.mu) + ")"; },
                        [](const UniformHeterogeneous& u) {
                          return "uniform(" + std::to_string(u.lo) + ", " + std::to_string(u.hi) + ")";
                        },
                    },
                    spec);
}

void ModelConfig::validate() const {
  if (n_agents < 2) throw ValidationError("n_agents", "need at least 2 agents");
  if (n_agents > 0xFFFFFFFFu) throw ValidationError("n_agents", "too many agents");
  validate_sensitivity(mu_spec);
  if (tau < 1) throw ValidationError("tau", "window must be at least 1");
  if (!(p0 > 0.0) || !std::isfinite(p0)) throw ValidationError("p0", "initial price must be positive");
  if (t_steps < 1) throw ValidationError("t_steps", "need at least 1 step");
  if (const auto* poisson = std::get_if<PoissonVolume>(&volume)) {
    if (!(poisson->lambda > 0.0) || !std::isfinite(poisson->lambda))
      throw ValidationError("poisson_lambda", "rate must be positive");
  }
  if (n_override) {
    if (!std::isfinite(n_override->mu_ln))
      throw ValidationError("n_override_mu_ln", "must be finite");
    if (!(n_override->sigma_ln > 0.0) || !std::isfinite(n_override->sigma_ln))
      throw ValidationError("n_override_sigma_ln", "must be positive");
  }
}

std::vector<double> sample_sensitivities(const SensitivitySpec& spec, std::size_t n_agents,
                                         Rng& rng) {
  validate_sensitivity(spec);
  return std::visit(Overloaded{
                        [&](const Homogeneous& h) { return std::vector<double>(n_agents, h.mu); },
                        [&](const UniformHeterogeneous& u) {
                          std::vector<double> mu(n_agents);
                          const double width = u.hi - u.lo;
                          for (auto& value : mu) value = std::min(u.hi, u.lo + width * rng.uniform());
                          return mu;
                        },
                    },
                    spec);
}

double trade_probability(double price, double fundamental, double mu) {
  if (!(price > 0.0)) throw ValidationError("price", "must be positive");
  if (!(fundamental > 0.0)) throw ValidationError("fundamental", "must be positive");
  if (!(mu >= 0.0)) throw ValidationError("mu", "must be non-negative");
  // Difference of logs keeps the result exactly symmetric in its arguments.
  return std::exp(-mu * std::abs(std::log(price) - std::log(fundamental)));
}

double price_factor(double net_demand) { return (1.0 + net_demand) / (1.0 - net_demand); }

double clamp_net_demand(double net_demand, std::size_t n_agents) {
  const double bound = 1.0 - 1.0 / static_cast<double>(n_agents);
  return std::clamp(net_demand, -bound, bound);
}

double fundamental_value(std::span<const double> history) {
  if (history.empty()) throw ValidationError("history", "must not be empty");
  return std::accumulate(history.begin(), history.end(), 0.0) / static_cast<double>(history.size());
}

// --- PriceHistory ---------------------------------------------------------

PriceHistory::PriceHistory(std::size_t capacity, double initial_price)
    : buffer_(capacity == 0 ? 1 : capacity, 0.0) {
  push(initial_price);
}

void PriceHistory::push(double price) {
  if (size_ == buffer_.size()) {
    sum_ -= buffer_[head_];
  } else {
    ++size_;
  }
  buffer_[head_] = price;
  sum_ += price;
  head_ = (head_ + 1) % buffer_.size();
  // Bound the drift of the running sum.
  if (++pushes_since_resum_ >= buffer_.size()) recompute_sum();
}

void PriceHistory::recompute_sum() {
  // Slots [0, size_) are occupied both before and after the first wrap.
  sum_ = std::accumulate(buffer_.begin(), buffer_.begin() + static_cast<std::ptrdiff_t>(size_), 0.0);
  pushes_since_resum_ = 0;
}

std::vector<double> PriceHistory::values() const {
  std::vector<double> out;
  out.reserve(size_);
  const std::size_t cap = buffer_.size();
  const std::size_t start = (head_ + cap - size_) % cap;
  for (std::size_t i = 0; i < size_; ++i) out.push_back(buffer_[(start + i) % cap]);
  return out;
}

// --- MarketState ----------------------------------------------------------

MarketState::MarketState(const ModelConfig& config)
    : config_((config.validate(), config)),
      rng_(config.seed),
      mu_(sample_sensitivities(config.mu_spec, config.n_agents, rng_)),
      price_(config.p0),
      history_(config.tau, config.p0) {
  homogeneous_ = std::holds_alternative<Homogeneous>(config_.mu_spec);
  std::sort(mu_.begin(), mu_.end());
}

void MarketState::set_price(double price) {
  if (!(price > 0.0)) throw ValidationError("price", "must be positive");
  price_ = price;
}

void MarketState::decide_from_sensitivities(std::int64_t& signed_sum, std::uint32_t& traders) {
  const double deviation = std::abs(std::log(price_ / history_.mean()));
  const std::size_t n = mu_.size();
  if (homogeneous_) {
    const double p = std::exp(-mu_.front() * deviation);
    for (std::size_t i = 0; i < n; ++i) {
      if (rng_.uniform() < p) {
        ++traders;
        signed_sum += rng_.uniform() < 0.5 ? 1 : -1;
      }
    }
    return;
  }
  // Sensitivities are sorted, so within a block exp(-mu_hi d) <= p_i <=
  // exp(-mu_lo d). Draws outside that bracket are decided without evaluating
  // the agent's own exponential; the outcome is identical either way.
  for (std::size_t begin = 0; begin < n; begin += kBlock) {
    const std::size_t end = std::min(n, begin + kBlock);
    const double upper = std::exp(-mu_[begin] * deviation);
    const double lower = std::exp(-mu_[end - 1] * deviation);
    for (std::size_t i = begin; i < end; ++i) {
      const double u = rng_.uniform();
      if (u < upper && (u < lower || u < std::exp(-mu_[i] * deviation))) {
        ++traders;
        signed_sum += rng_.uniform() < 0.5 ? 1 : -1;
      }
    }
  }
}

void MarketState::decide_from_override(std::int64_t& signed_sum, std::uint32_t& traders) {
  const auto& law = *config_.n_override;
  const double draw = std::exp(law.mu_ln + law.sigma_ln * rng_.normal());
  const double n_max = static_cast<double>(mu_.size());
  const double rounded = std::nearbyint(std::clamp(draw, 1.0, n_max));
  traders = static_cast<std::uint32_t>(rounded);
  for (std::uint32_t i = 0; i < traders; ++i) signed_sum += rng_.uniform() < 0.5 ? 1 : -1;
}

StepRecord MarketState::step() {
  std::int64_t signed_sum = 0;
  std::uint32_t traders = 0;
  const double fundamental = history_.mean();
  if (config_.n_override) {
    decide_from_override(signed_sum, traders);
  } else {
    decide_from_sensitivities(signed_sum, traders);
  }

  std::uint64_t volume = traders;
  if (const auto* poisson = std::get_if<PoissonVolume>(&config_.volume)) {
    volume = 0;
    for (std::uint32_t i = 0; i < traders; ++i) volume += rng_.poisson(poisson->lambda);
  }

  const double n = static_cast<double>(mu_.size());
  const double m = static_cast<double>(signed_sum) / n;
  price_ *= price_factor(clamp_net_demand(m, mu_.size()));
  history_.push(price_);
  ++t_;
  return StepRecord{price_, fundamental, m, traders, volume};
}

}  // namespace mfm

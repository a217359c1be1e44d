#include "mfm/simulation.hpp"

#include "mfm/market.hpp"

namespace mfm {

SimulationSeries run_simulation(const ModelConfig& config) {
  return run_simulation(config, config.t_steps);
}

SimulationSeries run_simulation(const ModelConfig& config, std::size_t t_steps) {
  MarketState market(config);

  SimulationSeries series;
  series.config = config;
  series.config.t_steps = t_steps;
  series.price.reserve(t_steps + 1);
  series.fundamental.reserve(t_steps + 1);
  series.m.reserve(t_steps + 1);
  series.n_traders.reserve(t_steps + 1);
  series.volume.reserve(t_steps + 1);

  series.price.push_back(market.price());
  series.fundamental.push_back(market.fundamental());
  series.m.push_back(0.0);
  series.n_traders.push_back(0);
  series.volume.push_back(0);

  for (std::size_t t = 0; t < t_steps; ++t) {
    const StepRecord rec = market.step();
    series.price.push_back(rec.price);
    series.fundamental.push_back(market.fundamental());
    series.m.push_back(rec.m);
    series.n_traders.push_back(rec.n_traders);
    series.volume.push_back(rec.volume);
  }
  return series;
}

}  // namespace mfm

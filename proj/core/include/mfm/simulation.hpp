#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mfm/model_config.hpp"

namespace mfm {

/// Aligned per-step output of one realization. Index 0 holds the initial
/// state (m = 0, n_traders = 0); index t + 1 holds p_{t+1} together with the
/// M_t and n_t that produced it. fundamental[t] is the moving average over
/// the window ending at p_t, i.e. the value agents compare p_t against.
struct SimulationSeries {
  ModelConfig config;
  std::vector<double> price;
  std::vector<double> fundamental;
  std::vector<double> m;
  std::vector<std::uint32_t> n_traders;
  std::vector<std::uint64_t> volume;

  std::size_t size() const { return price.size(); }
};

/// Runs config.t_steps steps from the initial state. The result depends only
/// on `config` (including its seed).
SimulationSeries run_simulation(const ModelConfig& config);

/// Same as run_simulation but permits t_steps == 0 (initial state only).
SimulationSeries run_simulation(const ModelConfig& config, std::size_t t_steps);

}  // namespace mfm

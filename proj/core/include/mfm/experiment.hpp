#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mfm/correlation.hpp"
#include "mfm/distribution.hpp"
#include "mfm/model_config.hpp"
#include "mfm/multifractal.hpp"
#include "mfm/simulation.hpp"
#include "mfm/tail.hpp"

namespace mfm {

inline constexpr const char* kVersion = "1.0.0";

enum class Analysis {
  ReturnsCcdf,
  VolumeCcdf,
  TailEstimate,
  Acf,
  Volatility,
  Multifractal,
  AnalyticOverlay,
};

const char* to_string(Analysis analysis);
Analysis parse_analysis(const std::string& name);
std::set<Analysis> all_analyses();

struct StatsConfig {
  std::size_t delta_t = 1;
  std::size_t volatility_window = 100;
  std::size_t acf_max_lag = 100;
  std::vector<double> q_values = {1, 2, 3, 4, 5, 6};
  /// Empty means a geometric grid on [1, min(1000, n / 10)].
  std::vector<std::size_t> d_values;
  ScalingFitRange fit;
  std::size_t ccdf_points = 200;
  double regime_quantile = 0.95;
  double lognormal_trim = 0.05;
  BootstrapConfig bootstrap;
};

struct AnalyticConfig {
  /// Volume exponent for the overlay; unset means the measured mean.
  std::optional<double> zeta_v;
  std::size_t n_max = 10000;
};

struct ExperimentSpec {
  std::string name = "experiment";
  ModelConfig model;
  StatsConfig stats;
  AnalyticConfig analytic;
  std::size_t realizations = 1;
  std::set<Analysis> analyses = all_analyses();
  std::filesystem::path output_dir = "mfm_out";
  /// Unset means model.tau.
  std::optional<std::size_t> warmup_drop;
  std::size_t workers = 1;

  std::size_t effective_warmup() const { return warmup_drop.value_or(model.tau); }
  bool wants(Analysis a) const { return analyses.contains(a); }
  void validate() const;
};

/// A realization failed; the message names its index and seed.
class RealizationError : public std::runtime_error {
 public:
  RealizationError(std::size_t index, std::uint64_t seed, const std::string& what);
  std::size_t index() const noexcept { return index_; }
  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::size_t index_;
  std::uint64_t seed_;
};

/// Everything computed from one realization after the warm-up is dropped.
struct RealizationResult {
  std::uint64_t seed = 0;
  std::size_t first_step = 0;          // original time index of prices[0]
  std::vector<double> prices;
  std::vector<double> fundamental;
  std::vector<double> returns;         // normalized, delta_t = stats.delta_t
  std::vector<double> raw_returns;     // unnormalized log returns
  std::vector<double> volume;          // V_t aligned with returns
  std::vector<double> traders;         // n_t aligned with returns
  std::optional<TailEstimate> tail_positive;
  std::optional<TailEstimate> tail_negative;
  std::optional<TailEstimate> tail_volume;
  std::optional<RegimeDecision> regime;
  std::optional<AcfResult> acf_returns;
  std::optional<AcfResult> acf_abs_returns;
  std::vector<double> volatility;
  std::optional<LogNormalFit> volatility_fit;
  std::optional<MultifractalSpectrum> spectrum;
  NormalityTest normality;
};

struct ExponentSummary {
  double mean = 0.0;
  double sd = 0.0;
  std::vector<double> values;
  std::vector<std::size_t> k;
  std::size_t realizations = 0;
};

struct AggregateResult {
  ExperimentSpec spec;
  std::string config_hash;
  std::vector<std::uint64_t> seeds;
  std::vector<RealizationResult> realizations;
  std::vector<double> pooled_returns;
  std::vector<double> pooled_volume;
  std::optional<ExponentSummary> alpha_positive;
  std::optional<ExponentSummary> alpha_negative;
  std::optional<ExponentSummary> zeta_volume;
  std::optional<RegimeDecision> pooled_regime;
  std::optional<AcfResult> acf_returns;       // mean over realizations
  std::optional<AcfResult> acf_abs_returns;   // mean over realizations
  std::optional<LogNormalFit> volatility_fit; // pooled volatility samples
  std::optional<MultifractalSpectrum> spectrum;  // mean moments, refitted
  NormalityTest pooled_normality;
  std::uint32_t min_traders = 0;
  std::uint32_t max_traders = 0;
};

/// Analyses one series. Only entries from effective_warmup() on are read.
RealizationResult analyze_realization(const SimulationSeries& series, const ExperimentSpec& spec);

/// Model configuration of realization `index`.
ModelConfig realization_config(const ExperimentSpec& spec, std::size_t index);

using SeriesHook = std::function<void(std::size_t index, SimulationSeries&)>;
using ProgressHook = std::function<void(std::size_t done, std::size_t total)>;

/// Simulates and analyses all realizations (concurrently up to spec.workers)
/// and merges them in index order, so the result does not depend on the
/// worker count. `hook`, when set, may edit each series before analysis.
AggregateResult run_experiment(const ExperimentSpec& spec, const SeriesHook& hook = {},
                               const ProgressHook& progress = {});

/// Stable 64-bit FNV-1a hash of the canonical configuration text, as hex.
std::string config_hash(const ExperimentSpec& spec);

}  // namespace mfm

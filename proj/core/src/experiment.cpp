#include "mfm/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "mfm/config_file.hpp"
#include "mfm/market.hpp"
#include "mfm/returns.hpp"
#include "mfm/rng.hpp"

namespace mfm {

namespace {

constexpr std::pair<Analysis, const char*> kAnalysisNames[] = {
    {Analysis::ReturnsCcdf, "returns_ccdf"}, {Analysis::VolumeCcdf, "volume_ccdf"},
    {Analysis::TailEstimate, "tail_estimate"}, {Analysis::Acf, "acf"},
    {Analysis::Volatility, "volatility"},     {Analysis::Multifractal, "multifractal"},
    {Analysis::AnalyticOverlay, "analytic_overlay"},
};

ExponentSummary summarize(const std::vector<RealizationResult>& results,
                          const std::optional<TailEstimate> RealizationResult::*member) {
  ExponentSummary s;
  for (const auto& r : results) {
    const auto& est = r.*member;
    if (!est) continue;
    s.values.push_back(est->alpha);
    s.k.push_back(est->k);
  }
  s.realizations = s.values.size();
  if (s.values.empty()) return s;
  for (double v : s.values) s.mean += v;
  s.mean /= static_cast<double>(s.values.size());
  if (s.values.size() > 1) {
    double ss = 0.0;
    for (double v : s.values) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(s.values.size() - 1));
  }
  return s;
}

AcfResult mean_acf(const std::vector<RealizationResult>& results,
                   const std::optional<AcfResult> RealizationResult::*member, std::size_t total_length) {
  AcfResult out = *(results.front().*member);
  for (std::size_t i = 1; i < results.size(); ++i) {
    const auto& other = *(results[i].*member);
    for (std::size_t k = 0; k < out.acf.size(); ++k) out.acf[k] += other.acf[k];
  }
  for (double& a : out.acf) a /= static_cast<double>(results.size());
  // The mean of R independent estimates has R times smaller variance.
  out.noise_band = 1.96 / std::sqrt(static_cast<double>(total_length));
  return out;
}

}  // namespace

const char* to_string(Analysis analysis) {
  for (const auto& [a, name] : kAnalysisNames) {
    if (a == analysis) return name;
  }
  return "unknown";
}

Analysis parse_analysis(const std::string& name) {
  for (const auto& [a, n] : kAnalysisNames) {
    if (name == n) return a;
  }
  throw ValidationError("analyses", "unknown analysis '" + name + "'");
}

std::set<Analysis> all_analyses() {
  std::set<Analysis> out;
  for (const auto& [a, name] : kAnalysisNames) out.insert(a);
  return out;
}

void ExperimentSpec::validate() const {
  model.validate();
  if (realizations < 1) throw ValidationError("realizations", "must be at least 1");
  if (analyses.empty()) throw ValidationError("analyses", "must not be empty");
  if (workers < 1) throw ValidationError("workers", "must be at least 1");
  const std::size_t warmup = effective_warmup();
  if (warmup >= model.t_steps) throw ValidationError("warmup_drop", "must be shorter than t_steps");
  const std::size_t kept = model.t_steps - warmup;
  if (stats.delta_t < 1) throw ValidationError("delta_t", "must be positive");
  if (kept < stats.delta_t + 8) throw ValidationError("t_steps", "too few steps after the warm-up");
  if (stats.volatility_window < 2) throw ValidationError("volatility_window", "must be at least 2");
  if (stats.acf_max_lag < 1) throw ValidationError("acf_max_lag", "must be at least 1");
  if (stats.q_values.empty()) throw ValidationError("q_values", "must not be empty");
  for (double q : stats.q_values) {
    if (!(q >= 0.0)) throw ValidationError("q_values", "must be non-negative");
  }
  if (stats.fit.d_min < 1 || stats.fit.d_max < stats.fit.d_min)
    throw ValidationError("fit_d_max", "need 1 <= fit_d_min <= fit_d_max");
  if (stats.ccdf_points < 2) throw ValidationError("ccdf_points", "must be at least 2");
  if (!(stats.regime_quantile > 0.0 && stats.regime_quantile < 1.0))
    throw ValidationError("regime_quantile", "must lie in (0, 1)");
  if (!(stats.lognormal_trim >= 0.0 && stats.lognormal_trim < 0.5))
    throw ValidationError("lognormal_trim", "must lie in [0, 0.5)");
  if (analytic.zeta_v && !(*analytic.zeta_v > 0.0)) throw ValidationError("zeta_v", "must be positive");
  if (analytic.n_max < 1) throw ValidationError("n_max", "must be at least 1");
}

RealizationError::RealizationError(std::size_t index, std::uint64_t seed, const std::string& what)
    : std::runtime_error("realization " + std::to_string(index) + " (seed " + std::to_string(seed) +
                         ") failed: " + what),
      index_(index),
      seed_(seed) {}

ModelConfig realization_config(const ExperimentSpec& spec, std::size_t index) {
  ModelConfig cfg = spec.model;
  cfg.seed = derive_seed(spec.model.seed, index);
  return cfg;
}

RealizationResult analyze_realization(const SimulationSeries& series, const ExperimentSpec& spec) {
  const std::size_t warmup = spec.effective_warmup();
  if (warmup + 2 > series.size()) throw ValidationError("warmup_drop", "series shorter than the warm-up");
  const auto& st = spec.stats;

  RealizationResult r;
  r.seed = series.config.seed;
  r.first_step = warmup;
  r.prices.assign(series.price.begin() + static_cast<std::ptrdiff_t>(warmup), series.price.end());
  r.fundamental.assign(series.fundamental.begin() + static_cast<std::ptrdiff_t>(warmup),
                       series.fundamental.end());

  const auto raw = log_returns(r.prices, st.delta_t);
  r.raw_returns = raw.values;
  r.returns = normalize(raw).values;
  // n_t and V_t for t >= warmup live at series index t + 1.
  for (std::size_t i = warmup + 1; i < series.size(); ++i) {
    r.traders.push_back(static_cast<double>(series.n_traders[i]));
    r.volume.push_back(static_cast<double>(series.volume[i]));
  }
  r.normality = jarque_bera(r.returns);

  if (spec.wants(Analysis::TailEstimate) || spec.wants(Analysis::AnalyticOverlay)) {
    BootstrapConfig boot = st.bootstrap;
    boot.seed = derive_seed(st.bootstrap.seed, r.seed);
    r.tail_positive = optimal_k(r.returns, TailSign::Positive, boot);
    r.tail_negative = optimal_k(r.returns, TailSign::Negative, boot);
    r.tail_volume = optimal_k(r.volume, TailSign::Positive, boot);
  }
  if (spec.wants(Analysis::TailEstimate) || spec.wants(Analysis::ReturnsCcdf)) {
    r.regime = classify_tail(r.returns, st.regime_quantile);
  }
  if (spec.wants(Analysis::Acf)) {
    std::vector<double> abs_returns(r.returns.size());
    std::transform(r.returns.begin(), r.returns.end(), abs_returns.begin(), [](double v) { return std::abs(v); });
    r.acf_returns = autocorrelation(r.returns, st.acf_max_lag);
    r.acf_abs_returns = autocorrelation(abs_returns, st.acf_max_lag);
  }
  if (spec.wants(Analysis::Volatility)) {
    r.volatility = rolling_volatility(r.returns, st.volatility_window);
    r.volatility_fit = lognormal_fit(r.volatility, st.lognormal_trim);
  }
  if (spec.wants(Analysis::Multifractal)) {
    std::vector<std::size_t> d = st.d_values;
    if (d.empty()) d = geometric_lags(1, std::min<std::size_t>(1000, r.prices.size() / 10), 25);
    ScalingFitRange fit = st.fit;
    fit.d_max = std::min(fit.d_max, d.back());
    r.spectrum = structure_functions(r.prices, st.q_values, d, fit);
  }
  return r;
}

AggregateResult run_experiment(const ExperimentSpec& spec, const SeriesHook& hook, const ProgressHook& progress) {
  spec.validate();

  AggregateResult agg;
  agg.spec = spec;
  agg.config_hash = config_hash(spec);
  for (std::size_t i = 0; i < spec.realizations; ++i) agg.seeds.push_back(realization_config(spec, i).seed);

  std::vector<std::optional<RealizationResult>> slots(spec.realizations);
  std::vector<std::uint32_t> min_n(spec.realizations), max_n(spec.realizations);
  std::vector<std::exception_ptr> errors(spec.realizations);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::atomic<bool> failed{false};
  std::mutex progress_mutex;

  auto worker = [&] {
    for (;;) {
      if (failed.load()) return;
      const std::size_t i = next.fetch_add(1);
      if (i >= spec.realizations) return;
      try {
        auto series = run_simulation(realization_config(spec, i));
        if (hook) hook(i, series);
        const auto first = series.n_traders.begin() + static_cast<std::ptrdiff_t>(spec.effective_warmup() + 1);
        const auto [lo, hi] = std::minmax_element(first, series.n_traders.end());
        min_n[i] = *lo;
        max_n[i] = *hi;
        slots[i] = analyze_realization(series, spec);
      } catch (...) {
        errors[i] = std::current_exception();
        failed.store(true);
      }
      const std::size_t finished = ++done;
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(finished, spec.realizations);
      }
    }
  };

  const std::size_t n_threads = std::min(spec.workers, spec.realizations);
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }

  for (std::size_t i = 0; i < spec.realizations; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      throw RealizationError(i, agg.seeds[i], e.what());
    }
  }

  agg.realizations.reserve(spec.realizations);
  for (auto& slot : slots) agg.realizations.push_back(std::move(*slot));
  agg.min_traders = *std::min_element(min_n.begin(), min_n.end());
  agg.max_traders = *std::max_element(max_n.begin(), max_n.end());

  std::size_t total_returns = 0;
  for (const auto& r : agg.realizations) {
    agg.pooled_returns.insert(agg.pooled_returns.end(), r.returns.begin(), r.returns.end());
    agg.pooled_volume.insert(agg.pooled_volume.end(), r.volume.begin(), r.volume.end());
    total_returns += r.returns.size();
  }
  agg.pooled_normality = jarque_bera(agg.pooled_returns);

  const auto& first = agg.realizations.front();
  if (first.tail_positive) {
    agg.alpha_positive = summarize(agg.realizations, &RealizationResult::tail_positive);
    agg.alpha_negative = summarize(agg.realizations, &RealizationResult::tail_negative);
    agg.zeta_volume = summarize(agg.realizations, &RealizationResult::tail_volume);
  }
  if (first.regime) agg.pooled_regime = classify_tail(agg.pooled_returns, spec.stats.regime_quantile);
  if (first.acf_returns) {
    agg.acf_returns = mean_acf(agg.realizations, &RealizationResult::acf_returns, total_returns);
    agg.acf_abs_returns = mean_acf(agg.realizations, &RealizationResult::acf_abs_returns, total_returns);
  }
  if (first.volatility_fit) {
    std::vector<double> pooled;
    for (const auto& r : agg.realizations) pooled.insert(pooled.end(), r.volatility.begin(), r.volatility.end());
    agg.volatility_fit = lognormal_fit(pooled, spec.stats.lognormal_trim);
  }
  if (first.spectrum) {
    MultifractalSpectrum mean = *first.spectrum;
    for (std::size_t i = 1; i < agg.realizations.size(); ++i) {
      const auto& other = *agg.realizations[i].spectrum;
      for (std::size_t q = 0; q < mean.moments.size(); ++q) {
        for (std::size_t d = 0; d < mean.moments[q].size(); ++d) mean.moments[q][d] += other.moments[q][d];
      }
    }
    for (auto& row : mean.moments) {
      for (double& v : row) v /= static_cast<double>(agg.realizations.size());
    }
    fit_scaling_exponents(mean);
    agg.spectrum = std::move(mean);
  }
  return agg;
}

std::string config_hash(const ExperimentSpec& spec) {
  const std::string text = to_config_text(spec, /*include_runtime=*/false);
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace mfm

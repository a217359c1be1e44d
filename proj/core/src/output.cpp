#include "mfm/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include <json.hpp>

#include "mfm/analytic.hpp"
#include "mfm/config_file.hpp"
#include "mfm/distribution.hpp"

namespace mfm {

namespace {

using Json = nlohmann::ordered_json;

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::initializer_list<const char*> header) : out_(path) {
    if (!out_) throw std::runtime_error("cannot write '" + path.string() + "'");
    bool first = true;
    for (const char* h : header) {
      out_ << (first ? "" : ",") << h;
      first = false;
    }
    out_ << '\n';
  }

  template <class... Ts>
  void row(const Ts&... values) {
    bool first = true;
    ((out_ << (first ? "" : ",") << cell(values), first = false), ...);
    out_ << '\n';
  }

 private:
  static std::string cell(double v) { return format_number(v); }
  static std::string cell(const std::string& v) { return v; }
  static std::string cell(const char* v) { return v; }
  template <class T>
    requires std::is_integral_v<T>
  static std::string cell(T v) {
    return std::to_string(v);
  }

  std::ofstream out_;
};

std::vector<double> geometric_points(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(n - 1));
  }
  return out;
}

Json exponent_json(const ExponentSummary& s) {
  return Json{{"mean", s.mean}, {"sd", s.sd}, {"realizations", s.realizations}, {"values", s.values}, {"k", s.k}};
}

Json tail_json(const TailEstimate& t) {
  return Json{{"alpha", t.alpha},
              {"gamma", t.gamma},
              {"k", t.k},
              {"n_tail", t.n_tail},
              {"plateau_gamma", t.plateau_gamma},
              {"plateau_k", {t.plateau_k_lo, t.plateau_k_hi}},
              {"drift", t.drift},
              {"plateau_found", t.plateau_found},
              {"small_sample", t.small_sample}};
}

Json regime_json(const RegimeDecision& d) {
  return Json{{"regime", d.regime == TailRegime::PowerLaw ? "power_law" : "exponential"},
              {"threshold", d.threshold},
              {"n_tail", d.n_tail},
              {"exponential_rate", d.exponential_rate},
              {"power_exponent", d.power_exponent},
              {"loglik_exponential", d.loglik_exponential},
              {"loglik_power", d.loglik_power}};
}

void write_returns_ccdf(const AggregateResult& r, const std::filesystem::path& dir) {
  std::vector<double> pos, neg;
  for (double v : r.pooled_returns) {
    if (v > 0.0) pos.push_back(v);
    if (v < 0.0) neg.push_back(-v);
  }
  const double total = static_cast<double>(r.pooled_returns.size());
  std::sort(pos.begin(), pos.end());
  std::sort(neg.begin(), neg.end());
  auto above = [&](const std::vector<double>& sorted, double x) {
    return static_cast<double>(sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), x)) / total;
  };
  double top = 0.0;
  for (double v : r.pooled_returns) top = std::max(top, std::abs(v));
  CsvWriter csv(dir / "returns_ccdf.csv", {"x", "ccdf_pos", "ccdf_neg", "normal_ref"});
  for (double x : geometric_points(1e-2, std::max(top, 1.0), r.spec.stats.ccdf_points)) {
    csv.row(x, above(pos, x), above(neg, x), normal_ccdf(x));
  }
}

void write_volume_ccdf(const AggregateResult& r, const std::filesystem::path& dir) {
  const Ccdf dist(r.pooled_volume);
  const auto points = dist.points();
  // Reference line of slope -1.5 through the 90th-percentile point.
  std::vector<double> sorted = r.pooled_volume;
  std::sort(sorted.begin(), sorted.end());
  const double anchor = std::max(1.0, sorted[static_cast<std::size_t>(0.9 * static_cast<double>(sorted.size() - 1))]);
  const double anchor_p = dist(anchor);
  CsvWriter csv(dir / "volume_ccdf.csv", {"n", "ccdf", "slope_ref"});
  for (const auto& p : points) {
    const double ref = p.x > 0.0 && anchor_p > 0.0 ? anchor_p * std::pow(p.x / anchor, -1.5) : 0.0;
    csv.row(p.x, p.p, ref);
  }
}

void write_tail_estimate(const AggregateResult& r, const std::filesystem::path& dir) {
  CsvWriter csv(dir / "tail_estimate.csv", {"realization", "tail", "k", "gamma", "alpha", "subsample_mse"});
  for (std::size_t i = 0; i < r.realizations.size(); ++i) {
    const auto& real = r.realizations[i];
    for (const auto& [name, est] : {std::pair{"positive", &real.tail_positive}, std::pair{"negative", &real.tail_negative},
                                    std::pair{"volume", &real.tail_volume}}) {
      if (!*est) continue;
      for (const auto& d : (*est)->k_diagnostics) {
        csv.row(i, name, d.k, d.gamma, d.gamma > 0.0 ? 1.0 / d.gamma : 0.0, d.subsample_mse);
      }
    }
  }
}

void write_acf(const AggregateResult& r, const std::filesystem::path& dir) {
  CsvWriter csv(dir / "acf.csv", {"lag", "acf_r", "acf_abs_r", "noise_band"});
  const auto& a = *r.acf_returns;
  const auto& b = *r.acf_abs_returns;
  for (std::size_t i = 0; i < a.lags.size(); ++i) csv.row(a.lags[i], a.acf[i], b.acf[i], a.noise_band);
}

void write_volatility(const AggregateResult& r, const std::filesystem::path& dir) {
  const auto& first = r.realizations.front();
  {
    CsvWriter csv(dir / "prices.csv", {"t", "p", "p_star"});
    for (std::size_t i = 0; i < first.prices.size(); ++i) csv.row(first.first_step + i, first.prices[i], first.fundamental[i]);
  }
  {
    // Row t holds the return ending at t and the deviation over the
    // window of returns ending at t.
    const std::size_t w = r.spec.stats.volatility_window;
    const std::size_t lag = r.spec.stats.delta_t;
    CsvWriter csv(dir / "volatility.csv", {"t", "r", "sigma"});
    for (std::size_t i = w - 1; i < first.returns.size(); ++i) {
      csv.row(first.first_step + i + lag, first.returns[i], first.volatility[i + 1 - w]);
    }
  }
  // Density of the pooled volatility on logarithmic bins with the fitted
  // log-normal density alongside.
  std::vector<double> pooled;
  for (const auto& real : r.realizations) pooled.insert(pooled.end(), real.volatility.begin(), real.volatility.end());
  std::sort(pooled.begin(), pooled.end());
  const double lo = pooled.front(), hi = pooled.back();
  const auto& fit = *r.volatility_fit;
  CsvWriter csv(dir / "volatility_pdf.csv", {"sigma", "density", "lognormal"});
  if (!(lo > 0.0 && hi > lo)) return;
  constexpr std::size_t bins = 60;
  const auto edges = geometric_points(lo, hi, bins + 1);
  for (std::size_t b = 0; b < bins; ++b) {
    const auto begin = std::lower_bound(pooled.begin(), pooled.end(), edges[b]);
    const auto end = b + 1 == bins ? pooled.end() : std::lower_bound(pooled.begin(), pooled.end(), edges[b + 1]);
    const double width = edges[b + 1] - edges[b];
    const double density = static_cast<double>(end - begin) / (static_cast<double>(pooled.size()) * width);
    const double center = std::sqrt(edges[b] * edges[b + 1]);
    const double z = (std::log(center) - fit.mu_ln) / fit.sigma_ln;
    const double model = std::exp(-0.5 * z * z) / (center * fit.sigma_ln * std::sqrt(2.0 * std::numbers::pi));
    csv.row(center, density, model);
  }
}

void write_multifractal(const AggregateResult& r, const std::filesystem::path& dir) {
  const auto& s = *r.spectrum;
  {
    CsvWriter csv(dir / "multifractal.csv", {"q", "d", "m_qd"});
    for (std::size_t iq = 0; iq < s.q_values.size(); ++iq) {
      for (std::size_t id = 0; id < s.d_values.size(); ++id) csv.row(s.q_values[iq], s.d_values[id], s.moments[iq][id]);
    }
  }
  CsvWriter csv(dir / "zeta.csv", {"q", "zeta_q", "r2"});
  for (std::size_t iq = 0; iq < s.q_values.size(); ++iq) csv.row(s.q_values[iq], s.zeta[iq], s.fit_r2[iq]);
}

void write_analytic(const AggregateResult& r, const std::filesystem::path& dir) {
  const double zeta = overlay_zeta(r);
  const auto mixture = make_mixture(zeta, r.spec.analytic.n_max);
  const ClosedFormDensity closed(zeta);
  CsvWriter csv(dir / "analytic.csv", {"r", "mixture", "closed_form"});
  for (double x : geometric_points(0.1, 30.0, 100)) csv.row(x, mixture_density(x, mixture), closed(x));
}

}  // namespace

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return buf;
}

double overlay_zeta(const AggregateResult& result) {
  if (result.spec.analytic.zeta_v) return *result.spec.analytic.zeta_v;
  if (result.zeta_volume && result.zeta_volume->realizations > 0 && std::isfinite(result.zeta_volume->mean) &&
      result.zeta_volume->mean > 0.0)
    return result.zeta_volume->mean;
  return 1.5;
}

std::vector<std::string> write_outputs(const AggregateResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> files;
  const auto& spec = result.spec;
  if (spec.wants(Analysis::ReturnsCcdf)) {
    write_returns_ccdf(result, dir);
    files.push_back("returns_ccdf.csv");
  }
  if (spec.wants(Analysis::VolumeCcdf)) {
    write_volume_ccdf(result, dir);
    files.push_back("volume_ccdf.csv");
  }
  if (spec.wants(Analysis::TailEstimate)) {
    write_tail_estimate(result, dir);
    files.push_back("tail_estimate.csv");
  }
  if (spec.wants(Analysis::Acf)) {
    write_acf(result, dir);
    files.push_back("acf.csv");
  }
  if (spec.wants(Analysis::Volatility)) {
    write_volatility(result, dir);
    files.insert(files.end(), {"prices.csv", "volatility.csv", "volatility_pdf.csv"});
  }
  if (spec.wants(Analysis::Multifractal)) {
    write_multifractal(result, dir);
    files.insert(files.end(), {"multifractal.csv", "zeta.csv"});
  }
  if (spec.wants(Analysis::AnalyticOverlay)) {
    write_analytic(result, dir);
    files.push_back("analytic.csv");
  }
  files.push_back("manifest.json");
  std::ofstream manifest(dir / "manifest.json");
  if (!manifest) throw std::runtime_error("cannot write '" + (dir / "manifest.json").string() + "'");
  manifest << manifest_json(result, files) << '\n';
  return files;
}

std::string manifest_json(const AggregateResult& r, const std::vector<std::string>& files) {
  const auto& spec = r.spec;
  Json j;
  j["artifact"] = "mfm";
  j["version"] = kVersion;
  j["name"] = spec.name;
  j["config_hash"] = r.config_hash;
  j["config"] = to_config_text(spec, /*include_runtime=*/false);
  j["realizations"] = spec.realizations;
  j["base_seed"] = spec.model.seed;
  j["seed_derivation"] = "splitmix64(base_seed xor index)";
  j["seeds"] = r.seeds;
  j["warmup_drop"] = spec.effective_warmup();
  j["samples_per_realization"] = r.realizations.front().returns.size();
  Json analyses = Json::array();
  for (auto a : spec.analyses) analyses.push_back(to_string(a));
  j["analyses"] = analyses;
  j["traders"] = {{"min", r.min_traders}, {"max", r.max_traders}};
  j["normality"] = {{"skewness", r.pooled_normality.skewness},
                    {"excess_kurtosis", r.pooled_normality.excess_kurtosis},
                    {"jarque_bera", r.pooled_normality.jarque_bera},
                    {"p_value", r.pooled_normality.p_value}};

  if (r.alpha_positive) {
    Json per = Json::array();
    for (const auto& real : r.realizations) {
      per.push_back({{"seed", real.seed},
                     {"positive", tail_json(*real.tail_positive)},
                     {"negative", tail_json(*real.tail_negative)},
                     {"volume", tail_json(*real.tail_volume)}});
    }
    j["exponents"] = {{"alpha_positive", exponent_json(*r.alpha_positive)},
                      {"alpha_negative", exponent_json(*r.alpha_negative)},
                      {"zeta_volume", exponent_json(*r.zeta_volume)},
                      {"per_realization", per}};
  }
  if (r.pooled_regime) j["return_tail_regime"] = regime_json(*r.pooled_regime);
  if (r.acf_returns) {
    j["acf"] = {{"max_lag", r.acf_returns->lags.size()},
                {"noise_band", r.acf_returns->noise_band},
                {"returns_inside_band", r.acf_returns->fraction_inside_band()},
                {"abs_returns_above_band", r.acf_abs_returns->fraction_above_band()}};
  }
  if (r.volatility_fit) {
    j["volatility_fit"] = {{"mu_ln", r.volatility_fit->mu_ln},
                           {"sigma_ln", r.volatility_fit->sigma_ln},
                           {"ks_distance", r.volatility_fit->ks_distance},
                           {"window", spec.stats.volatility_window}};
  }
  if (r.spectrum) {
    const auto& s = *r.spectrum;
    j["multifractal"] = {{"q", s.q_values},
                         {"zeta", s.zeta},
                         {"zeta_stderr", s.zeta_stderr},
                         {"r2", s.fit_r2},
                         {"fit_d", {s.fit_range.d_min, s.fit_range.d_max}},
                         {"monotone_in_d", s.monotone_in_d()}};
  }
  if (spec.wants(Analysis::AnalyticOverlay)) {
    const double zeta = overlay_zeta(r);
    j["analytic"] = {{"zeta_v", zeta},
                     {"predicted_alpha", predicted_alpha(zeta)},
                     {"n_max", spec.analytic.n_max},
                     {"closed_form_normalization", ClosedFormDensity(zeta).normalization()},
                     {"gamma_ratio_normalization", gamma_ratio_normalization(zeta)}};
  }
  j["files"] = files;
  return j.dump(2);
}

}  // namespace mfm

#include "mfm/figures.hpp"

#include <fstream>

#include <json.hpp>

#include "mfm/output.hpp"

namespace mfm {

namespace {

using Json = nlohmann::ordered_json;

struct FigureInfo {
  Figure figure;
  const char* name;
  const char* title;
};

constexpr FigureInfo kFigures[] = {
    {Figure::Fig1, "fig1", "Price, normalized return and volatility against time"},
    {Figure::Fig2a, "fig2a", "Cumulative distribution of normalized returns"},
    {Figure::Fig2b, "fig2b", "Cumulative distribution of the number of traders"},
    {Figure::Fig3a, "fig3a", "Autocorrelation of returns and absolute returns; volatility density"},
    {Figure::Fig3b, "fig3b", "Structure functions and their scaling exponents"},
};

Json axis(const char* column, const char* label, const char* scale) {
  return Json{{"column", column}, {"label", label}, {"scale", scale}};
}

Json panel(const char* file, Json x, Json y, Json series) {
  return Json{{"file", file}, {"x", std::move(x)}, {"y", std::move(y)}, {"series", std::move(series)}};
}

void write_fig1_series(const AggregateResult& r, const std::filesystem::path& dir) {
  const auto& first = r.realizations.front();
  const std::size_t w = r.spec.stats.volatility_window;
  const std::size_t lag = r.spec.stats.delta_t;
  std::ofstream out(dir / "fig1.csv");
  if (!out) throw std::runtime_error("cannot write '" + (dir / "fig1.csv").string() + "'");
  out << "t,p,p_star,r,sigma\n";
  for (std::size_t i = w - 1; i < first.returns.size(); ++i) {
    const std::size_t at = i + lag;  // index into prices
    out << first.first_step + at << ',' << format_number(first.prices[at]) << ','
        << format_number(first.fundamental[at]) << ',' << format_number(first.returns[i]) << ','
        << format_number(first.volatility[i + 1 - w]) << '\n';
  }
}

Json sidecar(Figure f, const AggregateResult& r) {
  Json j;
  j["figure"] = to_string(f);
  for (const auto& info : kFigures) {
    if (info.figure == f) j["title"] = info.title;
  }
  j["config_hash"] = r.config_hash;
  j["realizations"] = r.spec.realizations;
  Json panels = Json::array();
  Json slopes = Json::array();
  switch (f) {
    case Figure::Fig1:
      panels.push_back(panel("fig1.csv", axis("t", "t", "linear"), axis("p", "price", "linear"), {"p", "p_star"}));
      panels.push_back(panel("fig1.csv", axis("t", "t", "linear"), axis("r", "r_t", "linear"), {"r"}));
      panels.push_back(panel("fig1.csv", axis("t", "t", "linear"), axis("sigma", "sigma_t", "linear"), {"sigma"}));
      break;
    case Figure::Fig2a:
      panels.push_back(panel("returns_ccdf.csv", axis("x", "normalized return", "log"),
                             axis("ccdf_pos", "P(r > x)", "log"), {"ccdf_pos", "ccdf_neg", "normal_ref"}));
      slopes.push_back({{"file", "returns_ccdf.csv"}, {"slope", -3.0}});
      break;
    case Figure::Fig2b:
      panels.push_back(
          panel("volume_ccdf.csv", axis("n", "n_t", "log"), axis("ccdf", "P(n_t > n)", "log"), {"ccdf", "slope_ref"}));
      slopes.push_back({{"file", "volume_ccdf.csv"}, {"slope", -1.5}, {"column", "slope_ref"}});
      break;
    case Figure::Fig3a:
      panels.push_back(
          panel("acf.csv", axis("lag", "lag", "log"), axis("acf_r", "autocorrelation", "linear"),
                {"acf_r", "acf_abs_r", "noise_band"}));
      panels.push_back(panel("volatility_pdf.csv", axis("sigma", "sigma_t", "log"),
                             axis("density", "probability density", "linear"), {"density", "lognormal"}));
      break;
    case Figure::Fig3b:
      panels.push_back(panel("multifractal.csv", axis("d", "d", "log"), axis("m_qd", "M_q(d)", "log"), {"m_qd"}));
      panels.push_back(panel("zeta.csv", axis("q", "q", "linear"), axis("zeta_q", "zeta_q", "linear"), {"zeta_q"}));
      break;
  }
  j["panels"] = panels;
  j["reference_slopes"] = slopes;
  return j;
}

}  // namespace

std::string to_string(Figure f) {
  for (const auto& info : kFigures) {
    if (info.figure == f) return info.name;
  }
  return "unknown";
}

Figure parse_figure(const std::string& name) {
  for (const auto& info : kFigures) {
    if (name == info.name) return info.figure;
  }
  throw ValidationError("figure", "unknown figure '" + name + "' (expected fig1, fig2a, fig2b, fig3a or fig3b)");
}

std::vector<Figure> all_figures() {
  std::vector<Figure> out;
  for (const auto& info : kFigures) out.push_back(info.figure);
  return out;
}

ExperimentSpec figure_spec(Figure f, const FigureOverrides& overrides) {
  ExperimentSpec spec;
  spec.name = to_string(f);
  spec.model.t_steps = 200000;
  spec.model.tau = 10000;
  switch (f) {
    case Figure::Fig1:
    case Figure::Fig3a:
    case Figure::Fig3b:
      spec.model.n_agents = 20000;
      spec.model.mu_spec = Homogeneous{100.0};
      break;
    case Figure::Fig2a:
    case Figure::Fig2b:
      spec.model.n_agents = 10000;
      spec.model.mu_spec = UniformHeterogeneous{10.0, 200.0};
      spec.realizations = 10;
      break;
  }
  switch (f) {
    case Figure::Fig1: spec.analyses = {Analysis::Volatility}; break;
    case Figure::Fig2a: spec.analyses = {Analysis::ReturnsCcdf, Analysis::TailEstimate}; break;
    case Figure::Fig2b: spec.analyses = {Analysis::VolumeCcdf, Analysis::TailEstimate}; break;
    case Figure::Fig3a: spec.analyses = {Analysis::Acf, Analysis::Volatility}; break;
    case Figure::Fig3b: spec.analyses = {Analysis::Multifractal}; break;
  }
  if (overrides.t_steps) spec.model.t_steps = *overrides.t_steps;
  if (overrides.n_agents) spec.model.n_agents = *overrides.n_agents;
  if (overrides.tau) spec.model.tau = *overrides.tau;
  if (overrides.realizations) spec.realizations = *overrides.realizations;
  if (overrides.seed) spec.model.seed = *overrides.seed;
  spec.validate();
  return spec;
}

std::vector<std::string> write_figure(Figure f, const AggregateResult& result, const std::filesystem::path& dir) {
  auto files = write_outputs(result, dir);
  if (f == Figure::Fig1) {
    write_fig1_series(result, dir);
    files.push_back("fig1.csv");
  }
  const std::string name = to_string(f) + ".json";
  std::ofstream out(dir / name);
  if (!out) throw std::runtime_error("cannot write '" + (dir / name).string() + "'");
  out << sidecar(f, result).dump(2) << '\n';
  files.push_back(name);
  return files;
}

}  // namespace mfm

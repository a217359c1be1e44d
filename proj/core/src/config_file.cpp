#include "mfm/config_file.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace mfm {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>> kKnownKeys = {
    {"model",
     {"n_agents", "mu", "mu_lo", "mu_hi", "tau", "p0", "t_steps", "seed", "volume", "poisson_lambda",
      "n_override", "n_override_mu_ln", "n_override_sigma_ln"}},
    {"stats",
     {"delta_t", "volatility_window", "acf_max_lag", "q_values", "d_values", "fit_d_min", "fit_d_max",
      "ccdf_points", "regime_quantile", "lognormal_trim"}},
    {"bootstrap",
     {"resamples", "subsample_fraction", "grid_points", "k_min", "plateau_window", "drift_tolerance", "seed"}},
    {"analytic", {"zeta_v", "n_max"}},
    {"experiment", {"name", "realizations", "analyses", "output_dir", "warmup_drop", "workers"}},
};

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

class Section {
 public:
  Section(std::string name, const pt::ptree* tree) : name_(std::move(name)), tree_(tree) {}

  std::optional<std::string> raw(const std::string& key) const {
    if (!tree_) return std::nullopt;
    auto v = tree_->get_optional<std::string>(key);
    if (!v) return std::nullopt;
    return trim(*v);
  }

  template <class T>
  void read(const std::string& key, T& out) const {
    if (auto v = raw(key)) out = parse<T>(key, *v);
  }

  template <class T>
  T parse(const std::string& key, const std::string& text) const {
    T value{};
    if constexpr (std::is_same_v<T, std::string>) {
      return text;
    } else {
      const char* end = text.data() + text.size();
      auto [ptr, ec] = std::from_chars(text.data(), end, value);
      if (ec != std::errc{} || ptr != end || text.empty()) fail(key, "cannot parse '" + text + "'");
      return value;
    }
  }

  template <class T>
  std::vector<T> parse_list(const std::string& key, const std::string& text) const {
    std::vector<T> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse<T>(key, trim(item)));
    if (out.empty()) fail(key, "empty list");
    return out;
  }

  [[noreturn]] void fail(const std::string& key, const std::string& message) const {
    throw ValidationError(name_ + "." + key, message);
  }

  const std::string& name() const { return name_; }

 private:
  std::string name_;
  const pt::ptree* tree_;
};

template <class T>
std::string fmt_value(const T& v) {
  if constexpr (std::is_same_v<T, std::string>) {
    return v;
  } else {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
  }
}

template <class T>
std::string fmt_list(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += fmt_value(values[i]);
  }
  return out;
}

void parse_model(const Section& s, ModelConfig& m) {
  s.read("n_agents", m.n_agents);
  s.read("tau", m.tau);
  s.read("p0", m.p0);
  s.read("t_steps", m.t_steps);
  s.read("seed", m.seed);

  const auto mu = s.raw("mu");
  const auto lo = s.raw("mu_lo");
  const auto hi = s.raw("mu_hi");
  if (mu && (lo || hi)) s.fail("mu", "give either mu or mu_lo/mu_hi, not both");
  if (lo.has_value() != hi.has_value()) s.fail(lo ? "mu_hi" : "mu_lo", "mu_lo and mu_hi go together");
  if (mu) m.mu_spec = Homogeneous{s.parse<double>("mu", *mu)};
  if (lo) m.mu_spec = UniformHeterogeneous{s.parse<double>("mu_lo", *lo), s.parse<double>("mu_hi", *hi)};

  const std::string volume = s.raw("volume").value_or("unit");
  if (volume == "unit") {
    if (s.raw("poisson_lambda")) s.fail("poisson_lambda", "only valid with volume = poisson");
    m.volume = UnitVolume{};
  } else if (volume == "poisson") {
    PoissonVolume p;
    s.read("poisson_lambda", p.lambda);
    m.volume = p;
  } else {
    s.fail("volume", "expected 'unit' or 'poisson'");
  }

  const std::string override_kind = s.raw("n_override").value_or("none");
  if (override_kind == "none") {
    if (s.raw("n_override_mu_ln") || s.raw("n_override_sigma_ln"))
      s.fail("n_override", "log-normal parameters given but n_override = none");
    m.n_override.reset();
  } else if (override_kind == "lognormal") {
    LogNormalTraders law;
    s.read("n_override_mu_ln", law.mu_ln);
    s.read("n_override_sigma_ln", law.sigma_ln);
    m.n_override = law;
  } else {
    s.fail("n_override", "expected 'none' or 'lognormal'");
  }
}

void parse_stats(const Section& s, StatsConfig& st) {
  s.read("delta_t", st.delta_t);
  s.read("volatility_window", st.volatility_window);
  s.read("acf_max_lag", st.acf_max_lag);
  if (auto v = s.raw("q_values")) st.q_values = s.parse_list<double>("q_values", *v);
  if (auto v = s.raw("d_values")) st.d_values = s.parse_list<std::size_t>("d_values", *v);
  s.read("fit_d_min", st.fit.d_min);
  s.read("fit_d_max", st.fit.d_max);
  s.read("ccdf_points", st.ccdf_points);
  s.read("regime_quantile", st.regime_quantile);
  s.read("lognormal_trim", st.lognormal_trim);
}

void parse_bootstrap(const Section& s, BootstrapConfig& b) {
  s.read("resamples", b.resamples);
  s.read("subsample_fraction", b.subsample_fraction);
  s.read("grid_points", b.grid_points);
  s.read("k_min", b.k_min);
  s.read("plateau_window", b.plateau_window);
  s.read("drift_tolerance", b.drift_tolerance);
  s.read("seed", b.seed);
}

void parse_analytic(const Section& s, AnalyticConfig& a) {
  if (auto v = s.raw("zeta_v"); v && *v != "auto") a.zeta_v = s.parse<double>("zeta_v", *v);
  s.read("n_max", a.n_max);
}

void parse_experiment(const Section& s, ExperimentSpec& e) {
  s.read("name", e.name);
  s.read("realizations", e.realizations);
  if (auto v = s.raw("analyses")) {
    e.analyses.clear();
    for (const auto& name : s.parse_list<std::string>("analyses", *v)) {
      try {
        e.analyses.insert(parse_analysis(name));
      } catch (const ValidationError& err) {
        s.fail("analyses", err.what());
      }
    }
  }
  if (auto v = s.raw("output_dir")) e.output_dir = *v;
  if (auto v = s.raw("warmup_drop"); v && *v != "tau") e.warmup_drop = s.parse<std::size_t>("warmup_drop", *v);
  s.read("workers", e.workers);
}

// Maps a ValidationError raised by ExperimentSpec::validate to "section.key".
std::string qualify(const std::string& field) {
  for (const auto& [section, keys] : kKnownKeys) {
    if (keys.contains(field)) return section + "." + field;
  }
  return field;
}

}  // namespace

ExperimentSpec parse_config(const std::string& text) {
  // The INI reader only knows ';' comments.
  std::stringstream in(text), cleaned;
  std::string line;
  while (std::getline(in, line)) {
    const auto t = trim(line);
    cleaned << (t.starts_with('#') ? ";" + t : line) << '\n';
  }

  pt::ptree tree;
  try {
    pt::read_ini(cleaned, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ValidationError("config", "line " + std::to_string(e.line()) + ": " + e.message());
  }

  for (const auto& [section, body] : tree) {
    const auto known = kKnownKeys.find(section);
    if (known == kKnownKeys.end()) {
      if (!body.data().empty()) throw ValidationError(section, "keys must live inside a [section]");
      throw ValidationError(section, "unknown section");
    }
    for (const auto& [key, value] : body) {
      if (!known->second.contains(key)) throw ValidationError(section + "." + key, "unknown key");
    }
  }

  auto section = [&](const std::string& name) {
    auto child = tree.get_child_optional(name);
    return Section(name, child ? &*child : nullptr);
  };

  ExperimentSpec spec;
  parse_model(section("model"), spec.model);
  parse_stats(section("stats"), spec.stats);
  parse_bootstrap(section("bootstrap"), spec.stats.bootstrap);
  parse_analytic(section("analytic"), spec.analytic);
  parse_experiment(section("experiment"), spec);

  try {
    spec.validate();
  } catch (const ValidationError& e) {
    const std::string message = e.what();
    const auto colon = message.find(": ");
    throw ValidationError(qualify(e.field()), colon == std::string::npos ? message : message.substr(colon + 2));
  }
  return spec;
}

ExperimentSpec load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config", "cannot open '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string to_config_text(const ExperimentSpec& spec, bool include_runtime) {
  std::ostringstream out;
  const auto& m = spec.model;
  out << "[model]\n";
  out << "n_agents = " << m.n_agents << '\n';
  if (const auto* h = std::get_if<Homogeneous>(&m.mu_spec)) {
    out << "mu = " << fmt_value(h->mu) << '\n';
  } else {
    const auto& u = std::get<UniformHeterogeneous>(m.mu_spec);
    out << "mu_lo = " << fmt_value(u.lo) << "\nmu_hi = " << fmt_value(u.hi) << '\n';
  }
  out << "tau = " << m.tau << "\np0 = " << fmt_value(m.p0) << "\nt_steps = " << m.t_steps
      << "\nseed = " << m.seed << '\n';
  if (const auto* p = std::get_if<PoissonVolume>(&m.volume)) {
    out << "volume = poisson\npoisson_lambda = " << fmt_value(p->lambda) << '\n';
  } else {
    out << "volume = unit\n";
  }
  if (m.n_override) {
    out << "n_override = lognormal\nn_override_mu_ln = " << fmt_value(m.n_override->mu_ln)
        << "\nn_override_sigma_ln = " << fmt_value(m.n_override->sigma_ln) << '\n';
  } else {
    out << "n_override = none\n";
  }

  const auto& st = spec.stats;
  out << "\n[stats]\n";
  out << "delta_t = " << st.delta_t << "\nvolatility_window = " << st.volatility_window
      << "\nacf_max_lag = " << st.acf_max_lag << "\nq_values = " << fmt_list(st.q_values) << '\n';
  if (!st.d_values.empty()) out << "d_values = " << fmt_list(st.d_values) << '\n';
  out << "fit_d_min = " << st.fit.d_min << "\nfit_d_max = " << st.fit.d_max << "\nccdf_points = " << st.ccdf_points
      << "\nregime_quantile = " << fmt_value(st.regime_quantile)
      << "\nlognormal_trim = " << fmt_value(st.lognormal_trim) << '\n';

  const auto& b = st.bootstrap;
  out << "\n[bootstrap]\n";
  out << "resamples = " << b.resamples << "\nsubsample_fraction = " << fmt_value(b.subsample_fraction)
      << "\ngrid_points = " << b.grid_points << "\nk_min = " << b.k_min << "\nplateau_window = " << b.plateau_window
      << "\ndrift_tolerance = " << fmt_value(b.drift_tolerance) << "\nseed = " << b.seed << '\n';

  out << "\n[analytic]\n";
  out << "zeta_v = " << (spec.analytic.zeta_v ? fmt_value(*spec.analytic.zeta_v) : std::string("auto"))
      << "\nn_max = " << spec.analytic.n_max << '\n';

  out << "\n[experiment]\n";
  out << "name = " << spec.name << "\nrealizations = " << spec.realizations << "\nanalyses = ";
  bool first = true;
  for (auto a : spec.analyses) {
    out << (first ? "" : ", ") << to_string(a);
    first = false;
  }
  out << "\nwarmup_drop = " << spec.effective_warmup() << '\n';
  if (include_runtime) {
    out << "output_dir = " << spec.output_dir.string() << "\nworkers = " << spec.workers << '\n';
  }
  return out.str();
}

}  // namespace mfm

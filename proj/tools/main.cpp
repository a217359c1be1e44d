// mfm: command-line front end for simulation runs, figure data and the
// analytic density.
//
//   mfm run <config>        run an experiment described by a config file
//   mfm figure <name>       regenerate the data behind fig1 .. fig3b
//   mfm validate <config>   check a config file and print its canonical form
//   mfm analytic --zeta v --grid lo:hi:count | log:lo:hi:count
//
// Exit codes: 0 success, 1 invalid input, 2 runtime failure.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mfm/analytic.hpp"
#include "mfm/config_file.hpp"
#include "mfm/experiment.hpp"
#include "mfm/figures.hpp"
#include "mfm/output.hpp"

namespace {

constexpr int kExitInvalid = 1;
constexpr int kExitRuntime = 2;

struct RunFlags {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::optional<std::string> out;
  std::optional<std::size_t> realizations;
  bool quiet = false;
};

void add_run_flags(CLI::App* cmd, RunFlags& flags) {
  cmd->add_option("--seed", flags.seed, "Base seed (overrides the config)");
  cmd->add_option("--workers", flags.workers, "Concurrent realizations");
  cmd->add_option("--out", flags.out, "Output directory");
  cmd->add_option("--realizations", flags.realizations, "Number of realizations");
  cmd->add_flag("--quiet", flags.quiet, "Only report errors");
}

void apply(const RunFlags& flags, mfm::ExperimentSpec& spec) {
  if (flags.seed) spec.model.seed = *flags.seed;
  if (flags.workers) spec.workers = *flags.workers;
  if (flags.out) spec.output_dir = *flags.out;
  if (flags.realizations) spec.realizations = *flags.realizations;
  spec.validate();
}

mfm::ProgressHook progress_printer(bool quiet) {
  if (quiet) return {};
  return [](std::size_t done, std::size_t total) { std::fprintf(stderr, "realization %zu/%zu done\n", done, total); };
}

void print_exponent(const char* label, const std::optional<mfm::ExponentSummary>& s) {
  if (!s) return;
  std::printf("%-15s %.3f +- %.3f over %zu realization(s), k =", label, s->mean, s->sd, s->realizations);
  for (auto k : s->k) std::printf(" %zu", k);
  std::printf("\n");
}

void print_summary(const mfm::AggregateResult& r, const std::filesystem::path& dir,
                   const std::vector<std::string>& files) {
  std::printf("wrote %zu files to %s (config %s)\n", files.size(), dir.string().c_str(), r.config_hash.c_str());
  print_exponent("alpha positive", r.alpha_positive);
  print_exponent("alpha negative", r.alpha_negative);
  print_exponent("zeta_V", r.zeta_volume);
  if (r.pooled_regime) {
    std::printf("return tail     %s\n", r.pooled_regime->regime == mfm::TailRegime::PowerLaw ? "power law" : "exponential");
  }
  if (r.acf_returns) {
    std::printf("acf r inside band %.2f, acf |r| above band %.2f\n", r.acf_returns->fraction_inside_band(),
                r.acf_abs_returns->fraction_above_band());
  }
  if (r.spectrum) {
    std::printf("zeta_q         ");
    for (double z : r.spectrum->zeta) std::printf(" %.3f", z);
    std::printf("\n");
  }
}

double parse_double(const std::string& text, const char* what) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw mfm::ValidationError("grid", std::string("bad ") + what + " '" + text + "'");
  return v;
}

// "lo:hi:count" (linear) or "log:lo:hi:count" (geometric).
std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = spec.find(':', start);
    parts.push_back(spec.substr(start, colon - start));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  const bool geometric = !parts.empty() && parts.front() == "log";
  if (geometric) parts.erase(parts.begin());
  if (parts.size() != 3) throw mfm::ValidationError("grid", "expected lo:hi:count or log:lo:hi:count");
  const double lo = parse_double(parts[0], "lower bound");
  const double hi = parse_double(parts[1], "upper bound");
  const double count = parse_double(parts[2], "count");
  if (!(count >= 2.0) || count != std::floor(count)) throw mfm::ValidationError("grid", "count must be an integer >= 2");
  if (!(hi > lo)) throw mfm::ValidationError("grid", "upper bound must exceed lower bound");
  if (geometric && !(lo > 0.0)) throw mfm::ValidationError("grid", "log grid needs a positive lower bound");
  const auto n = static_cast<std::size_t>(count);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(n - 1);
    out[i] = geometric ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f;
  }
  return out;
}

int run_analytic(double zeta, const std::string& grid_spec, std::size_t n_max) {
  const auto grid = parse_grid(grid_spec);
  const auto mixture = mfm::make_mixture(zeta, n_max);
  const mfm::ClosedFormDensity closed(zeta);
  std::printf("r,mixture,closed_form,rel_dev\n");
  for (double r : grid) {
    const double m = mfm::mixture_density(r, mixture);
    const double c = closed(r);
    std::printf("%s,%s,%s,%s\n", mfm::format_number(r).c_str(), mfm::format_number(m).c_str(),
                mfm::format_number(c).c_str(), mfm::format_number(m / c - 1.0).c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mean-field agent market simulator"};
  app.set_version_flag("--version", mfm::kVersion);
  app.require_subcommand(1);

  RunFlags run_flags;
  std::string run_config;
  auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("config", run_config, "Config file")->required();
  add_run_flags(run, run_flags);

  RunFlags fig_flags;
  std::string fig_name;
  std::optional<std::size_t> fig_steps, fig_agents, fig_tau;
  auto* figure = app.add_subcommand("figure", "Regenerate the data behind one figure");
  figure->add_option("name", fig_name, "fig1, fig2a, fig2b, fig3a or fig3b")->required();
  add_run_flags(figure, fig_flags);
  figure->add_option("--steps", fig_steps, "Override the number of time steps");
  figure->add_option("--agents", fig_agents, "Override the number of agents");
  figure->add_option("--tau", fig_tau, "Override the moving-average window");

  std::string validate_config;
  auto* validate = app.add_subcommand("validate", "Check a config file");
  validate->add_option("config", validate_config, "Config file")->required();

  double zeta = 1.5;
  std::string grid;
  std::size_t n_max = 10000;
  auto* analytic = app.add_subcommand("analytic", "Tabulate the mixture and closed-form densities");
  analytic->add_option("--zeta", zeta, "Volume exponent zeta_V")->required();
  analytic->add_option("--grid", grid, "lo:hi:count or log:lo:hi:count")->required();
  analytic->add_option("--n-max", n_max, "Largest trader count in the mixture");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (*run) {
      auto spec = mfm::load_config(run_config);
      apply(run_flags, spec);
      const auto result = mfm::run_experiment(spec, {}, progress_printer(run_flags.quiet));
      const auto files = mfm::write_outputs(result, spec.output_dir);
      if (!run_flags.quiet) print_summary(result, spec.output_dir, files);
    } else if (*figure) {
      const auto which = mfm::parse_figure(fig_name);
      auto spec = mfm::figure_spec(which, {fig_steps, fig_agents, fig_tau, std::nullopt, std::nullopt});
      spec.output_dir = fig_name;
      apply(fig_flags, spec);
      const auto result = mfm::run_experiment(spec, {}, progress_printer(fig_flags.quiet));
      const auto files = mfm::write_figure(which, result, spec.output_dir);
      if (!fig_flags.quiet) print_summary(result, spec.output_dir, files);
    } else if (*validate) {
      const auto spec = mfm::load_config(validate_config);
      std::cout << mfm::to_config_text(spec) << "# config hash " << mfm::config_hash(spec) << '\n';
    } else if (*analytic) {
      if (!(zeta > 0.0)) throw mfm::ValidationError("zeta", "must be positive");
      return run_analytic(zeta, grid, n_max);
    }
  } catch (const mfm::ValidationError& e) {
    std::fprintf(stderr, "mfm: invalid input: %s\n", e.what());
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "mfm: %s\n", e.what());
    return kExitRuntime;
  }
  return 0;
}

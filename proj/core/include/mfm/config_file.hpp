#pragma once

#include <filesystem>
#include <string>

#include "mfm/experiment.hpp"

namespace mfm {

/// Reads an experiment from INI-style text:
///
///   [model]       n_agents, mu | mu_lo + mu_hi, tau, p0, t_steps, seed,
///                 volume (unit | poisson), poisson_lambda,
///                 n_override (none | lognormal), n_override_mu_ln,
///                 n_override_sigma_ln
///   [stats]       delta_t, volatility_window, acf_max_lag, q_values,
///                 d_values, fit_d_min, fit_d_max, ccdf_points,
///                 regime_quantile, lognormal_trim
///   [bootstrap]   resamples, subsample_fraction, grid_points, k_min,
///                 plateau_window, drift_tolerance, seed
///   [analytic]    zeta_v, n_max
///   [experiment]  name, realizations, analyses, output_dir, warmup_drop,
///                 workers
///
/// Lists are comma separated. Comment lines start with ';' or '#'. Omitted
/// keys keep their defaults; unknown sections or keys are errors. Throws
/// ValidationError whose field is "section.key".
ExperimentSpec parse_config(const std::string& text);

ExperimentSpec load_config(const std::filesystem::path& path);

/// Canonical text that parse_config maps back to the same spec. With
/// include_runtime = false, keys that cannot change results (output_dir,
/// workers) are omitted; that form feeds config_hash.
std::string to_config_text(const ExperimentSpec& spec, bool include_runtime = true);

}  // namespace mfm

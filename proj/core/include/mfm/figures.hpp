#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mfm/experiment.hpp"

namespace mfm {

enum class Figure { Fig1, Fig2a, Fig2b, Fig3a, Fig3b };

std::string to_string(Figure f);
/// Throws ValidationError("figure", ...) for unknown names.
Figure parse_figure(const std::string& name);
std::vector<Figure> all_figures();

/// Smaller runs for testing; unset fields keep the canonical values.
struct FigureOverrides {
  std::optional<std::size_t> t_steps;
  std::optional<std::size_t> n_agents;
  std::optional<std::size_t> tau;
  std::optional<std::size_t> realizations;
  std::optional<std::uint64_t> seed;
};

/// Canonical run behind each figure. fig1, fig3a and fig3b: N = 2e4,
/// mu = 100. fig2a and fig2b: N = 1e4, mu ~ U[10, 200], 10 realizations.
/// All use T = 2e5.
ExperimentSpec figure_spec(Figure f, const FigureOverrides& overrides = {});

/// Writes the plot data for `f` from an aggregate produced by figure_spec,
/// plus <name>.json describing columns, axes and reference slopes.
/// Returns the files written.
std::vector<std::string> write_figure(Figure f, const AggregateResult& result, const std::filesystem::path& dir);

}  // namespace mfm

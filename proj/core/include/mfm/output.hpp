#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mfm/experiment.hpp"

namespace mfm {

/// Writes one CSV family per requested analysis plus manifest.json into
/// `dir` (created if needed). Returns the file names written, manifest last.
///
///   returns_ccdf     returns_ccdf.csv   x, ccdf_pos, ccdf_neg, normal_ref
///   volume_ccdf      volume_ccdf.csv    n, ccdf, slope_ref
///   tail_estimate    tail_estimate.csv  realization, tail, k, gamma, alpha, subsample_mse
///   acf              acf.csv            lag, acf_r, acf_abs_r, noise_band
///   volatility       prices.csv         t, p, p_star
///                    volatility.csv     t, r, sigma
///                    volatility_pdf.csv sigma, density, lognormal
///   multifractal     multifractal.csv   q, d, m_qd
///                    zeta.csv           q, zeta_q, r2
///   analytic_overlay analytic.csv       r, mixture, closed_form
///
/// Series files describe realization 0; distributions pool all realizations.
/// Output bytes depend only on the aggregate, never on timing.
std::vector<std::string> write_outputs(const AggregateResult& result, const std::filesystem::path& dir);

/// Run metadata: configuration echo and hash, seeds, exponents with the k
/// and realization count behind them, and diagnostics.
std::string manifest_json(const AggregateResult& result, const std::vector<std::string>& files);

/// Volume exponent used for analytic overlays: the configured value, else the
/// measured mean, else 3/2.
double overlay_zeta(const AggregateResult& result);

/// Plain "%.10g" formatting shared by every CSV writer.
std::string format_number(double value);

}  // namespace mfm

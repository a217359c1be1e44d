#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

namespace mfm {

/// Thrown when a configuration or input violates a documented precondition.
/// Carries the offending field name so that callers can report it.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Every agent shares the same sensitivity.
struct Homogeneous {
  double mu = 100.0;
};

/// Each agent draws its sensitivity i.i.d. uniform on [lo, hi].
struct UniformHeterogeneous {
  double lo = 10.0;
  double hi = 200.0;
};

using SensitivitySpec = std::variant<Homogeneous, UniformHeterogeneous>;

/// Each trader moves exactly one unit.
struct UnitVolume {};

/// Each trader moves Poisson(lambda) units; price dynamics are unaffected.
struct PoissonVolume {
  double lambda = 1.0;
};

using VolumeVariant = std::variant<UnitVolume, PoissonVolume>;

/// Diagnostic variant: the number of traders is drawn from a log-normal
/// law instead of being generated by the trade-probability rule.
struct LogNormalTraders {
  double mu_ln = 0.0;
  double sigma_ln = 1.0;
};

struct ModelConfig {
  std::size_t n_agents = 10000;
  SensitivitySpec mu_spec = UniformHeterogeneous{};
  std::size_t tau = 10000;
  double p0 = 1.0;
  std::size_t t_steps = 200000;
  std::uint64_t seed = 1;
  VolumeVariant volume = UnitVolume{};
  std::optional<LogNormalTraders> n_override;

  /// Throws ValidationError naming the first offending field.
  void validate() const;
};

/// Validates a sensitivity specification on its own.
void validate_sensitivity(const SensitivitySpec& spec);

/// Human-readable one-line rendering, e.g. "uniform(10, 200)".
std::string describe(const SensitivitySpec& spec);

}  // namespace mfm

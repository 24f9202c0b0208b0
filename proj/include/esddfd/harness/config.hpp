#pragma once

// Experiment configuration documents.
//
//   # comment
//   experiment = decay_order
//   lambda = 1
//   h0 = 0.125
//   schemes = ForwardEuler, MickensExact
//
// A document may hold several experiments, one per "[section]"; keys above
// the first section are shared defaults. Values are validated against a
// per-experiment schema and stored in canonical text form (numbers with 17
// significant digits, defaults filled in), so equal configs compare equal.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace esddfd::harness {

enum class Experiment : std::uint8_t {
  DecayOrder,
  HoExact,
  PdeCompare,
  PdeStability,
  MlIdentities,
  SignatureDemo,
  LaplaceBvp,
};

std::string_view to_string(Experiment e);
std::optional<Experiment> parse_experiment(std::string_view name);

struct ConfigIssue {
  /// 1-based source line, 0 when the issue is not tied to a line.
  int line = 0;
  std::string key;
  std::string message;
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues);
  const std::vector<ConfigIssue>& issues() const { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
};

/// A pair "amplitude:wavenumber" from an ic_modes list.
struct SineMode {
  double amplitude;
  double k;
};

struct ExperimentConfig {
  Experiment experiment = Experiment::DecayOrder;
  /// Section name, or the experiment name for single-experiment documents.
  std::string name;
  std::map<std::string, std::string> params;

  bool has(const std::string& key) const { return params.count(key) != 0; }
  const std::string& text(const std::string& key) const;
  double number(const std::string& key) const;
  int integer(const std::string& key) const;
  std::vector<double> numbers(const std::string& key) const;
  std::vector<std::string> strings(const std::string& key) const;
  std::vector<SineMode> modes(const std::string& key) const;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Parses a document holding exactly one experiment. Throws ConfigError
/// listing every violation found.
ExperimentConfig parse_config(std::string_view text);

/// Parses a document with any number of experiments.
std::vector<ExperimentConfig> parse_batch(std::string_view text);

/// Validates raw key/value pairs for one experiment (used by the CLI).
ExperimentConfig make_config(Experiment experiment, const std::map<std::string, std::string>& values,
                             std::string name = {});

/// Canonical document text; parse_config(to_config_text(c)) == c.
std::string to_config_text(const ExperimentConfig& config);

/// 17-significant-digit rendering used for canonical values and reports.
std::string format_number(double v);

}  // namespace esddfd::harness

#pragma once

// Experiment configuration: flat key = value text (INI style) or a JSON
// object, chosen by file extension. Every key has an embedded default.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace hankel_lab {

enum class ExperimentKind { ratio_sweep, projection_norm, lacunary_growth, block_sweep, check_suite };

std::string_view to_string(ExperimentKind kind);
// Accepts both "ratio_sweep" and "ratio-sweep".
std::optional<ExperimentKind> parse_experiment_kind(std::string_view text);

enum class SymbolFamily { gaussian, monomial, lacunary, constant };
std::string_view to_string(SymbolFamily family);

class ConfigError : public std::runtime_error {
 public:
  // line = 0 when the error is not tied to a line.
  ConfigError(const std::string& source, std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::ratio_sweep;
  std::vector<double> p_grid{1.0, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0};
  std::size_t m = 32;
  std::size_t degree = 15;
  std::size_t block_dim = 1;
  std::vector<std::size_t> block_dims{1, 2, 4};
  double alpha = 0.0;
  double beta = 0.0;
  int trials = 10;
  std::uint64_t seed = 20240601;
  std::string output_path;
  SymbolFamily family = SymbolFamily::gaussian;
  int multistarts = 8;
  int iterations = 200;
  double tolerance_scale = 1.0;
  unsigned paley_max_n = 10;

  // Line of each key in the file it was read from.
  using KeyLines = std::map<std::string, std::size_t, std::less<>>;

  // Throws ConfigError describing the first violated invariant, at the line of
  // the responsible key when `lines` knows it.
  void validate(const std::string& source = "config", const KeyLines& lines = {}) const;
};

ExperimentConfig default_config(ExperimentKind kind);

// Parsers start from default_config(kind) and override the keys present.
ExperimentConfig parse_ini_config(std::string_view text, ExperimentKind kind,
                                  const std::string& source = "config");
ExperimentConfig parse_json_config(std::string_view text, ExperimentKind kind,
                                   const std::string& source = "config");
// ".json" selects JSON; anything else is read as key = value text.
ExperimentConfig load_config(const std::string& path, ExperimentKind kind);

nlohmann::ordered_json to_json(const ExperimentConfig& cfg);

}  // namespace hankel_lab

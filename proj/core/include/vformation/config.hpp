#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "vformation/analysis.hpp"

namespace vform {

/// A formation plus the conditions it is flown at.
struct StudyConfig {
  FormationLayout layout;
  FlightCondition flight;
  SolverOptions solver;
  UpwashLocus locus = UpwashLocus::QuarterChord;

  /// Validates layout, flight condition and solver options.
  void validate() const;
};

/// Parses the sectioned key = value format described in
/// docs/config_format.md. Syntax errors, unknown sections or keys, repeated
/// keys and malformed numbers throw ConfigError with `source:line`.
/// Values are not range-checked here; call StudyConfig::validate.
StudyConfig parse_config(std::string_view text, std::string_view source = "<config>");

/// Reads and parses a file. A missing file throws ConfigError.
StudyConfig load_config(const std::filesystem::path& path);

/// Applies one `<section>.<key>=<value>` override, where section is
/// `flight`, `solver` or a wing id. Offset keys of a trailing wing use the
/// wing id as well (for example `left.spanwise=-0.1`).
void apply_override(StudyConfig& config, std::string_view assignment);

/// Canonical text form; parse_config(render_config(c)) reproduces c.
std::string render_config(const StudyConfig& config);

}  // namespace vform

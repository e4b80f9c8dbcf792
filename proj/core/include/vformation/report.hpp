#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vformation/analysis.hpp"

namespace vform {

/// Everything needed to reproduce one run, echoed into its metadata sidecar.
struct RunMetadata {
  std::string command;
  std::string run_id;
  FormationLayout layout;
  FlightCondition condition;
  SolverOptions solver;
  UpwashLocus locus = UpwashLocus::QuarterChord;
  /// Command-specific settings as (name, value) text pairs, in order.
  std::vector<std::pair<std::string, std::string>> settings;
  /// Artifact file names written by the run.
  std::vector<std::string> files;
};

/// Pretty-printed JSON with a fixed key order.
std::string render_metadata(const RunMetadata& meta);

/// FNV-1a digest of the metadata rendered with an empty run id, so equal
/// inputs always give equal ids.
std::string compute_run_id(const RunMetadata& meta);

}  // namespace vform

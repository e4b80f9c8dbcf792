#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "vformation/analysis.hpp"

namespace vform {

/// Leader shape and attitude parameters act on the leader only; offset
/// parameters act on every trailing wing.
enum class SweepParameter { Incidence, Dihedral, AspectRatio, Taper, Streamwise, Wts, Vertical };

std::string_view to_string(SweepParameter parameter);
/// Accepts incidence, dihedral, aspect_ratio, taper, streamwise, wts, vertical.
SweepParameter parse_sweep_parameter(std::string_view text);

/// Returns a copy of `layout` with `parameter` set to `value`.
///
/// aspect_ratio changes only the leader span (b = AR * S / b at fixed
/// chords); taper sets tip = taper * root with the root chord unchanged.
FormationLayout apply_parameter(FormationLayout layout, SweepParameter parameter, double value);

struct SweepAxis {
  SweepParameter parameter = SweepParameter::Incidence;
  std::vector<double> values;
};

struct SweepSpec {
  FormationLayout layout;
  /// Cases are the cross product of all axes; the last axis varies fastest.
  std::vector<SweepAxis> axes;
  FlightCondition condition;
  SolverOptions solver;
  UpwashLocus locus = UpwashLocus::QuarterChord;
  /// Worker threads (values < 1 mean 1).
  int jobs = 1;

  /// Throws ValidationError for empty or non-monotone value lists, repeated
  /// parameters, or an invalid base layout.
  void validate() const;
  std::size_t case_count() const;
};

struct SweepCase {
  std::string id;
  /// One value per axis.
  std::vector<double> values;
  FormationMetrics metrics;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepCase> cases;
  /// Solo solutions, one per distinct wing definition, in first-use order.
  std::vector<Baseline> baselines;
};

/// Runs every case of `spec`. Results keep spec order regardless of thread
/// scheduling. Errors are rethrown with the offending case attached.
SweepResult run_sweep(const SweepSpec& spec);

/// Stable case label such as "incidence=5;aspect_ratio=6".
std::string case_label(const std::vector<SweepAxis>& axes, const std::vector<double>& values);

/// Output files of one sweep: metrics CSV at `csv_path`, plus
/// `<stem>.meta.json` and `<stem>.plot.csv` beside it.
struct SweepArtifacts {
  std::filesystem::path csv;
  std::filesystem::path metadata;
  std::filesystem::path plot;
  std::string run_id;
};

/// Deterministic identifier of a sweep's inputs and code version.
std::string sweep_run_id(const SweepSpec& spec);

/// Renders the three files without writing them.
std::vector<std::pair<std::filesystem::path, std::string>> render_results(const SweepResult& result,
                                                                          const std::filesystem::path& csv_path,
                                                                          SweepArtifacts* artifacts = nullptr);

/// Writes all three files atomically. Throws ValidationError for an empty
/// result; filesystem errors propagate unchanged.
SweepArtifacts write_results(const SweepResult& result, const std::filesystem::path& csv_path);

}  // namespace vform

#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "vformation/analysis.hpp"

namespace vform {

/// Hummel's optimum wing-tip spacing, 0.5 b (1 - 0.89), returned as the
/// magnitude of tip overlap. Throws DomainError for b < 0 or non-finite b;
/// b = 0 gives 0.
double hummel_optimal_wts(double span);

/// The same optimum as a signed tip gap (negative = overlap).
inline double hummel_optimal_gap(double span) { return -hummel_optimal_wts(span); }

struct GoldenResult {
  double x = 0.0;
  double fx = 0.0;
  std::size_t evaluations = 0;
  /// Every (x, f(x)) pair in evaluation order.
  std::vector<std::pair<double, double>> trace;
};

/// Upper bound on evaluations used by `golden_section_minimize`:
/// ceil(log((hi - lo) / tol) / log(1.618)) + 2.
std::size_t golden_evaluation_bound(double lo, double hi, double tol);

/// Minimizes a unimodal `f` on [lo, hi] until the bracket is no wider than
/// `tol`. A bracket already within `tol` costs two evaluations (lo and hi).
/// Throws ValidationError unless lo < hi and tol > 0.
GoldenResult golden_section_minimize(const std::function<double(double)>& f, double lo, double hi, double tol);

enum class SpacingAxis { Wts, Vertical, Streamwise };
enum class SpacingObjective {
  TrailingPower,  ///< mean power reduction of the trailing wings
  FormationTotal, ///< 1 - sum D_FF / sum D_BL over all wings
};

std::string_view to_string(SpacingAxis axis);
SpacingAxis parse_spacing_axis(std::string_view text);
std::string_view to_string(SpacingObjective objective);
/// Accepts trailing and total.
SpacingObjective parse_spacing_objective(std::string_view text);

struct SpacingStudy {
  FormationLayout layout;
  SpacingAxis axis = SpacingAxis::Wts;
  double lo = -0.4;
  double hi = 0.8;
  double tolerance = 0.02;
  SpacingObjective objective = SpacingObjective::TrailingPower;
  FlightCondition condition;
  SolverOptions solver;
  /// Points of the coarse pre-scan (>= 3), lo and hi included.
  int scan_points = 13;
  int jobs = 1;

  void validate() const;
};

struct SpacingProbe {
  double value = 0.0;
  /// Objective reduction (fraction; larger is better).
  double reduction = 0.0;
  double trailing_power_reduction = 0.0;
  double total_drag_reduction = 0.0;
  bool scan = false;
};

struct SpacingResult {
  double optimum = 0.0;
  double reduction = 0.0;
  /// Set when the pre-scan is not unimodal; `optimum` is then the best scan point.
  bool multimodal = false;
  /// Evaluations spent in golden-section refinement.
  std::size_t iterations = 0;
  /// Pre-scan probes first (in grid order), then refinement probes.
  std::vector<SpacingProbe> trace;
};

/// Applies `value` to every trailing wing's offset along `axis`.
FormationLayout apply_spacing(FormationLayout layout, SpacingAxis axis, double value);

/// Solves the layout at one axis value and reports both reductions.
SpacingProbe evaluate_spacing(const SpacingStudy& study, double value, std::span<const Baseline> baselines);

/// Solo baselines for every distinct wing definition of `layout`.
std::vector<Baseline> solve_baselines(const FormationLayout& layout, const FlightCondition& cond,
                                      const SolverOptions& options, int jobs = 1);

/// Coarse pre-scan, unimodality check, then golden-section refinement on
/// the scan cell around the best point. Solver failures abort with the
/// probe value attached.
SpacingResult optimize_spacing(const SpacingStudy& study);

struct StaggerRow {
  double offset = 0.0;
  std::vector<std::string> ids;
  std::vector<double> near_field_drag;
  std::vector<double> trefftz_drag;
  double near_field_total = 0.0;
  double trefftz_total = 0.0;
};

/// Induced drag at each streamwise separation (applied to every trailing
/// wing). With `frozen`, the circulations solved at the first offset are
/// reused for all rows. Throws ValidationError for values <= 0.
std::vector<StaggerRow> munk_stagger_report(const FormationLayout& layout, const std::vector<double>& values,
                                            const FlightCondition& cond, const SolverOptions& options = {},
                                            bool frozen = false);

}  // namespace vform

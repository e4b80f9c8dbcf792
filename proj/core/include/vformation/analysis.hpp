#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vformation/solver.hpp"

namespace vform {

struct ForceState {
  double lift = 0.0;
  double drag = 0.0;
};

/// Forces after the resultant is rotated forward by `delta_alpha` (rad).
struct RotatedForces {
  double delta_alpha = 0.0;
  double lift = 0.0;
  double drag = 0.0;
  double delta_lift = 0.0;
  double delta_drag = 0.0;
};

/// Largest rotation accepted by `rotate_forces`, in radians (exclusive).
inline constexpr double kMaxRotation = 0.2;

/// L' = L cos + D sin, D' = D cos - L sin, dL = D sin, dD = L sin.
/// The magnitude of (L, D) is preserved. Throws DomainError when
/// |delta_alpha| >= kMaxRotation or an input is not finite.
RotatedForces rotate_forces(const ForceState& base, double delta_alpha);

/// Where the induced upwash on a wing is sampled and how it is averaged.
enum class UpwashLocus {
  QuarterChord,       ///< chord-weighted mean along the quarter-chord line
  ThreeQuarterChord,  ///< chord-weighted mean along the three-quarter-chord line
  LiftWeighted,       ///< quarter-chord line, weighted by strip circulation
};

std::string_view to_string(UpwashLocus locus);
/// Accepts quarter_chord, three_quarter_chord, lift_weighted.
UpwashLocus parse_upwash_locus(std::string_view text);

/// Mean upwash angle (rad, positive up) induced on wing `wing_id` by every
/// other wing's bound and trailing vortices: atan(w / V).
/// Circulations of `wing_id` itself are ignored.
double upwash_angle(std::string_view wing_id, const Lattice& lattice, const Eigen::VectorXd& gamma,
                    const FlightCondition& cond, const SolverOptions& options = {},
                    UpwashLocus locus = UpwashLocus::QuarterChord);

/// 1 - D_FF / D_BL. Throws DomainError when D_BL <= 0.
double drag_reduction(double drag_formation, double drag_baseline);
/// Power at fixed speed is D V, so the ratio is the drag ratio.
double power_reduction(double drag_formation, double drag_baseline);

/// Solo-flight loads of one wing definition at one flight condition.
struct Baseline {
  WingSpec spec;
  FlightCondition condition;
  WingLoads loads;
};

/// Solves `spec` flying alone.
Baseline solve_baseline(const WingSpec& spec, const FlightCondition& cond, const SolverOptions& options = {});

/// Baseline moments smaller than this (N m) make the moment ratio undefined.
inline constexpr double kMinBaselineMoment = 1e-6;

struct WingMetrics {
  std::string id;
  Role role = Role::Leader;
  WingLoads formation;
  WingLoads baseline;
  double lift_ratio = 0.0;
  double drag_ratio = 0.0;
  /// Empty when |M_BL| < kMinBaselineMoment.
  std::optional<double> moment_ratio;
  double delta_alpha = 0.0;
  double drag_reduction = 0.0;
  double power_reduction = 0.0;
  double power_formation = 0.0;
  double power_baseline = 0.0;
};

struct FormationMetrics {
  FlightCondition condition;
  std::vector<WingMetrics> wings;

  const WingMetrics& wing(std::string_view id) const;
  /// Mean power reduction over trailing wings (0 if there are none).
  double trailing_power_reduction() const;
  /// 1 - sum D_FF / sum D_BL over all wings.
  double total_drag_reduction() const;
};

/// Formation-to-solo ratios for every wing. Each wing is matched to the
/// baseline with an identical WingSpec and flight condition; a missing match
/// throws ValidationError naming the wing.
FormationMetrics formation_ratios(const FormationSolution& formation, std::span<const Baseline> baselines,
                                  const SolverOptions& options = {}, UpwashLocus locus = UpwashLocus::QuarterChord);

/// Column names of the per-wing metrics CSV, in order.
const std::vector<std::string>& metrics_csv_columns();
/// Appends one CSV row per wing of `metrics`, each ending with `run_id`.
void append_metrics_rows(std::string& csv, std::string_view case_id, const FormationMetrics& metrics,
                         std::string_view run_id);

}  // namespace vform

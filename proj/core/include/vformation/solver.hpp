#pragma once

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/LU>

#include "vformation/geometry.hpp"

namespace vform {

/// Freestream state. The freestream always blows along +x of the wind frame;
/// `alpha_deg` pitches every wing's reference line nose-up relative to it.
struct FlightCondition {
  double speed = 20.0;
  double density = 1.225;
  double alpha_deg = 4.0;

  void validate() const;
  double dynamic_pressure() const { return 0.5 * density * speed * speed; }
  Vec3 freestream() const { return {speed, 0.0, 0.0}; }

  friend bool operator==(const FlightCondition&, const FlightCondition&) = default;
};

/// Vortex core radii, as fractions of the span of the wing that owns the
/// inducing filament. `core_fraction` applies to a wing's influence on
/// itself; `interference_core_fraction` to its influence on other wings,
/// where it stands in for the finite core of the shed tip vortex.
struct SolverOptions {
  double core_fraction = 1e-6;
  double interference_core_fraction = 0.05;

  void validate() const;
  friend bool operator==(const SolverOptions&, const SolverOptions&) = default;
};

/// Velocity induced at `point` by a straight filament from `start` to `end`
/// carrying circulation `gamma`. Within `core` of the filament axis the
/// kernel is smoothed (v ~ r / (r^2 + core^2)); on the axis it is zero.
Vec3 biot_savart_segment(const Vec3& point, const Vec3& start, const Vec3& end, double gamma,
                         double core = 0.0);

/// Velocity induced by a semi-infinite filament leaving `anchor` along the
/// unit vector `direction`.
Vec3 biot_savart_semi_infinite(const Vec3& point, const Vec3& anchor, const Vec3& direction, double gamma,
                               double core = 0.0);

/// Unit-strength horseshoe of `panel`: in from infinity to the trailing
/// edge, up the panel edge, across the bound segment, back to the trailing
/// edge and out to infinity along `wake_direction`.
Vec3 horseshoe_velocity(const Vec3& point, const Panel& panel, const Vec3& wake_direction, double core);

/// Core radius used for the influence of wing `source` on wing `target`.
double core_radius(const Lattice& lattice, int source, int target, const SolverOptions& options);

/// Velocity induced at `point` by every panel whose owning wing passes
/// `include(wing)`, with circulations `gamma`. `target_wing` selects the
/// core radius (-1: treat every source as foreign).
template <typename Include>
Vec3 induced_velocity(const Vec3& point, const Lattice& lattice, const Eigen::VectorXd& gamma, int target_wing,
                      const SolverOptions& options, Include include) {
  Vec3 v = Vec3::Zero();
  for (std::size_t w = 0; w < lattice.wings.size(); ++w) {
    if (!include(static_cast<int>(w))) continue;
    const auto& lw = lattice.wings[w];
    const double core = target_wing < 0
                            ? lw.spec.span * options.interference_core_fraction
                            : core_radius(lattice, static_cast<int>(w), target_wing, options);
    for (std::size_t j = lw.first_panel; j < lw.first_panel + lw.panel_count; ++j) {
      if (gamma[j] == 0.0) continue;
      v += gamma[j] * horseshoe_velocity(point, lattice.panels[j], lattice.wake_direction, core);
    }
  }
  return v;
}

/// Influence matrix and right-hand side. When built by `assemble_system`
/// the LU factorization is cached for `solve_circulations`.
struct LinearSystem {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;
  std::string label;
  std::shared_ptr<const Eigen::PartialPivLU<Eigen::MatrixXd>> factorization;

  /// Reciprocal 1-norm condition estimate (0 for singular systems).
  double rcond() const;
};

/// Largest acceptable condition-number estimate.
inline constexpr double kMaxConditionNumber = 1e12;

/// Entry (i, j): normal velocity at control point i induced by the
/// unit-strength horseshoe j. RHS: -(V_inf . n_i). Throws NumericError when
/// the estimated condition number exceeds `kMaxConditionNumber`.
LinearSystem assemble_system(const Lattice& lattice, const FlightCondition& cond,
                             const SolverOptions& options = {});

/// Solves the system with partial-pivot LU plus one refinement step if
/// needed. Guarantees ||A x - b||_inf <= 1e-10 ||b||_inf or throws
/// NumericError naming the system label.
Eigen::VectorXd solve_circulations(const LinearSystem& system);

struct WingLoads {
  std::string id;
  Role role = Role::Leader;
  double lift = 0.0;
  double drag = 0.0;
  /// Pitching moment about the wing's root quarter-chord, nose-up positive.
  double moment = 0.0;
  double cl = 0.0;
  double cd = 0.0;
  double cm = 0.0;
  /// Far-field induced drag attributed to this wing's wake strips.
  double trefftz_drag = 0.0;
  double area = 0.0;
  double mean_chord = 0.0;
  Eigen::VectorXd circulation;
};

struct AeroSolution {
  FlightCondition condition;
  std::vector<WingLoads> wings;
  double lift = 0.0;
  double drag = 0.0;
  double moment = 0.0;
  double trefftz_drag = 0.0;

  const WingLoads& wing(std::string_view id) const;
};

/// Kutta-Joukowski forces on the bound segments using the total local
/// velocity (freestream plus every horseshoe). Lift is +z, drag is +x.
AeroSolution near_field_forces(const Eigen::VectorXd& gamma, const Lattice& lattice, const FlightCondition& cond,
                               const SolverOptions& options = {});

struct TrefftzDrag {
  std::vector<double> per_wing;
  double total = 0.0;
};

/// Induced drag from the far-wake cross-flow: trailing filaments are
/// projected on the plane normal to the wake direction and treated as 2-D
/// point vortices. Each wing is charged with the strips it sheds.
TrefftzDrag trefftz_induced_drag(const Eigen::VectorXd& gamma, const Lattice& lattice, const FlightCondition& cond,
                                 const SolverOptions& options = {});

/// Sum of panel circulations along each strip of wing `w`.
std::vector<double> strip_circulation(const Eigen::VectorXd& gamma, const Lattice& lattice, int w);

struct FormationSolution {
  Lattice lattice;
  Eigen::VectorXd circulation;
  AeroSolution aero;
};

/// Assemble, solve, and evaluate near-field and Trefftz loads.
FormationSolution solve_formation(const FormationLayout& layout, const FlightCondition& cond,
                                  const SolverOptions& options = {});

}  // namespace vform

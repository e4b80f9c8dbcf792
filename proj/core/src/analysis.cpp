#include "vformation/analysis.hpp"

#include <cmath>

#include "vformation/errors.hpp"
#include "vformation/io.hpp"

namespace vform {

RotatedForces rotate_forces(const ForceState& base, double delta_alpha) {
  if (!std::isfinite(base.lift) || !std::isfinite(base.drag) || !std::isfinite(delta_alpha)) {
    throw DomainError("rotate_forces: non-finite input");
  }
  if (!(std::abs(delta_alpha) < kMaxRotation)) {
    throw DomainError("rotate_forces: |delta_alpha| = " + format_number(std::abs(delta_alpha)) +
                      " rad outside the small-angle range (< 0.2 rad)");
  }
  const double c = std::cos(delta_alpha);
  const double s = std::sin(delta_alpha);
  RotatedForces r;
  r.delta_alpha = delta_alpha;
  r.lift = base.lift * c + base.drag * s;
  r.drag = base.drag * c - base.lift * s;
  r.delta_lift = base.drag * s;
  r.delta_drag = base.lift * s;
  return r;
}

std::string_view to_string(UpwashLocus locus) {
  switch (locus) {
    case UpwashLocus::QuarterChord: return "quarter_chord";
    case UpwashLocus::ThreeQuarterChord: return "three_quarter_chord";
    case UpwashLocus::LiftWeighted: return "lift_weighted";
  }
  return "quarter_chord";
}

UpwashLocus parse_upwash_locus(std::string_view text) {
  if (text == "quarter_chord") return UpwashLocus::QuarterChord;
  if (text == "three_quarter_chord") return UpwashLocus::ThreeQuarterChord;
  if (text == "lift_weighted") return UpwashLocus::LiftWeighted;
  throw ConfigError("upwash locus must be quarter_chord, three_quarter_chord or lift_weighted, got '" +
                    std::string(text) + "'");
}

double upwash_angle(std::string_view wing_id, const Lattice& lattice, const Eigen::VectorXd& gamma,
                    const FlightCondition& cond, const SolverOptions& options, UpwashLocus locus) {
  cond.validate();
  const int w = lattice.wing_index(wing_id);
  if (w < 0) throw ValidationError(std::string(wing_id), "unknown wing id");
  if (static_cast<std::size_t>(gamma.size()) != lattice.size()) {
    throw ValidationError("circulation", "size does not match the lattice");
  }
  const auto& lw = lattice.wings[w];
  const auto& points =
      locus == UpwashLocus::ThreeQuarterChord ? lw.three_quarter_chord_points : lw.quarter_chord_points;
  std::vector<double> weights(lw.spec.n_span);
  if (locus == UpwashLocus::LiftWeighted) {
    const auto circ = strip_circulation(gamma, lattice, w);
    for (int k = 0; k < lw.spec.n_span; ++k) weights[k] = circ[k] * lw.strip_width[k];
  } else {
    for (int k = 0; k < lw.spec.n_span; ++k) weights[k] = lw.strip_chord[k] * lw.strip_width[k];
  }
  double total_weight = 0.0;
  for (double x : weights) total_weight += x;
  if (!(std::abs(total_weight) > 0.0)) {
    throw DomainError("upwash_angle: wing '" + lw.id + "' has zero total weight for the " +
                      std::string(to_string(locus)) + " average");
  }
  double wash = 0.0;
  for (int k = 0; k < lw.spec.n_span; ++k) {
    const Vec3 v = induced_velocity(points[k], lattice, gamma, w, options, [w](int s) { return s != w; });
    wash += weights[k] * v.z();
  }
  return std::atan(wash / total_weight / cond.speed);
}

double drag_reduction(double drag_formation, double drag_baseline) {
  if (!(drag_baseline > 0.0)) {
    throw DomainError("drag reduction needs a positive baseline drag, got " + format_number(drag_baseline));
  }
  return 1.0 - drag_formation / drag_baseline;
}

double power_reduction(double drag_formation, double drag_baseline) {
  return drag_reduction(drag_formation, drag_baseline);
}

Baseline solve_baseline(const WingSpec& spec, const FlightCondition& cond, const SolverOptions& options) {
  const FormationSolution solo = solve_formation(solo_layout(spec), cond, options);
  return Baseline{spec, cond, solo.aero.wings.front()};
}

const WingMetrics& FormationMetrics::wing(std::string_view id) const {
  for (const auto& w : wings) {
    if (w.id == id) return w;
  }
  throw ValidationError(std::string(id), "unknown wing id");
}

double FormationMetrics::trailing_power_reduction() const {
  double sum = 0.0;
  int count = 0;
  for (const auto& w : wings) {
    if (w.role != Role::Trailing) continue;
    sum += w.power_reduction;
    ++count;
  }
  return count == 0 ? 0.0 : sum / count;
}

double FormationMetrics::total_drag_reduction() const {
  double ff = 0.0;
  double bl = 0.0;
  for (const auto& w : wings) {
    ff += w.formation.drag;
    bl += w.baseline.drag;
  }
  return drag_reduction(ff, bl);
}

FormationMetrics formation_ratios(const FormationSolution& formation, std::span<const Baseline> baselines,
                                  const SolverOptions& options, UpwashLocus locus) {
  const auto& cond = formation.aero.condition;
  FormationMetrics out;
  out.condition = cond;
  for (std::size_t w = 0; w < formation.lattice.wings.size(); ++w) {
    const auto& lw = formation.lattice.wings[w];
    const Baseline* match = nullptr;
    for (const auto& b : baselines) {
      if (b.spec == lw.spec && b.condition == cond) {
        match = &b;
        break;
      }
    }
    if (!match) throw ValidationError(lw.id, "no solo baseline for this wing definition and flight condition");

    WingMetrics m;
    m.id = lw.id;
    m.role = lw.role;
    m.formation = formation.aero.wings[w];
    m.baseline = match->loads;
    if (m.baseline.lift == 0.0) throw DomainError("wing '" + lw.id + "': baseline lift is zero");
    m.lift_ratio = m.formation.lift / m.baseline.lift;
    m.drag_reduction = drag_reduction(m.formation.drag, m.baseline.drag);
    m.power_reduction = power_reduction(m.formation.drag, m.baseline.drag);
    m.drag_ratio = m.formation.drag / m.baseline.drag;
    if (std::abs(m.baseline.moment) >= kMinBaselineMoment) m.moment_ratio = m.formation.moment / m.baseline.moment;
    m.power_formation = m.formation.drag * cond.speed;
    m.power_baseline = m.baseline.drag * cond.speed;
    m.delta_alpha = upwash_angle(lw.id, formation.lattice, formation.circulation, cond, options, locus);
    out.wings.push_back(std::move(m));
  }
  return out;
}

const std::vector<std::string>& metrics_csv_columns() {
  static const std::vector<std::string> columns = {
      "case_id",      "wing_id",       "role",       "L",         "D_i",
      "M",            "C_L",           "C_D",        "C_m",       "L_ratio",
      "D_ratio",      "M_ratio",       "delta_alpha", "pct_drag_red", "pct_power_red",
      "M_ratio_valid", "D_i_trefftz", "run_id"};
  return columns;
}

void append_metrics_rows(std::string& csv, std::string_view case_id, const FormationMetrics& metrics,
                         std::string_view run_id) {
  for (const auto& w : metrics.wings) {
    const auto& f = w.formation;
    csv += csv_field(case_id);
    for (const std::string& field :
         {csv_field(w.id), std::string(to_string(w.role)), format_number(f.lift), format_number(f.drag),
          format_number(f.moment), format_number(f.cl), format_number(f.cd), format_number(f.cm),
          format_number(w.lift_ratio), format_number(w.drag_ratio),
          w.moment_ratio ? format_number(*w.moment_ratio) : std::string("NA"), format_number(w.delta_alpha),
          format_number(100.0 * w.drag_reduction), format_number(100.0 * w.power_reduction),
          std::string(w.moment_ratio ? "1" : "0"), format_number(f.trefftz_drag), std::string(run_id)}) {
      csv += ',';
      csv += field;
    }
    csv += '\n';
  }
}

}  // namespace vform

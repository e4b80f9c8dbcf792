#include "vformation/solver.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "vformation/errors.hpp"

namespace vform {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

void FlightCondition::validate() const {
  if (!(speed > 0.0) || !std::isfinite(speed)) throw ValidationError("flight.speed", "must be > 0");
  if (!(density > 0.0) || !std::isfinite(density)) throw ValidationError("flight.density", "must be > 0");
  if (!(std::abs(alpha_deg) < 15.0)) {
    throw ValidationError("flight.alpha", "|alpha| must be below 15 deg (linear regime)");
  }
}

void SolverOptions::validate() const {
  if (!(core_fraction >= 0.0 && core_fraction < 0.1)) {
    throw ValidationError("solver.core", "core fraction must lie in [0, 0.1)");
  }
  if (!(interference_core_fraction >= 0.0 && interference_core_fraction < 0.5)) {
    throw ValidationError("solver.interference_core", "interference core fraction must lie in [0, 0.5)");
  }
}

Vec3 biot_savart_segment(const Vec3& point, const Vec3& start, const Vec3& end, double gamma, double core) {
  const Vec3 r0 = end - start;
  const Vec3 r1 = point - start;
  const Vec3 r2 = point - end;
  const double len1 = r1.norm();
  const double len2 = r2.norm();
  const double len0_sq = r0.squaredNorm();
  if (len0_sq == 0.0 || len1 == 0.0 || len2 == 0.0) return Vec3::Zero();
  const Vec3 cross = r1.cross(r2);
  const double denom = cross.squaredNorm() + core * core * len0_sq;
  if (denom <= 1e-300) return Vec3::Zero();
  const double k = gamma / kFourPi * r0.dot(r1 / len1 - r2 / len2) / denom;
  return k * cross;
}

Vec3 biot_savart_semi_infinite(const Vec3& point, const Vec3& anchor, const Vec3& direction, double gamma,
                               double core) {
  const Vec3 r = point - anchor;
  const double len = r.norm();
  if (len == 0.0) return Vec3::Zero();
  const double along = r.dot(direction);
  const Vec3 perp = r - along * direction;
  const double denom = perp.squaredNorm() + core * core;
  if (denom <= 1e-300) return Vec3::Zero();
  return gamma / kFourPi * (1.0 + along / len) / denom * direction.cross(r);
}

Vec3 horseshoe_velocity(const Vec3& point, const Panel& panel, const Vec3& wake_direction, double core) {
  Vec3 v = biot_savart_semi_infinite(point, panel.trail_start, wake_direction, -1.0, core);
  v += biot_savart_segment(point, panel.trail_start, panel.bound_start, 1.0, core);
  v += biot_savart_segment(point, panel.bound_start, panel.bound_end, 1.0, core);
  v += biot_savart_segment(point, panel.bound_end, panel.trail_end, 1.0, core);
  v += biot_savart_semi_infinite(point, panel.trail_end, wake_direction, 1.0, core);
  return v;
}

double core_radius(const Lattice& lattice, int source, int target, const SolverOptions& options) {
  const double span = lattice.wings[source].spec.span;
  return span * (source == target ? options.core_fraction : options.interference_core_fraction);
}

double LinearSystem::rcond() const {
  if (factorization) return factorization->rcond();
  return Eigen::PartialPivLU<Eigen::MatrixXd>(matrix).rcond();
}

LinearSystem assemble_system(const Lattice& lattice, const FlightCondition& cond, const SolverOptions& options) {
  cond.validate();
  options.validate();
  if (lattice.panels.empty()) throw ValidationError("lattice", "lattice has no panels");
  if (std::abs(lattice.alpha_deg - cond.alpha_deg) > 1e-12) {
    std::ostringstream os;
    os << "lattice was built at alpha = " << lattice.alpha_deg << " deg but the flight condition has alpha = "
       << cond.alpha_deg << " deg";
    throw ValidationError("flight.alpha", os.str());
  }

  const auto n = static_cast<Eigen::Index>(lattice.size());
  LinearSystem system;
  system.label = lattice.label;
  system.matrix.resize(n, n);
  system.rhs.resize(n);
  const Vec3 freestream = cond.freestream();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Panel& source = lattice.panels[j];
    for (Eigen::Index i = 0; i < n; ++i) {
      const Panel& target = lattice.panels[i];
      const double core = core_radius(lattice, source.wing, target.wing, options);
      system.matrix(i, j) =
          horseshoe_velocity(target.control_point, source, lattice.wake_direction, core).dot(target.normal);
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) system.rhs[i] = -freestream.dot(lattice.panels[i].normal);

  auto lu = std::make_shared<Eigen::PartialPivLU<Eigen::MatrixXd>>(system.matrix);
  const double rc = lu->rcond();
  if (!(rc * kMaxConditionNumber >= 1.0)) {
    std::ostringstream os;
    os << "influence matrix of lattice '" << lattice.label << "' is ill-conditioned (condition estimate "
       << (rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity()) << ")";
    throw NumericError(os.str());
  }
  system.factorization = std::move(lu);
  return system;
}

Eigen::VectorXd solve_circulations(const LinearSystem& system) {
  const auto n = system.matrix.rows();
  if (n == 0 || system.matrix.cols() != n || system.rhs.size() != n) {
    throw NumericError("system '" + system.label + "' is not square or does not match its right-hand side");
  }
  auto lu = system.factorization;
  if (!lu) lu = std::make_shared<Eigen::PartialPivLU<Eigen::MatrixXd>>(system.matrix);
  const double rc = lu->rcond();
  if (!(rc > 0.0) || !std::isfinite(rc) || rc * kMaxConditionNumber < 1.0) {
    throw NumericError("singular matrix for lattice '" + system.label + "'");
  }
  Eigen::VectorXd x = lu->solve(system.rhs);
  const double scale = system.rhs.lpNorm<Eigen::Infinity>();
  auto residual = [&] { return (system.matrix * x - system.rhs).lpNorm<Eigen::Infinity>(); };
  if (residual() > 1e-10 * scale) x += lu->solve(system.rhs - system.matrix * x);
  if (!x.allFinite() || residual() > 1e-10 * scale) {
    throw NumericError("circulation solve for lattice '" + system.label + "' did not reach the residual bound");
  }
  return x;
}

const WingLoads& AeroSolution::wing(std::string_view id) const {
  for (const auto& w : wings) {
    if (w.id == id) return w;
  }
  throw ValidationError(std::string(id), "unknown wing id");
}

AeroSolution near_field_forces(const Eigen::VectorXd& gamma, const Lattice& lattice, const FlightCondition& cond,
                               const SolverOptions& options) {
  cond.validate();
  if (static_cast<std::size_t>(gamma.size()) != lattice.size()) {
    throw ValidationError("circulation", "size does not match the lattice");
  }
  AeroSolution out;
  out.condition = cond;
  const Vec3 freestream = cond.freestream();
  const double q = cond.dynamic_pressure();

  for (std::size_t w = 0; w < lattice.wings.size(); ++w) {
    const auto& lw = lattice.wings[w];
    WingLoads loads;
    loads.id = lw.id;
    loads.role = lw.role;
    loads.area = lw.area;
    loads.mean_chord = lw.mean_chord;
    loads.circulation = gamma.segment(static_cast<Eigen::Index>(lw.first_panel),
                                      static_cast<Eigen::Index>(lw.panel_count));
    Vec3 force = Vec3::Zero();
    Vec3 moment = Vec3::Zero();
    for (std::size_t j = lw.first_panel; j < lw.first_panel + lw.panel_count; ++j) {
      if (gamma[j] == 0.0) continue;
      const Panel& p = lattice.panels[j];
      const Vec3 mid = 0.5 * (p.bound_start + p.bound_end);
      const Vec3 local = freestream + induced_velocity(mid, lattice, gamma, static_cast<int>(w), options,
                                                       [](int) { return true; });
      const Vec3 f = cond.density * gamma[j] * local.cross(p.bound_end - p.bound_start);
      force += f;
      moment += (mid - lw.origin).cross(f);
    }
    loads.lift = force.z();
    loads.drag = force.x();
    loads.moment = moment.y();
    loads.cl = loads.lift / (q * lw.area);
    loads.cd = loads.drag / (q * lw.area);
    loads.cm = loads.moment / (q * lw.area * lw.mean_chord);
    out.lift += loads.lift;
    out.drag += loads.drag;
    out.moment += loads.moment;
    out.wings.push_back(std::move(loads));
  }
  return out;
}

std::vector<double> strip_circulation(const Eigen::VectorXd& gamma, const Lattice& lattice, int w) {
  const auto& lw = lattice.wings[w];
  std::vector<double> strips(lw.spec.n_span, 0.0);
  for (int k = 0; k < lw.spec.n_span; ++k) {
    for (int i = 0; i < lw.spec.n_chord; ++i) strips[k] += gamma[static_cast<Eigen::Index>(lw.panel_index(i, k))];
  }
  return strips;
}

TrefftzDrag trefftz_induced_drag(const Eigen::VectorXd& gamma, const Lattice& lattice, const FlightCondition& cond,
                                 const SolverOptions& options) {
  cond.validate();
  if (static_cast<std::size_t>(gamma.size()) != lattice.size()) {
    throw ValidationError("circulation", "size does not match the lattice");
  }
  // In-plane basis (e1, e2) with (wake, e1, e2) right-handed.
  const Vec3 u = lattice.wake_direction.normalized();
  Vec3 e1 = Vec3::UnitY() - Vec3::UnitY().dot(u) * u;
  e1.normalize();
  const Vec3 e2 = u.cross(e1);

  struct Filament {
    double y, z, strength;
    int wing;
  };
  struct Strip {
    double y, z, ny, nz, length, circulation;
    int wing;
  };
  std::vector<Filament> filaments;
  std::vector<Strip> strips;
  for (std::size_t w = 0; w < lattice.wings.size(); ++w) {
    const auto& lw = lattice.wings[w];
    const auto circ = strip_circulation(gamma, lattice, static_cast<int>(w));
    const int ns = lw.spec.n_span;
    std::vector<std::pair<double, double>> nodes;
    for (const auto& p : lw.trailing_edge) nodes.emplace_back(p.dot(e1), p.dot(e2));
    for (int k = 0; k <= ns; ++k) {
      const double before = k > 0 ? circ[k - 1] : 0.0;
      const double after = k < ns ? circ[k] : 0.0;
      filaments.push_back({nodes[k].first, nodes[k].second, before - after, static_cast<int>(w)});
    }
    for (int k = 0; k < ns; ++k) {
      const double ty = nodes[k + 1].first - nodes[k].first;
      const double tz = nodes[k + 1].second - nodes[k].second;
      const double len = std::hypot(ty, tz);
      strips.push_back({0.5 * (nodes[k].first + nodes[k + 1].first), 0.5 * (nodes[k].second + nodes[k + 1].second),
                        -tz / len, ty / len, len, circ[k], static_cast<int>(w)});
    }
  }

  TrefftzDrag out;
  out.per_wing.assign(lattice.wings.size(), 0.0);
  for (const auto& s : strips) {
    if (s.circulation == 0.0) continue;
    double vy = 0.0;
    double vz = 0.0;
    for (const auto& f : filaments) {
      if (f.strength == 0.0) continue;
      const double rc = core_radius(lattice, f.wing, s.wing, options);
      const double dy = s.y - f.y;
      const double dz = s.z - f.z;
      const double denom = dy * dy + dz * dz + rc * rc;
      if (denom <= 1e-300) continue;
      const double k = f.strength / (kTwoPi * denom);
      vy += -k * dz;
      vz += k * dy;
    }
    const double wash = vy * s.ny + vz * s.nz;
    out.per_wing[s.wing] += -0.5 * cond.density * s.circulation * wash * s.length;
  }
  for (double d : out.per_wing) out.total += d;
  return out;
}

FormationSolution solve_formation(const FormationLayout& layout, const FlightCondition& cond,
                                  const SolverOptions& options) {
  cond.validate();
  FormationSolution sol;
  sol.lattice = assemble_formation(layout, cond.alpha_deg);
  const LinearSystem system = assemble_system(sol.lattice, cond, options);
  sol.circulation = solve_circulations(system);
  sol.aero = near_field_forces(sol.circulation, sol.lattice, cond, options);
  const TrefftzDrag far = trefftz_induced_drag(sol.circulation, sol.lattice, cond, options);
  for (std::size_t w = 0; w < sol.aero.wings.size(); ++w) sol.aero.wings[w].trefftz_drag = far.per_wing[w];
  sol.aero.trefftz_drag = far.total;
  return sol;
}

}  // namespace vform

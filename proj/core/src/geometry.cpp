#include "vformation/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "vformation/errors.hpp"

namespace vform {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

std::string field_name(std::string_view owner, std::string_view field) {
  if (owner.empty()) return std::string(field);
  return std::string(owner) + "." + std::string(field);
}

template <typename T>
std::string str(T value) {
  std::ostringstream os;
  os << value;
  return os.str();
}

struct Box {
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
  Vec3 hi = Vec3::Constant(-std::numeric_limits<double>::infinity());
  void extend(const Vec3& p) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
};

// Positive planform overlap and touching (or overlapping) heights.
bool boxes_intersect(const Box& a, const Box& b) {
  constexpr double eps = 1e-9;
  for (int axis = 0; axis < 2; ++axis) {
    if (std::min(a.hi[axis], b.hi[axis]) - std::max(a.lo[axis], b.lo[axis]) <= eps) return false;
  }
  return std::min(a.hi[2], b.hi[2]) - std::max(a.lo[2], b.lo[2]) >= -eps;
}

}  // namespace

double camber_slope(double x_over_c, const Camber& camber) {
  if (!(x_over_c >= 0.0 && x_over_c <= 1.0)) {
    throw DomainError("camber_slope: x/c = " + str(x_over_c) + " outside [0, 1]");
  }
  const double m = camber.max_camber;
  const double p = camber.position;
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("camber_slope: camber position p = " + str(p) + " outside (0, 1)");
  }
  if (x_over_c < p) return 2.0 * m / (p * p) * (p - x_over_c);
  return 2.0 * m / ((1.0 - p) * (1.0 - p)) * (p - x_over_c);
}

void WingSpec::validate(std::string_view owner) const {
  auto fail = [&](std::string_view field, const std::string& msg) {
    throw ValidationError(field_name(owner, field), msg);
  };
  if (!(span > 0.0) || !std::isfinite(span)) fail("span", "must be > 0, got " + str(span));
  if (!(root_chord > 0.0) || !std::isfinite(root_chord)) {
    fail("root_chord", "must be > 0, got " + str(root_chord));
  }
  if (!(taper_ratio >= 0.0 && taper_ratio <= 1.0)) {
    fail("taper", "must lie in [0, 1], got " + str(taper_ratio));
  }
  if (!(std::abs(sweep_deg) < 80.0)) fail("sweep", "must satisfy |sweep| < 80 deg, got " + str(sweep_deg));
  if (!(std::abs(dihedral_deg) < 90.0)) {
    fail("dihedral", "must satisfy |dihedral| < 90 deg, got " + str(dihedral_deg));
  }
  if (!(std::abs(incidence_deg) < 45.0)) {
    fail("incidence", "must satisfy |incidence| < 45 deg, got " + str(incidence_deg));
  }
  if (!(camber.position > 0.0 && camber.position < 1.0)) {
    fail("camber_p", "must lie in (0, 1), got " + str(camber.position));
  }
  if (!(camber.max_camber >= 0.0 && camber.max_camber < 0.2)) {
    fail("camber_m", "must lie in [0, 0.2), got " + str(camber.max_camber));
  }
  if (n_span < 4 || n_span % 2 != 0) fail("n_span", "must be even and >= 4, got " + str(n_span));
  if (n_chord < 1) fail("n_chord", "must be >= 1, got " + str(n_chord));
}

WingSpec reference_wing() { return WingSpec{}; }

WingSurface::WingSurface(const WingSpec& spec, double pitch_deg) : spec_(spec), pitch_deg_(pitch_deg) {
  spec_.validate();
  const int ns = spec_.n_span;
  const int nc = spec_.n_chord;
  const double half = 0.5 * spec_.span;
  const double tan_sweep = std::tan(spec_.sweep_deg * kDegToRad);

  station_y_.resize(ns + 1);
  station_chord_.resize(ns + 1);
  station_le_x_.resize(ns + 1);
  for (int k = 0; k <= ns; ++k) {
    // Exact zero at the root and exact ±b/2 at the tips.
    const double y = k == ns / 2 ? 0.0 : -half + spec_.span * static_cast<double>(k) / ns;
    const double eta = std::abs(y) / half;
    const double chord = spec_.root_chord * (1.0 - (1.0 - spec_.taper_ratio) * eta);
    station_y_[k] = y;
    station_chord_[k] = chord;
    station_le_x_[k] = std::abs(y) * tan_sweep - 0.25 * chord;
  }

  nodes_.resize(static_cast<std::size_t>(nc + 1) * (ns + 1));
  for (int i = 0; i <= nc; ++i) {
    for (int k = 0; k <= ns; ++k) nodes_[index(i, k)] = station_point(i, k);
  }
}

Vec3 WingSurface::flat_point(double chord_index, int k) const {
  const double frac = chord_index / spec_.n_chord;
  return {station_le_x_[k] + station_chord_[k] * frac, station_y_[k], 0.0};
}

Vec3 WingSurface::map_direction(const Vec3& d, double side_y) const {
  const double gamma = (side_y > 0.0 ? 1.0 : (side_y < 0.0 ? -1.0 : 0.0)) * spec_.dihedral_deg * kDegToRad;
  const double cg = std::cos(gamma);
  const double sg = std::sin(gamma);
  const Vec3 d1{d.x(), d.y() * cg - d.z() * sg, d.y() * sg + d.z() * cg};
  const double theta = (spec_.incidence_deg + pitch_deg_) * kDegToRad;
  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  return {d1.x() * ct + d1.z() * st, d1.y(), -d1.x() * st + d1.z() * ct};
}

Vec3 WingSurface::map_flat(const Vec3& flat) const { return map_direction(flat, flat.y()); }

Vec3 WingSurface::station_point(double chord_index, int k) const {
  return map_flat(flat_point(chord_index, k));
}

Vec3 WingSurface::strip_point(double x_over_c, int k) const {
  const double ci = x_over_c * spec_.n_chord;
  const Vec3 flat = 0.5 * (flat_point(ci, k) + flat_point(ci, k + 1));
  return map_flat(flat);
}

Vec3 WingSurface::panel_normal(int i, int k) const {
  const double x_cp = (i + 0.75) / spec_.n_chord;
  const double slope = camber_slope(x_cp, spec_.camber);
  const double side_y = 0.5 * (station_y_[k] + station_y_[k + 1]);
  return map_direction(Vec3(-slope, 0.0, 1.0), side_y).normalized();
}

double WingSurface::area() const {
  double total = 0.0;
  for (int k = 0; k < spec_.n_span; ++k) total += strip_width(k) * strip_chord(k);
  return total;
}

double WingSurface::leading_edge_min_x() const {
  return *std::min_element(station_le_x_.begin(), station_le_x_.end());
}

double WingSurface::trailing_edge_max_x() const {
  double best = -std::numeric_limits<double>::infinity();
  for (int k = 0; k <= spec_.n_span; ++k) best = std::max(best, station_le_x_[k] + station_chord_[k]);
  return best;
}

WingSurface build_wing(const WingSpec& spec, double pitch_deg) { return WingSurface(spec, pitch_deg); }

std::string_view to_string(Side side) {
  switch (side) {
    case Side::Center: return "center";
    case Side::Left: return "left";
    case Side::Right: return "right";
  }
  return "?";
}

std::string_view to_string(Role role) { return role == Role::Leader ? "leader" : "trailing"; }

const FormationMember* FormationLayout::find(std::string_view id) const {
  for (const auto& m : members) {
    if (m.id == id) return &m;
  }
  return nullptr;
}

FormationMember* FormationLayout::find(std::string_view id) {
  for (auto& m : members) {
    if (m.id == id) return &m;
  }
  return nullptr;
}

const FormationMember& FormationLayout::leader() const {
  for (const auto& m : members) {
    if (m.role() == Role::Leader) return m;
  }
  throw ValidationError("layout", "no leader wing");
}

FormationMember& FormationLayout::leader() {
  return const_cast<FormationMember&>(static_cast<const FormationLayout&>(*this).leader());
}

void FormationLayout::validate() const {
  if (members.empty()) throw ValidationError("layout", "formation has no wings");
  std::set<std::string, std::less<>> seen;
  int leaders = 0;
  for (const auto& m : members) {
    if (m.id.empty()) throw ValidationError("layout", "wing with empty id");
    if (m.id.find_first_of(" \t.=,") != std::string::npos) {
      throw ValidationError(m.id, "wing id must not contain whitespace, '.', '=' or ','");
    }
    if (!seen.insert(m.id).second) throw ValidationError(m.id, "duplicate wing id");
    m.wing.validate(m.id);
    if (m.role() == Role::Leader) {
      ++leaders;
      continue;
    }
    if (!seen.contains(m.reference) || m.reference == m.id) {
      throw ValidationError(m.id + ".reference",
                            "'" + m.reference + "' must name a wing listed earlier");
    }
    if (m.side == Side::Center) {
      throw ValidationError(m.id + ".side", "trailing wings must be placed left or right");
    }
    for (double v : {m.offset.streamwise, m.offset.spanwise, m.offset.vertical}) {
      if (!std::isfinite(v)) throw ValidationError(m.id + ".offset", "non-finite offset");
    }
  }
  if (leaders != 1) {
    throw ValidationError("layout", "exactly one leader required, found " + str(leaders));
  }

  // A layout with trailing wings on both sides is a V: every left wing needs a
  // mirror-image right wing.
  std::vector<const FormationMember*> left;
  std::vector<const FormationMember*> right;
  for (const auto& m : members) {
    if (m.side == Side::Left) left.push_back(&m);
    if (m.side == Side::Right) right.push_back(&m);
  }
  if (!left.empty() && !right.empty()) {
    if (left.size() != right.size()) {
      throw ValidationError("layout", "V formation is not symmetric: " + str(left.size()) + " left vs " +
                                          str(right.size()) + " right wings");
    }
    auto mirror_of = [&](const std::string& id) -> std::string {
      for (std::size_t i = 0; i < left.size(); ++i) {
        if (left[i]->id == id) return right[i]->id;
      }
      return id;
    };
    for (std::size_t i = 0; i < left.size(); ++i) {
      const auto& l = *left[i];
      const auto& r = *right[i];
      if (!(l.wing == r.wing) || !(l.offset == r.offset) || mirror_of(l.reference) != r.reference) {
        throw ValidationError(r.id, "V formation is not symmetric: does not mirror '" + l.id + "'");
      }
    }
  }
}

FormationLayout baseline_v_layout() {
  FormationLayout layout;
  const Offset table2{0.16, 0.0, 0.0};
  layout.members.push_back({"leader", reference_wing(), Side::Center, "", {}});
  layout.members.push_back({"left", reference_wing(), Side::Left, "leader", table2});
  layout.members.push_back({"right", reference_wing(), Side::Right, "leader", table2});
  return layout;
}

FormationLayout solo_layout(const WingSpec& spec, std::string id) {
  FormationLayout layout;
  layout.members.push_back({std::move(id), spec, Side::Center, "", {}});
  return layout;
}

namespace {

struct Placement {
  Vec3 origin;
  double le_min_x;
  double te_max_x;
  double half_span;
};

std::vector<Placement> place_members(const FormationLayout& layout, const std::vector<WingSurface>& surfaces) {
  std::vector<Placement> placed(layout.members.size());
  for (std::size_t w = 0; w < layout.members.size(); ++w) {
    const auto& m = layout.members[w];
    Placement p{Vec3::Zero(), surfaces[w].leading_edge_min_x(), surfaces[w].trailing_edge_max_x(),
                0.5 * m.wing.span};
    if (m.role() == Role::Trailing) {
      std::size_t r = 0;
      while (layout.members[r].id != m.reference) ++r;
      const Placement& ref = placed[r];
      const double x = ref.origin.x() + ref.te_max_x + m.offset.streamwise - p.le_min_x;
      const double lateral = ref.half_span + m.offset.spanwise + p.half_span;
      const double y = ref.origin.y() + (m.side == Side::Right ? lateral : -lateral);
      const double z = ref.origin.z() + m.offset.vertical;
      p.origin = Vec3(x, y, z);
    }
    placed[w] = p;
  }
  return placed;
}

}  // namespace

std::vector<Vec3> member_origins(const FormationLayout& layout) {
  layout.validate();
  std::vector<WingSurface> surfaces;
  for (const auto& m : layout.members) surfaces.emplace_back(m.wing, 0.0);
  std::vector<Vec3> out;
  for (const auto& p : place_members(layout, surfaces)) out.push_back(p.origin);
  return out;
}

int Lattice::wing_index(std::string_view id) const {
  for (std::size_t w = 0; w < wings.size(); ++w) {
    if (wings[w].id == id) return static_cast<int>(w);
  }
  return -1;
}

Lattice assemble_formation(const FormationLayout& layout, double alpha_deg) {
  layout.validate();
  std::vector<WingSurface> surfaces;
  surfaces.reserve(layout.members.size());
  for (const auto& m : layout.members) surfaces.emplace_back(m.wing, alpha_deg);
  const auto placed = place_members(layout, surfaces);

  Lattice lattice;
  lattice.alpha_deg = alpha_deg;
  lattice.wake_direction = Vec3::UnitX();
  std::vector<Box> boxes(layout.members.size());

  for (std::size_t w = 0; w < layout.members.size(); ++w) {
    const auto& m = layout.members[w];
    const auto& surf = surfaces[w];
    const Vec3& origin = placed[w].origin;
    const int ns = m.wing.n_span;
    const int nc = m.wing.n_chord;

    LatticeWing lw;
    lw.id = m.id;
    lw.role = m.role();
    lw.spec = m.wing;
    lw.origin = origin;
    lw.first_panel = lattice.panels.size();
    lw.panel_count = static_cast<std::size_t>(ns) * nc;
    lw.area = m.wing.planform_area();
    lw.mean_chord = m.wing.mean_chord();

    for (int k = 0; k <= ns; ++k) {
      lw.trailing_edge.push_back(origin + surf.node(nc, k));
      for (int i = 0; i <= nc; ++i) boxes[w].extend(origin + surf.node(i, k));
    }
    for (int k = 0; k < ns; ++k) {
      lw.quarter_chord_points.push_back(origin + surf.strip_point(0.25, k));
      lw.three_quarter_chord_points.push_back(origin + surf.strip_point(0.75, k));
      lw.strip_chord.push_back(surf.strip_chord(k));
      lw.strip_width.push_back(surf.strip_width(k));
      for (int i = 0; i < nc; ++i) {
        Panel p;
        p.corners = {origin + surf.node(i, k), origin + surf.node(i, k + 1), origin + surf.node(i + 1, k + 1),
                     origin + surf.node(i + 1, k)};
        p.control_point = origin + 0.5 * (surf.station_point(i + 0.75, k) + surf.station_point(i + 0.75, k + 1));
        p.normal = surf.panel_normal(i, k);
        p.bound_start = origin + surf.station_point(i + 0.25, k);
        p.bound_end = origin + surf.station_point(i + 0.25, k + 1);
        p.trail_start = lw.trailing_edge[k];
        p.trail_end = lw.trailing_edge[k + 1];
        p.wing = static_cast<int>(w);
        p.chord_index = i;
        p.span_index = k;
        lattice.panels.push_back(p);
      }
    }
    lattice.wings.push_back(std::move(lw));
  }

  for (std::size_t a = 0; a < boxes.size(); ++a) {
    for (std::size_t b = a + 1; b < boxes.size(); ++b) {
      if (boxes_intersect(boxes[a], boxes[b])) {
        throw ValidationError(layout.members[b].id,
                              "wing surface intersects '" + layout.members[a].id + "'");
      }
    }
  }

  std::ostringstream label;
  for (std::size_t w = 0; w < layout.members.size(); ++w) label << (w ? "+" : "") << layout.members[w].id;
  lattice.label = label.str();
  return lattice;
}

}  // namespace vform

#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace vform {

using Vec3 = Eigen::Vector3d;

/// Four-digit mean camber line: `max_camber` is m (fraction of chord),
/// `position` is p (fraction of chord where the camber peaks).
struct Camber {
  double max_camber = 0.09;
  double position = 0.4;

  friend bool operator==(const Camber&, const Camber&) = default;
};

/// Slope dz/dx of the four-digit mean camber line at `x_over_c`.
/// Throws DomainError when `x_over_c` is outside [0, 1] or p is outside (0, 1).
double camber_slope(double x_over_c, const Camber& camber);

/// Planform and attitude of one lifting surface.
///
/// Lengths in metres, angles in degrees. Sweep is measured on the
/// quarter-chord line; incidence is a nose-up pitch about the root
/// quarter-chord; dihedral rotates each half-wing about the root chord.
struct WingSpec {
  double span = 1.6;
  double root_chord = 0.16;
  double taper_ratio = 1.0;
  double sweep_deg = 0.0;
  double dihedral_deg = 0.0;
  double incidence_deg = 0.0;
  Camber camber{};
  int n_span = 32;
  int n_chord = 8;

  double tip_chord() const { return taper_ratio * root_chord; }
  double planform_area() const { return 0.5 * span * root_chord * (1.0 + taper_ratio); }
  double aspect_ratio() const { return span * span / planform_area(); }
  /// Geometric mean chord S / b.
  double mean_chord() const { return planform_area() / span; }

  /// Throws ValidationError naming the first violated field, prefixed by
  /// `owner` when given.
  void validate(std::string_view owner = {}) const;

  friend bool operator==(const WingSpec&, const WingSpec&) = default;
};

/// The trailing-wing definition used throughout the study: NACA 9405 camber,
/// 1.6 m span, 0.16 m chord, rectangular, unswept.
WingSpec reference_wing();

/// A wing discretized in its own frame (root quarter-chord at the origin,
/// x aft, y starboard, z up), with dihedral and pitch already applied.
class WingSurface {
 public:
  WingSurface(const WingSpec& spec, double pitch_deg);

  const WingSpec& spec() const { return spec_; }
  double pitch_deg() const { return pitch_deg_; }

  /// Lattice node at chordwise index `i` in [0, n_chord] and spanwise index
  /// `k` in [0, n_span].
  const Vec3& node(int i, int k) const { return nodes_[index(i, k)]; }

  /// Point on the surface at a fractional chordwise index (0 = leading edge,
  /// n_chord = trailing edge) on spanwise station `k`.
  Vec3 station_point(double chord_index, int k) const;

  /// Midpoint of strip `k` at chord fraction `x_over_c`.
  Vec3 strip_point(double x_over_c, int k) const;

  /// Unit normal of panel (i, k), tilted by the local camber slope.
  Vec3 panel_normal(int i, int k) const;

  /// Flat (pre-rotation) spanwise coordinate of station k.
  double station_y(int k) const { return station_y_[k]; }
  double station_chord(int k) const { return station_chord_[k]; }
  double station_le_x(int k) const { return station_le_x_[k]; }

  double strip_width(int k) const { return station_y_[k + 1] - station_y_[k]; }
  double strip_chord(int k) const { return 0.5 * (station_chord_[k] + station_chord_[k + 1]); }

  /// Planform area integrated from the discretized stations.
  double area() const;
  /// Foremost leading-edge and aftmost trailing-edge x of the flat planform.
  double leading_edge_min_x() const;
  double trailing_edge_max_x() const;

  /// Maps a point of the flat planform into the wing frame.
  Vec3 map_flat(const Vec3& flat) const;
  /// Maps a direction attached to the flat half-wing on side `sign(y)`.
  Vec3 map_direction(const Vec3& direction, double side_y) const;

 private:
  std::size_t index(int i, int k) const {
    return static_cast<std::size_t>(i) * (spec_.n_span + 1) + k;
  }
  Vec3 flat_point(double chord_index, int k) const;

  WingSpec spec_;
  double pitch_deg_;
  std::vector<double> station_y_;
  std::vector<double> station_chord_;
  std::vector<double> station_le_x_;
  std::vector<Vec3> nodes_;
};

/// Builds the cambered, rotated surface of a wing. `pitch_deg` is an extra
/// nose-up rotation added to the incidence (the formation angle of attack).
WingSurface build_wing(const WingSpec& spec, double pitch_deg = 0.0);

enum class Side { Center, Left, Right };
enum class Role { Leader, Trailing };

std::string_view to_string(Side side);
std::string_view to_string(Role role);

/// Relative position of a wing with respect to its reference wing.
///
/// streamwise: trailing edge of the reference to leading edge of this wing.
/// spanwise: tip-to-tip gap (negative = overlap), measured on the flat
///           planforms before dihedral.
/// vertical: root quarter-chord to root quarter-chord.
struct Offset {
  double streamwise = 0.0;
  double spanwise = 0.0;
  double vertical = 0.0;

  friend bool operator==(const Offset&, const Offset&) = default;
};

struct FormationMember {
  std::string id;
  WingSpec wing;
  Side side = Side::Center;
  /// Id of the wing this one is positioned against; empty for the leader.
  std::string reference;
  Offset offset;

  Role role() const { return reference.empty() ? Role::Leader : Role::Trailing; }
};

/// Ordered formation. The leader is the single member without a reference;
/// every other member must reference a wing listed before it.
struct FormationLayout {
  std::vector<FormationMember> members;

  void validate() const;
  const FormationMember& leader() const;
  FormationMember& leader();
  const FormationMember* find(std::string_view id) const;
  FormationMember* find(std::string_view id);
};

/// Three reference wings in a symmetric V: leader plus left and right
/// trailing wings one chord aft, zero tip gap, zero vertical offset.
FormationLayout baseline_v_layout();

/// A formation containing only `spec`, at the origin.
FormationLayout solo_layout(const WingSpec& spec, std::string id = "solo");

struct Panel {
  /// Leading-inner, leading-outer, trailing-outer, trailing-inner corners,
  /// where "inner" is the lower flat spanwise index.
  std::array<Vec3, 4> corners;
  Vec3 control_point;
  Vec3 normal;
  /// Bound vortex on the panel quarter-chord line, from station k to k+1.
  Vec3 bound_start;
  Vec3 bound_end;
  /// Trailing-edge points where the trailing legs leave the wing.
  Vec3 trail_start;
  Vec3 trail_end;
  int wing = 0;
  int chord_index = 0;
  int span_index = 0;
};

struct LatticeWing {
  std::string id;
  Role role = Role::Leader;
  WingSpec spec;
  /// Placed root quarter-chord (moment reference).
  Vec3 origin = Vec3::Zero();
  std::size_t first_panel = 0;
  std::size_t panel_count = 0;
  double area = 0.0;
  double mean_chord = 0.0;
  /// Trailing-edge nodes, one per spanwise station.
  std::vector<Vec3> trailing_edge;
  /// Per-strip sample points on the quarter- and three-quarter-chord lines.
  std::vector<Vec3> quarter_chord_points;
  std::vector<Vec3> three_quarter_chord_points;
  std::vector<double> strip_chord;
  std::vector<double> strip_width;

  /// Panel index of (chordwise i, spanwise k) within the whole lattice.
  std::size_t panel_index(int i, int k) const {
    return first_panel + static_cast<std::size_t>(k) * spec.n_chord + i;
  }
};

/// Panelized formation. Panels of one wing are contiguous and ordered
/// strip by strip (spanwise index major, chordwise minor).
struct Lattice {
  std::vector<Panel> panels;
  std::vector<LatticeWing> wings;
  Vec3 wake_direction = Vec3::UnitX();
  /// Formation angle of attack the geometry was pitched by.
  double alpha_deg = 0.0;
  std::string label;

  std::size_t size() const { return panels.size(); }
  int wing_index(std::string_view id) const;
};

/// Places every wing of `layout` in the wind frame (x along the freestream,
/// z up) and panelizes it. Each wing is pitched by `alpha_deg` plus its own
/// incidence about its root quarter-chord; offsets are measured on the flat
/// planforms. Throws ValidationError on invalid layouts or intersecting wings.
Lattice assemble_formation(const FormationLayout& layout, double alpha_deg = 0.0);

/// Root quarter-chord positions of each member, in layout order.
std::vector<Vec3> member_origins(const FormationLayout& layout);

}  // namespace vform

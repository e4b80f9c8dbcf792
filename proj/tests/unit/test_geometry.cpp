#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <tuple>

#include "support.hpp"
#include "vformation/errors.hpp"
#include "vformation/geometry.hpp"

using namespace vform;
using testing_support::coarse_v_layout;

namespace {

// Mean camber line z/c of a four-digit section.
double camber_height(double x, double m, double p) {
  if (x < p) return m / (p * p) * (2 * p * x - x * x);
  return m / ((1 - p) * (1 - p)) * ((1 - 2 * p) + 2 * p * x - x * x);
}

Vec3 reflect(const Vec3& v) { return {v.x(), -v.y(), v.z()}; }

const LatticeWing& wing_named(const Lattice& l, const std::string& id) { return l.wings[l.wing_index(id)]; }

}  // namespace

TEST(CamberSlope, VanishesAtMaximumCamber) { EXPECT_EQ(camber_slope(0.4, {0.09, 0.4}), 0.0); }

TEST(CamberSlope, DescendsAtTrailingEdge) {
  for (double m : {0.02, 0.09}) {
    for (double p : {0.2, 0.4, 0.7}) EXPECT_LT(camber_slope(1.0, {m, p}), 0.0);
  }
}

TEST(CamberSlope, LeadingEdgeValue) { EXPECT_NEAR(camber_slope(0.0, {0.09, 0.4}), 0.45, 1e-15); }

TEST(CamberSlope, MatchesFiniteDifferenceOfCamberLine) {
  const double h = 1e-6;
  for (double x = 0.01; x < 0.99; x += 0.0137) {
    const double fd = (camber_height(x + h, 0.09, 0.4) - camber_height(x - h, 0.09, 0.4)) / (2 * h);
    EXPECT_NEAR(camber_slope(x, {0.09, 0.4}), fd, 1e-7) << "x = " << x;
  }
}

TEST(CamberSlope, ContinuousAtPeak) {
  const double eps = 1e-12;
  EXPECT_NEAR(camber_slope(0.4 - eps, {0.09, 0.4}), camber_slope(0.4 + eps, {0.09, 0.4}), 1e-9);
}

TEST(CamberSlope, DomainErrors) {
  EXPECT_THROW(camber_slope(-0.01, {0.09, 0.4}), DomainError);
  EXPECT_THROW(camber_slope(1.01, {0.09, 0.4}), DomainError);
  EXPECT_THROW(camber_slope(0.5, {0.09, 0.0}), DomainError);
  EXPECT_THROW(camber_slope(0.5, {0.09, 1.0}), DomainError);
}

TEST(WingSpec, ReferenceWingAreaAndAspectRatio) {
  const WingSpec w = reference_wing();
  EXPECT_DOUBLE_EQ(w.planform_area(), 0.256);
  EXPECT_DOUBLE_EQ(w.aspect_ratio(), 10.0);
  EXPECT_EQ(w.camber.max_camber, 0.09);
  EXPECT_EQ(w.camber.position, 0.4);
}

TEST(WingSpec, ValidationNamesField) {
  auto field_of = [](WingSpec w) {
    try {
      w.validate("leader");
    } catch (const ValidationError& e) {
      return e.field();
    }
    return std::string("none");
  };
  WingSpec w;
  w.taper_ratio = 1.5;
  EXPECT_EQ(field_of(w), "leader.taper");
  w = WingSpec{};
  w.span = 0.0;
  EXPECT_EQ(field_of(w), "leader.span");
  w = WingSpec{};
  w.root_chord = -1.0;
  EXPECT_EQ(field_of(w), "leader.root_chord");
  w = WingSpec{};
  w.n_span = 7;
  EXPECT_EQ(field_of(w), "leader.n_span");
  w.n_span = 2;
  EXPECT_EQ(field_of(w), "leader.n_span");
  w = WingSpec{};
  w.n_chord = 0;
  EXPECT_EQ(field_of(w), "leader.n_chord");
  EXPECT_EQ(field_of(WingSpec{}), "none");
}

TEST(BuildWing, RectangularArea) {
  const auto s = build_wing(reference_wing());
  EXPECT_NEAR(s.area(), 0.256, 0.256 * 1e-9);
  EXPECT_DOUBLE_EQ(s.leading_edge_min_x(), -0.04);
  EXPECT_DOUBLE_EQ(s.trailing_edge_max_x(), 0.12);
}

TEST(BuildWing, AreaMatchesFormulaForAnyTaper) {
  for (double taper : {0.0, 0.3, 0.5, 0.77, 1.0}) {
    WingSpec w;
    w.taper_ratio = taper;
    w.sweep_deg = 10.0;
    const double expected = w.span * w.root_chord * (1 + taper) / 2;
    EXPECT_NEAR(build_wing(w).area(), expected, expected * 1e-9) << taper;
    EXPECT_NEAR(w.planform_area(), expected, expected * 1e-12);
  }
}

TEST(BuildWing, PointedTipHalvesArea) {
  WingSpec w;
  w.taper_ratio = 0.0;
  const auto s = build_wing(w);
  EXPECT_NEAR(s.area(), 0.5 * 0.256, 1e-12);
  EXPECT_EQ(s.station_chord(0), 0.0);
  EXPECT_EQ(s.station_chord(w.n_span), 0.0);
}

TEST(BuildWing, DihedralRaisesTips) {
  WingSpec w;
  w.dihedral_deg = 45.0;
  const auto s = build_wing(w);
  const double z = 0.8 * std::sin(std::numbers::pi / 4);
  for (int i = 0; i <= w.n_chord; ++i) {
    EXPECT_NEAR(s.node(i, 0).z(), z, 1e-12);
    EXPECT_NEAR(s.node(i, w.n_span).z(), z, 1e-12);
    EXPECT_NEAR(s.node(i, w.n_span).y(), 0.8 * std::cos(std::numbers::pi / 4), 1e-12);
  }
  EXPECT_EQ(s.node(0, w.n_span / 2).z(), 0.0);
}

TEST(BuildWing, IncidencePivotsAboutQuarterChord) {
  WingSpec w;
  w.incidence_deg = 5.0;
  const auto s = build_wing(w);
  const double t = 5.0 * std::numbers::pi / 180.0;
  const int root = w.n_span / 2;
  // Quarter chord stays put, trailing edge drops, leading edge rises.
  const Vec3 qc = s.station_point(0.25 * w.n_chord, root);
  EXPECT_NEAR(qc.norm(), 0.0, 1e-15);
  const Vec3 te = s.node(w.n_chord, root);
  EXPECT_NEAR(te.x(), 0.12 * std::cos(t), 1e-15);
  EXPECT_NEAR(te.z(), -0.12 * std::sin(t), 1e-15);
  const Vec3 le = s.node(0, root);
  EXPECT_NEAR(le.z(), 0.04 * std::sin(t), 1e-15);
}

TEST(BuildWing, TaperVariesChordLinearly) {
  WingSpec w;
  w.taper_ratio = 0.5;
  const auto s = build_wing(w);
  for (int k = 0; k <= w.n_span; ++k) {
    const double eta = std::abs(s.station_y(k)) / 0.8;
    EXPECT_NEAR(s.station_chord(k), 0.16 * (1 - 0.5 * eta), 1e-15);
  }
}

TEST(BuildWing, NormalsAreUnitAndTiltedByCamber) {
  const auto s = build_wing(reference_wing());
  for (int k = 0; k < 32; ++k) {
    for (int i = 0; i < 8; ++i) {
      const Vec3 n = s.panel_normal(i, k);
      EXPECT_NEAR(n.norm(), 1.0, 1e-12);
      const double slope = camber_slope((i + 0.75) / 8.0, {0.09, 0.4});
      EXPECT_NEAR(-n.x() / n.z(), slope, 1e-12);
    }
  }
}

TEST(AssembleFormation, BaselineCountsAndPlacement) {
  const Lattice l = assemble_formation(baseline_v_layout());
  ASSERT_EQ(l.wings.size(), 3u);
  EXPECT_EQ(l.size(), 3u * 32 * 8);
  EXPECT_EQ(l.label, "leader+left+right");
  EXPECT_EQ(l.wake_direction, Vec3::UnitX());

  const auto& lead = wing_named(l, "leader");
  const auto& left = wing_named(l, "left");
  const auto& right = wing_named(l, "right");
  EXPECT_EQ(lead.origin, Vec3::Zero());
  // Trailing edge of the leader to leading edge of the follower.
  EXPECT_NEAR(left.origin.x() - 0.04 - 0.12, 0.16, 1e-15);
  // Tips touch: tip-to-tip gap zero.
  EXPECT_NEAR(left.origin.y() + 0.8, -0.8, 1e-15);
  EXPECT_NEAR(right.origin.y() - 0.8, 0.8, 1e-15);
  EXPECT_EQ(left.origin.z(), 0.0);
}

TEST(AssembleFormation, OffsetsFollowDefinitions) {
  auto layout = baseline_v_layout();
  for (auto& m : layout.members) {
    if (m.role() == Role::Trailing) m.offset = {0.3, -0.1, 0.05};
  }
  const Lattice l = assemble_formation(layout);
  double lead_te = -1e9;
  double lead_tip = -1e9;
  for (std::size_t j = 0; j < l.wings[0].panel_count; ++j) {
    for (const auto& c : l.panels[j].corners) {
      lead_te = std::max(lead_te, c.x());
      lead_tip = std::max(lead_tip, c.y());
    }
  }
  const auto& right = wing_named(l, "right");
  double le = 1e9;
  double inner_tip = 1e9;
  for (std::size_t j = right.first_panel; j < right.first_panel + right.panel_count; ++j) {
    for (const auto& c : l.panels[j].corners) {
      le = std::min(le, c.x());
      inner_tip = std::min(inner_tip, c.y());
    }
  }
  EXPECT_NEAR(le - lead_te, 0.3, 1e-14);
  EXPECT_NEAR(inner_tip - lead_tip, -0.1, 1e-14);
  EXPECT_NEAR(right.origin.z(), 0.05, 1e-15);
}

TEST(AssembleFormation, PanelInvariants) {
  auto layout = baseline_v_layout();
  layout.members[0].wing.taper_ratio = 0.4;
  layout.members[0].wing.dihedral_deg = 20.0;
  layout.members[0].wing.sweep_deg = 15.0;
  const Lattice l = assemble_formation(layout, 4.0);
  for (const auto& p : l.panels) {
    EXPECT_NEAR(p.normal.norm(), 1.0, 1e-12);
    // Bound vortex on the quarter-chord of the panel, control point on the
    // three-quarter chord, both measured along each panel edge.
    const Vec3 b0 = p.corners[0] + 0.25 * (p.corners[3] - p.corners[0]);
    const Vec3 b1 = p.corners[1] + 0.25 * (p.corners[2] - p.corners[1]);
    EXPECT_LT((p.bound_start - b0).norm(), 1e-12);
    EXPECT_LT((p.bound_end - b1).norm(), 1e-12);
    const Vec3 cp = 0.5 * ((p.corners[0] + 0.75 * (p.corners[3] - p.corners[0])) +
                           (p.corners[1] + 0.75 * (p.corners[2] - p.corners[1])));
    EXPECT_LT((p.control_point - cp).norm(), 1e-12);
  }
  // Watertight: neighbours share edges exactly.
  for (const auto& w : l.wings) {
    for (int k = 0; k < w.spec.n_span; ++k) {
      for (int i = 0; i < w.spec.n_chord; ++i) {
        const Panel& p = l.panels[w.panel_index(i, k)];
        if (i + 1 < w.spec.n_chord) {
          const Panel& aft = l.panels[w.panel_index(i + 1, k)];
          EXPECT_EQ(p.corners[3], aft.corners[0]);
          EXPECT_EQ(p.corners[2], aft.corners[1]);
        }
        if (k + 1 < w.spec.n_span) {
          const Panel& side = l.panels[w.panel_index(i, k + 1)];
          EXPECT_EQ(p.corners[1], side.corners[0]);
          EXPECT_EQ(p.corners[2], side.corners[3]);
        }
      }
    }
  }
}

TEST(AssembleFormation, SingleWingMatchesBuildWing) {
  WingSpec w;
  w.incidence_deg = 3.0;
  w.dihedral_deg = 10.0;
  const Lattice l = assemble_formation(solo_layout(w), 2.0);
  const auto s = build_wing(w, 2.0);
  ASSERT_EQ(l.size(), static_cast<std::size_t>(w.n_span * w.n_chord));
  for (int k = 0; k < w.n_span; ++k) {
    for (int i = 0; i < w.n_chord; ++i) {
      const Panel& p = l.panels[l.wings[0].panel_index(i, k)];
      EXPECT_EQ(p.corners[0], s.node(i, k));
      EXPECT_EQ(p.corners[2], s.node(i + 1, k + 1));
      EXPECT_EQ(p.normal, s.panel_normal(i, k));
    }
  }
}

TEST(AssembleFormation, SymmetricLayoutIsMirrorSymmetric) {
  auto layout = baseline_v_layout();
  layout.members[0].wing.dihedral_deg = 20.0;
  layout.members[0].wing.taper_ratio = 0.3;
  const Lattice l = assemble_formation(layout, 4.0);
  const auto& left = wing_named(l, "left");
  const auto& right = wing_named(l, "right");
  const auto& lead = wing_named(l, "leader");
  const int ns = 32;
  for (int k = 0; k < ns; ++k) {
    for (int i = 0; i < 8; ++i) {
      const Panel& a = l.panels[left.panel_index(i, k)];
      const Panel& b = l.panels[right.panel_index(i, ns - 1 - k)];
      const Panel& c = l.panels[lead.panel_index(i, k)];
      const Panel& d = l.panels[lead.panel_index(i, ns - 1 - k)];
      // Reflection swaps inner and outer corners.
      for (auto [x, y] : {std::pair{0, 1}, {1, 0}, {2, 3}, {3, 2}}) {
        EXPECT_LT((reflect(a.corners[x]) - b.corners[y]).norm(), 1e-12);
        EXPECT_LT((reflect(c.corners[x]) - d.corners[y]).norm(), 1e-12);
      }
      EXPECT_LT((reflect(a.control_point) - b.control_point).norm(), 1e-12);
      EXPECT_LT((reflect(a.normal) - b.normal).norm(), 1e-12);
    }
  }
}

TEST(AssembleFormation, SwappedSidesReflectBaseline) {
  const auto base = baseline_v_layout();
  auto swapped = base;
  swapped.members[1].side = Side::Right;
  swapped.members[2].side = Side::Left;
  const Lattice a = assemble_formation(base, 4.0);
  const Lattice b = assemble_formation(swapped, 4.0);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    const auto& wa = a.wings[a.panels[j].wing];
    const int ns = wa.spec.n_span;
    const auto& pa = a.panels[j];
    const Panel& pb = b.panels[b.wings[pa.wing].panel_index(pa.chord_index, ns - 1 - pa.span_index)];
    EXPECT_LT((reflect(pa.corners[0]) - pb.corners[1]).norm(), 1e-12);
    EXPECT_LT((reflect(pa.corners[2]) - pb.corners[3]).norm(), 1e-12);
  }
}

TEST(AssembleFormation, RejectsIntersectionsAndBadLayouts) {
  auto layout = baseline_v_layout();
  for (auto& m : layout.members) {
    if (m.role() == Role::Trailing) m.offset = {-0.16, -0.4, 0.0};
  }
  EXPECT_THROW(assemble_formation(layout), ValidationError);

  auto dup = baseline_v_layout();
  dup.members[2].id = "left";
  EXPECT_THROW(assemble_formation(dup), ValidationError);

  auto two_leaders = baseline_v_layout();
  two_leaders.members[1].reference.clear();
  EXPECT_THROW(two_leaders.validate(), ValidationError);

  auto forward_ref = baseline_v_layout();
  forward_ref.members[1].reference = "right";
  EXPECT_THROW(forward_ref.validate(), ValidationError);

  auto lopsided = baseline_v_layout();
  lopsided.members[2].offset.spanwise = 0.1;
  EXPECT_THROW(lopsided.validate(), ValidationError);

  auto bad_id = baseline_v_layout();
  bad_id.members[1].id = "left.wing";
  EXPECT_THROW(bad_id.validate(), ValidationError);
}

TEST(AssembleFormation, OverlapAllowedWhenStaggered) {
  auto layout = coarse_v_layout();
  for (auto& m : layout.members) {
    if (m.role() == Role::Trailing) m.offset.spanwise = -0.3;
  }
  EXPECT_NO_THROW(assemble_formation(layout));
}

TEST(MemberOrigins, MatchesLattice) {
  const auto layout = baseline_v_layout();
  const auto origins = member_origins(layout);
  const Lattice l = assemble_formation(layout);
  for (std::size_t w = 0; w < origins.size(); ++w) EXPECT_EQ(origins[w], l.wings[w].origin);
}

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "vformation/errors.hpp"
#include "vformation/spacing.hpp"

using namespace vform;
using testing_support::coarse_v_layout;
using testing_support::rel_diff;

TEST(Hummel, ReferenceSpan) {
  EXPECT_EQ(hummel_optimal_wts(1.6), 0.5 * 1.6 * 0.11);
  EXPECT_NEAR(hummel_optimal_wts(1.6), 0.088, 1e-15);
  EXPECT_EQ(hummel_optimal_gap(1.6), -hummel_optimal_wts(1.6));
}

TEST(Hummel, ZeroAndLinearity) {
  EXPECT_EQ(hummel_optimal_wts(0.0), 0.0);
  EXPECT_EQ(hummel_optimal_wts(3.2), 2.0 * hummel_optimal_wts(1.6));
  EXPECT_THROW(hummel_optimal_wts(-1.0), DomainError);
  EXPECT_THROW(hummel_optimal_wts(NAN), DomainError);
}

TEST(GoldenSection, ShiftedParabola) {
  std::size_t calls = 0;
  const auto r = golden_section_minimize(
      [&](double x) {
        ++calls;
        return (x - 0.3) * (x - 0.3) + 2.0;
      },
      -1.0, 2.0, 1e-4);
  EXPECT_NEAR(r.x, 0.3, 1e-4);
  EXPECT_EQ(calls, r.evaluations);
  EXPECT_EQ(r.trace.size(), r.evaluations);
  EXPECT_LE(r.evaluations, golden_evaluation_bound(-1.0, 2.0, 1e-4));
}

TEST(GoldenSection, RandomUnimodalObjectives) {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 300; ++t) {
    const double lo = -5.0 + 4.0 * u(rng);
    const double hi = lo + 0.01 + 6.0 * u(rng);
    const double x0 = lo + (hi - lo) * u(rng);
    const double tol = std::pow(10.0, -1.0 - 6.0 * u(rng));
    const int shape = t % 3;
    auto f = [&](double x) {
      const double d = x - x0;
      if (shape == 0) return d * d;
      if (shape == 1) return std::abs(d);
      return std::cosh(d) + 0.1 * d * d * d * d;
    };
    const auto r = golden_section_minimize(f, lo, hi, tol);
    ASSERT_LE(std::abs(r.x - x0), tol) << "trial " << t;
    ASSERT_LE(r.evaluations, golden_evaluation_bound(lo, hi, tol)) << "trial " << t;
  }
}

TEST(GoldenSection, MinimumAtBracketEnd) {
  const auto r = golden_section_minimize([](double x) { return x; }, 0.0, 1.0, 1e-3);
  EXPECT_LE(r.x, 1e-3);
}

TEST(GoldenSection, DegenerateBracket) {
  auto r = golden_section_minimize([](double x) { return x * x; }, 0.4, 0.5, 0.1);
  EXPECT_EQ(r.evaluations, 2u);
  EXPECT_EQ(r.x, 0.4);
  r = golden_section_minimize([](double x) { return -x; }, 0.4, 0.5, 0.1);
  EXPECT_EQ(r.x, 0.5);
}

TEST(GoldenSection, InvalidInput) {
  auto f = [](double x) { return x; };
  EXPECT_THROW(golden_section_minimize(f, 1.0, 1.0, 0.1), ValidationError);
  EXPECT_THROW(golden_section_minimize(f, 2.0, 1.0, 0.1), ValidationError);
  EXPECT_THROW(golden_section_minimize(f, 0.0, 1.0, 0.0), ValidationError);
}

TEST(SpacingNames, RoundTrip) {
  for (auto a : {SpacingAxis::Wts, SpacingAxis::Vertical, SpacingAxis::Streamwise}) {
    EXPECT_EQ(parse_spacing_axis(to_string(a)), a);
  }
  EXPECT_EQ(parse_spacing_objective("trailing"), SpacingObjective::TrailingPower);
  EXPECT_EQ(parse_spacing_objective("total"), SpacingObjective::FormationTotal);
  EXPECT_THROW(parse_spacing_axis("lateral"), ConfigError);
  EXPECT_THROW(parse_spacing_objective("leader"), ConfigError);
}

TEST(OptimizeSpacing, WtsOptimumIsOverlapOnCoarseLattice) {
  SpacingStudy s;
  s.layout = coarse_v_layout(16, 4);
  s.lo = -0.4;
  s.hi = 0.8;
  s.tolerance = 0.01;
  s.scan_points = 9;
  s.jobs = 2;
  const auto r = optimize_spacing(s);
  EXPECT_FALSE(r.multimodal);
  EXPECT_LT(r.optimum, 0.0);
  EXPECT_GT(r.reduction, 0.0);
  EXPECT_GT(r.iterations, 0u);
  ASSERT_GE(r.trace.size(), 9u);
  for (int i = 0; i < 9; ++i) EXPECT_TRUE(r.trace[i].scan);
  EXPECT_EQ(r.trace.front().value, -0.4);
  EXPECT_EQ(r.trace[8].value, 0.8);
  for (std::size_t i = 9; i < r.trace.size(); ++i) EXPECT_FALSE(r.trace[i].scan);
  for (const auto& p : r.trace) EXPECT_LE(p.reduction, r.reduction + 1e-15);
}

TEST(OptimizeSpacing, TotalObjective) {
  SpacingStudy s;
  s.layout = coarse_v_layout(12, 3);
  s.objective = SpacingObjective::FormationTotal;
  s.scan_points = 5;
  s.tolerance = 0.05;
  const auto r = optimize_spacing(s);
  for (const auto& p : r.trace) EXPECT_EQ(p.reduction, p.total_drag_reduction);
}

TEST(OptimizeSpacing, ProbeFailureNamesValue) {
  SpacingStudy s;
  s.layout = coarse_v_layout(12, 3);
  for (auto& m : s.layout.members) {
    if (m.role() == Role::Trailing) m.offset.spanwise = -0.5;
  }
  s.axis = SpacingAxis::Streamwise;
  s.lo = -0.2;
  s.hi = 0.4;
  s.scan_points = 4;
  try {
    optimize_spacing(s);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("probe streamwise=-0.2"), std::string::npos) << e.what();
  }
}

TEST(OptimizeSpacing, StudyValidation) {
  SpacingStudy s;
  s.layout = coarse_v_layout();
  s.lo = 0.5;
  s.hi = 0.5;
  EXPECT_THROW(s.validate(), ValidationError);
  s.hi = 1.0;
  s.tolerance = 0.0;
  EXPECT_THROW(s.validate(), ValidationError);
  s.tolerance = 0.01;
  s.scan_points = 2;
  EXPECT_THROW(s.validate(), ValidationError);
  s.scan_points = 5;
  s.layout = solo_layout(reference_wing());
  EXPECT_THROW(s.validate(), ValidationError);
}

TEST(MunkStagger, FrozenTotalsIdentical) {
  const auto rows = munk_stagger_report(coarse_v_layout(16, 4), {0.16, 0.8, 1.6}, FlightCondition{}, {}, true);
  ASSERT_EQ(rows.size(), 3u);
  for (const auto& r : rows) EXPECT_LE(rel_diff(r.trefftz_total, rows[0].trefftz_total), 1e-9);
}

TEST(MunkStagger, ResolvedTotalsNearlyIndependent) {
  const auto rows = munk_stagger_report(coarse_v_layout(16, 4), {0.16, 1.6}, FlightCondition{});
  EXPECT_LE(rel_diff(rows[0].trefftz_total, rows[1].trefftz_total), 0.02);
  EXPECT_LE(rel_diff(rows[0].near_field_total, rows[1].near_field_total), 0.02);
  // Individual wings feel the separation more than the formation does.
  const double per_wing = std::abs(rows[0].near_field_drag[1] - rows[1].near_field_drag[1]);
  const double total = std::abs(rows[0].near_field_total - rows[1].near_field_total);
  EXPECT_GT(per_wing, total);
  EXPECT_EQ(rows[0].ids, (std::vector<std::string>{"leader", "left", "right"}));
}

TEST(MunkStagger, SingleWingRowsIdentical) {
  WingSpec w;
  w.n_span = 12;
  w.n_chord = 3;
  const auto rows = munk_stagger_report(solo_layout(w), {0.16, 0.8, 1.6}, FlightCondition{});
  for (const auto& r : rows) {
    EXPECT_EQ(r.near_field_total, rows[0].near_field_total);
    EXPECT_EQ(r.trefftz_total, rows[0].trefftz_total);
  }
}

TEST(MunkStagger, RejectsNonPositiveOffsets) {
  EXPECT_THROW(munk_stagger_report(coarse_v_layout(), {0.16, 0.0}, FlightCondition{}), ValidationError);
  EXPECT_THROW(munk_stagger_report(coarse_v_layout(), {}, FlightCondition{}), ValidationError);
}

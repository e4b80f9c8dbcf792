#include "vformation/spacing.hpp"

#include <algorithm>
#include <cmath>

#include "detail/parallel.hpp"
#include "vformation/errors.hpp"
#include "vformation/io.hpp"

namespace vform {

double hummel_optimal_wts(double span) {
  if (!std::isfinite(span) || span < 0.0) {
    throw DomainError("hummel_optimal_wts: span must be a finite value >= 0, got " + format_number(span));
  }
  return 0.5 * span * 0.11;
}

std::size_t golden_evaluation_bound(double lo, double hi, double tol) {
  if (!(hi > lo) || !(tol > 0.0)) return 2;
  const double n = std::ceil(std::log((hi - lo) / tol) / std::log(1.618));
  return static_cast<std::size_t>(std::max(n, 0.0)) + 2;
}

GoldenResult golden_section_minimize(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw ValidationError("bracket", "need lo < hi, got [" + format_number(lo) + ", " + format_number(hi) + "]");
  }
  if (!std::isfinite(tol) || !(tol > 0.0)) throw ValidationError("tolerance", "must be > 0");

  GoldenResult r;
  auto eval = [&](double x) {
    const double fx = f(x);
    r.trace.emplace_back(x, fx);
    ++r.evaluations;
    return fx;
  };

  if (hi - lo <= tol * (1.0 + 1e-9)) {
    const double flo = eval(lo);
    const double fhi = eval(hi);
    r.x = fhi < flo ? hi : lo;
    r.fx = std::min(flo, fhi);
    return r;
  }

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  while (true) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      if (b - a <= tol) break;
      c = b - inv_phi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      if (b - a <= tol) break;
      d = a + inv_phi * (b - a);
      fd = eval(d);
    }
  }
  // Exactly one evaluated interior point survives in [a, b].
  r.x = fc <= fd ? c : d;
  r.fx = std::min(fc, fd);
  if (r.x < a || r.x > b) {
    r.x = 0.5 * (a + b);
    r.fx = eval(r.x);
  }
  return r;
}

std::string_view to_string(SpacingAxis axis) {
  switch (axis) {
    case SpacingAxis::Wts: return "wts";
    case SpacingAxis::Vertical: return "vertical";
    case SpacingAxis::Streamwise: return "streamwise";
  }
  return "wts";
}

SpacingAxis parse_spacing_axis(std::string_view text) {
  if (text == "wts") return SpacingAxis::Wts;
  if (text == "vertical") return SpacingAxis::Vertical;
  if (text == "streamwise") return SpacingAxis::Streamwise;
  throw ConfigError("search axis must be wts, vertical or streamwise, got '" + std::string(text) + "'");
}

std::string_view to_string(SpacingObjective objective) {
  return objective == SpacingObjective::TrailingPower ? "trailing" : "total";
}

SpacingObjective parse_spacing_objective(std::string_view text) {
  if (text == "trailing") return SpacingObjective::TrailingPower;
  if (text == "total") return SpacingObjective::FormationTotal;
  throw ConfigError("objective must be trailing or total, got '" + std::string(text) + "'");
}

void SpacingStudy::validate() const {
  layout.validate();
  condition.validate();
  solver.validate();
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw ValidationError("bracket", "need lo < hi, got [" + format_number(lo) + ", " + format_number(hi) + "]");
  }
  if (!std::isfinite(tolerance) || !(tolerance > 0.0)) throw ValidationError("tolerance", "must be > 0");
  if (scan_points < 3) throw ValidationError("scan_points", "need at least 3 pre-scan points");
  bool trailing = false;
  for (const auto& m : layout.members) trailing = trailing || m.role() == Role::Trailing;
  if (!trailing) throw ValidationError("layout", "spacing studies need at least one trailing wing");
}

FormationLayout apply_spacing(FormationLayout layout, SpacingAxis axis, double value) {
  for (auto& m : layout.members) {
    if (m.role() != Role::Trailing) continue;
    switch (axis) {
      case SpacingAxis::Wts: m.offset.spanwise = value; break;
      case SpacingAxis::Vertical: m.offset.vertical = value; break;
      case SpacingAxis::Streamwise: m.offset.streamwise = value; break;
    }
  }
  return layout;
}

std::vector<Baseline> solve_baselines(const FormationLayout& layout, const FlightCondition& cond,
                                      const SolverOptions& options, int jobs) {
  std::vector<WingSpec> distinct;
  for (const auto& m : layout.members) {
    if (std::find(distinct.begin(), distinct.end(), m.wing) == distinct.end()) distinct.push_back(m.wing);
  }
  std::vector<Baseline> out(distinct.size());
  const auto errors = detail::parallel_for(distinct.size(), jobs, [&](std::size_t i) {
    out[i] = solve_baseline(distinct[i], cond, options);
  });
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (errors[i]) rethrow_with_context(errors[i], "solo baseline " + std::to_string(i + 1));
  }
  return out;
}

SpacingProbe evaluate_spacing(const SpacingStudy& study, double value, std::span<const Baseline> baselines) {
  try {
    const FormationLayout layout = apply_spacing(study.layout, study.axis, value);
    const FormationSolution sol = solve_formation(layout, study.condition, study.solver);
    const FormationMetrics metrics = formation_ratios(sol, baselines, study.solver);
    SpacingProbe p;
    p.value = value;
    p.trailing_power_reduction = metrics.trailing_power_reduction();
    p.total_drag_reduction = metrics.total_drag_reduction();
    p.reduction = study.objective == SpacingObjective::TrailingPower ? p.trailing_power_reduction
                                                                      : p.total_drag_reduction;
    return p;
  } catch (...) {
    rethrow_with_context(std::current_exception(),
                         "probe " + std::string(to_string(study.axis)) + "=" + format_number(value));
  }
}

SpacingResult optimize_spacing(const SpacingStudy& study) {
  study.validate();
  const auto baselines = solve_baselines(study.layout, study.condition, study.solver, study.jobs);

  const int n = study.scan_points;
  std::vector<SpacingProbe> scan(n);
  const auto errors = detail::parallel_for(n, study.jobs, [&](std::size_t i) {
    const double x = i + 1 == static_cast<std::size_t>(n)
                         ? study.hi
                         : study.lo + (study.hi - study.lo) * static_cast<double>(i) / (n - 1);
    scan[i] = evaluate_spacing(study, x, baselines);
    scan[i].scan = true;
  });
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  SpacingResult result;
  result.trace = scan;
  std::size_t best = 0;
  for (std::size_t i = 1; i < scan.size(); ++i) {
    if (scan[i].reduction > scan[best].reduction) best = i;
  }
  // Unimodal: reduction rises up to the best point and falls after it.
  double scale = 0.0;
  for (const auto& p : scan) scale = std::max(scale, std::abs(p.reduction));
  const double slack = 1e-12 * std::max(scale, 1.0);
  for (std::size_t i = 1; i < scan.size(); ++i) {
    const double step = scan[i].reduction - scan[i - 1].reduction;
    if ((i <= best && step < -slack) || (i > best && step > slack)) result.multimodal = true;
  }
  result.optimum = scan[best].value;
  result.reduction = scan[best].reduction;
  if (result.multimodal) return result;

  const double a = scan[best == 0 ? 0 : best - 1].value;
  const double b = scan[std::min(best + 1, scan.size() - 1)].value;
  const GoldenResult g = golden_section_minimize(
      [&](double x) {
        SpacingProbe p = evaluate_spacing(study, x, baselines);
        result.trace.push_back(p);
        return -p.reduction;
      },
      a, b, study.tolerance);
  result.iterations = g.evaluations;
  if (-g.fx >= result.reduction) {
    result.optimum = g.x;
    result.reduction = -g.fx;
  }
  return result;
}

std::vector<StaggerRow> munk_stagger_report(const FormationLayout& layout, const std::vector<double>& values,
                                            const FlightCondition& cond, const SolverOptions& options,
                                            bool frozen) {
  if (values.empty()) throw ValidationError("offsets", "no streamwise offsets given");
  for (double v : values) {
    if (!std::isfinite(v) || !(v > 0.0)) {
      throw ValidationError("offsets", "streamwise offsets must be > 0, got " + format_number(v));
    }
  }
  std::vector<StaggerRow> rows;
  Eigen::VectorXd frozen_gamma;
  for (double v : values) {
    try {
      const FormationLayout staggered = apply_spacing(layout, SpacingAxis::Streamwise, v);
      Lattice lattice = assemble_formation(staggered, cond.alpha_deg);
      Eigen::VectorXd gamma;
      if (frozen && frozen_gamma.size() > 0) {
        gamma = frozen_gamma;
      } else {
        gamma = solve_circulations(assemble_system(lattice, cond, options));
        if (frozen) frozen_gamma = gamma;
      }
      const AeroSolution near = near_field_forces(gamma, lattice, cond, options);
      const TrefftzDrag far = trefftz_induced_drag(gamma, lattice, cond, options);
      StaggerRow row;
      row.offset = v;
      for (std::size_t w = 0; w < near.wings.size(); ++w) {
        row.ids.push_back(near.wings[w].id);
        row.near_field_drag.push_back(near.wings[w].drag);
        row.trefftz_drag.push_back(far.per_wing[w]);
      }
      row.near_field_total = near.drag;
      row.trefftz_total = far.total;
      rows.push_back(std::move(row));
    } catch (...) {
      rethrow_with_context(std::current_exception(), "streamwise offset " + format_number(v));
    }
  }
  return rows;
}

}  // namespace vform

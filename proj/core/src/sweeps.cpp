#include "vformation/sweeps.hpp"

#include <cmath>
#include <set>

#include "detail/parallel.hpp"
#include "vformation/errors.hpp"
#include "vformation/io.hpp"
#include "vformation/report.hpp"

namespace vform {

std::string_view to_string(SweepParameter parameter) {
  switch (parameter) {
    case SweepParameter::Incidence: return "incidence";
    case SweepParameter::Dihedral: return "dihedral";
    case SweepParameter::AspectRatio: return "aspect_ratio";
    case SweepParameter::Taper: return "taper";
    case SweepParameter::Streamwise: return "streamwise";
    case SweepParameter::Wts: return "wts";
    case SweepParameter::Vertical: return "vertical";
  }
  return "incidence";
}

SweepParameter parse_sweep_parameter(std::string_view text) {
  for (auto p : {SweepParameter::Incidence, SweepParameter::Dihedral, SweepParameter::AspectRatio,
                 SweepParameter::Taper, SweepParameter::Streamwise, SweepParameter::Wts, SweepParameter::Vertical}) {
    if (text == to_string(p)) return p;
  }
  throw ConfigError("unknown sweep parameter '" + std::string(text) +
                    "' (expected incidence, dihedral, aspect_ratio, taper, streamwise, wts or vertical)");
}

FormationLayout apply_parameter(FormationLayout layout, SweepParameter parameter, double value) {
  if (!std::isfinite(value)) throw ValidationError(std::string(to_string(parameter)), "non-finite value");
  WingSpec& leader = layout.leader().wing;
  switch (parameter) {
    case SweepParameter::Incidence: leader.incidence_deg = value; break;
    case SweepParameter::Dihedral: leader.dihedral_deg = value; break;
    case SweepParameter::AspectRatio:
      if (!(value > 0.0)) throw ValidationError("aspect_ratio", "must be > 0, got " + format_number(value));
      leader.span = value * leader.mean_chord();
      break;
    case SweepParameter::Taper: leader.taper_ratio = value; break;
    case SweepParameter::Streamwise:
    case SweepParameter::Wts:
    case SweepParameter::Vertical:
      for (auto& m : layout.members) {
        if (m.role() != Role::Trailing) continue;
        if (parameter == SweepParameter::Streamwise) m.offset.streamwise = value;
        if (parameter == SweepParameter::Wts) m.offset.spanwise = value;
        if (parameter == SweepParameter::Vertical) m.offset.vertical = value;
      }
      break;
  }
  return layout;
}

void SweepSpec::validate() const {
  layout.validate();
  condition.validate();
  solver.validate();
  if (axes.empty()) throw ValidationError("sweep", "at least one swept parameter is required");
  std::set<SweepParameter> seen;
  for (const auto& axis : axes) {
    const std::string name(to_string(axis.parameter));
    if (!seen.insert(axis.parameter).second) throw ValidationError(name, "parameter swept twice");
    if (axis.values.empty()) throw ValidationError(name, "value list is empty");
    int direction = 0;
    for (std::size_t i = 0; i < axis.values.size(); ++i) {
      if (!std::isfinite(axis.values[i])) throw ValidationError(name, "non-finite value");
      if (i == 0) continue;
      const double d = axis.values[i] - axis.values[i - 1];
      const int s = d > 0 ? 1 : (d < 0 ? -1 : 0);
      if (s == 0 || (direction != 0 && s != direction)) {
        throw ValidationError(name, "value list must be strictly monotone");
      }
      direction = s;
    }
  }
}

std::size_t SweepSpec::case_count() const {
  std::size_t n = axes.empty() ? 0 : 1;
  for (const auto& a : axes) n *= a.values.size();
  return n;
}

std::string case_label(const std::vector<SweepAxis>& axes, const std::vector<double>& values) {
  std::string out;
  for (std::size_t a = 0; a < axes.size(); ++a) {
    if (a) out += ';';
    out += std::string(to_string(axes[a].parameter)) + "=" + format_number(values[a]);
  }
  return out;
}

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  SweepResult result;
  result.spec = spec;
  const std::size_t n = spec.case_count();

  std::vector<FormationLayout> layouts(n);
  result.cases.resize(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t rest = c;
    std::vector<double> values(spec.axes.size());
    for (std::size_t a = spec.axes.size(); a-- > 0;) {
      const auto& vals = spec.axes[a].values;
      values[a] = vals[rest % vals.size()];
      rest /= vals.size();
    }
    result.cases[c].values = values;
    result.cases[c].id = case_label(spec.axes, values);
    try {
      FormationLayout layout = spec.layout;
      for (std::size_t a = 0; a < spec.axes.size(); ++a) {
        layout = apply_parameter(std::move(layout), spec.axes[a].parameter, values[a]);
      }
      layout.validate();
      layouts[c] = std::move(layout);
    } catch (...) {
      rethrow_with_context(std::current_exception(), "case " + result.cases[c].id);
    }
  }

  std::vector<WingSpec> distinct;
  for (const auto& layout : layouts) {
    for (const auto& m : layout.members) {
      bool known = false;
      for (const auto& d : distinct) known = known || d == m.wing;
      if (!known) distinct.push_back(m.wing);
    }
  }
  result.baselines.resize(distinct.size());
  auto errors = detail::parallel_for(distinct.size(), spec.jobs, [&](std::size_t i) {
    result.baselines[i] = solve_baseline(distinct[i], spec.condition, spec.solver);
  });
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (errors[i]) rethrow_with_context(errors[i], "solo baseline " + std::to_string(i + 1));
  }

  errors = detail::parallel_for(n, spec.jobs, [&](std::size_t c) {
    const FormationSolution sol = solve_formation(layouts[c], spec.condition, spec.solver);
    result.cases[c].metrics = formation_ratios(sol, result.baselines, spec.solver, spec.locus);
  });
  for (std::size_t c = 0; c < n; ++c) {
    if (errors[c]) rethrow_with_context(errors[c], "case " + result.cases[c].id);
  }
  return result;
}

namespace {

RunMetadata sweep_metadata(const SweepSpec& spec) {
  RunMetadata meta;
  meta.command = "sweep";
  meta.layout = spec.layout;
  meta.condition = spec.condition;
  meta.solver = spec.solver;
  meta.locus = spec.locus;
  for (const auto& axis : spec.axes) {
    std::string values;
    for (std::size_t i = 0; i < axis.values.size(); ++i) values += (i ? "," : "") + format_number(axis.values[i]);
    meta.settings.emplace_back(std::string(to_string(axis.parameter)), values);
  }
  return meta;
}

}  // namespace

std::string sweep_run_id(const SweepSpec& spec) { return compute_run_id(sweep_metadata(spec)); }

std::vector<std::pair<std::filesystem::path, std::string>> render_results(const SweepResult& result,
                                                                          const std::filesystem::path& csv_path,
                                                                          SweepArtifacts* artifacts) {
  if (result.cases.empty()) throw ValidationError("sweep", "result has no cases");
  SweepArtifacts files;
  files.csv = csv_path;
  const auto stem = csv_path.parent_path() / csv_path.stem();
  files.metadata = stem;
  files.metadata += ".meta.json";
  files.plot = stem;
  files.plot += ".plot.csv";

  RunMetadata meta = sweep_metadata(result.spec);
  meta.run_id = compute_run_id(meta);
  meta.files = {files.csv.filename().string(), files.metadata.filename().string(), files.plot.filename().string()};
  files.run_id = meta.run_id;

  std::string csv;
  const auto& columns = metrics_csv_columns();
  for (std::size_t i = 0; i < columns.size(); ++i) csv += (i ? "," : "") + columns[i];
  csv += '\n';
  for (const auto& c : result.cases) append_metrics_rows(csv, c.id, c.metrics, meta.run_id);

  std::string plot = "case_id";
  for (const auto& axis : result.spec.axes) plot += "," + std::string(to_string(axis.parameter));
  plot += ",wing_id,role,metric,value,run_id\n";
  for (const auto& c : result.cases) {
    std::string prefix = csv_field(c.id);
    for (double v : c.values) prefix += "," + format_number(v);
    for (const auto& w : c.metrics.wings) {
      const std::string head = prefix + "," + csv_field(w.id) + "," + std::string(to_string(w.role)) + ",";
      auto row = [&](std::string_view metric, double value) {
        plot += head + std::string(metric) + "," + format_number(value) + "," + meta.run_id + "\n";
      };
      row("L_ratio", w.lift_ratio);
      row("D_ratio", w.drag_ratio);
      if (w.moment_ratio) row("M_ratio", *w.moment_ratio);
      row("delta_alpha", w.delta_alpha);
      row("pct_drag_red", 100.0 * w.drag_reduction);
      row("pct_power_red", 100.0 * w.power_reduction);
    }
  }

  if (artifacts) *artifacts = files;
  return {{files.csv, std::move(csv)}, {files.metadata, render_metadata(meta)}, {files.plot, std::move(plot)}};
}

SweepArtifacts write_results(const SweepResult& result, const std::filesystem::path& csv_path) {
  SweepArtifacts files;
  write_files_atomically(render_results(result, csv_path, &files));
  return files;
}

}  // namespace vform

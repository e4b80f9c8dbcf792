#include "vformation/cli.hpp"

#include <cmath>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "vformation/config.hpp"
#include "vformation/io.hpp"
#include "vformation/report.hpp"

namespace vform::cli {

namespace {

constexpr double kRadToDeg = 180.0 / 3.14159265358979323846;

std::string sig(double v) { return format_significant(v, 6); }

// Left-aligned text table.
class Table {
 public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  void print(std::ostream& os) const {
    std::vector<std::size_t> width(rows_.front().size(), 0);
    for (const auto& r : rows_) {
      for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
    }
    for (const auto& r : rows_) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        os << (i ? "  " : "");
        if (i + 1 < r.size()) os << std::left << std::setw(static_cast<int>(width[i]));
        os << r[i];
      }
      os << "\n";
    }
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

SweepAxis parse_axis_assignment(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw UsageError("--axis expects <parameter>=<v1,v2,...>, got '" + text + "'");
  SweepAxis axis;
  axis.parameter = parse_sweep_parameter(text.substr(0, eq));
  axis.values = parse_number_list(std::string_view(text).substr(eq + 1), "--axis " + text.substr(0, eq));
  return axis;
}

// Converts parse-stage ConfigErrors on flag values into usage errors.
template <typename Fn>
auto as_usage(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
}

StudyConfig read_config(const Command& cmd, std::istream& in) {
  StudyConfig config;
  if (cmd.config == "-") {
    std::ostringstream buf;
    buf << in.rdbuf();
    config = parse_config(buf.str(), "<stdin>");
  } else {
    config = load_config(cmd.config);
  }
  for (const auto& o : cmd.overrides) apply_override(config, o);
  config.validate();
  return config;
}

RunMetadata base_metadata(std::string command, const StudyConfig& config) {
  RunMetadata meta;
  meta.command = std::move(command);
  meta.layout = config.layout;
  meta.condition = config.flight;
  meta.solver = config.solver;
  meta.locus = config.locus;
  return meta;
}

void print_header(std::ostream& out, const StudyConfig& config, const std::string& run_id) {
  out << "formation: ";
  for (std::size_t i = 0; i < config.layout.members.size(); ++i) {
    out << (i ? ", " : "") << config.layout.members[i].id;
  }
  out << "  |  V = " << sig(config.flight.speed) << " m/s, rho = " << sig(config.flight.density)
      << " kg/m^3, alpha = " << sig(config.flight.alpha_deg) << " deg  |  run " << run_id << "\n";
}

void print_metrics(std::ostream& out, const FormationMetrics& metrics, std::string_view case_id = {}) {
  std::vector<std::string> header = {"wing", "role", "L [N]", "D_i [N]", "M [N m]", "L/L_BL", "D/D_BL",
                                     "M/M_BL", "dalpha [deg]", "drag red [%]", "power red [%]"};
  if (!case_id.empty()) header.insert(header.begin(), "case");
  Table t(header);
  for (const auto& w : metrics.wings) {
    std::vector<std::string> row = {w.id,
                                    std::string(to_string(w.role)),
                                    sig(w.formation.lift),
                                    sig(w.formation.drag),
                                    sig(w.formation.moment),
                                    sig(w.lift_ratio),
                                    sig(w.drag_ratio),
                                    w.moment_ratio ? sig(*w.moment_ratio) : "NA",
                                    sig(w.delta_alpha * kRadToDeg),
                                    sig(100.0 * w.drag_reduction),
                                    sig(100.0 * w.power_reduction)};
    if (!case_id.empty()) row.insert(row.begin(), std::string(case_id));
    t.add(row);
  }
  t.print(out);
}

std::string csv_header(const std::vector<std::string>& columns) {
  std::string s;
  for (std::size_t i = 0; i < columns.size(); ++i) s += (i ? "," : "") + columns[i];
  return s + "\n";
}

void run_solve(const Command& cmd, const StudyConfig& config, std::ostream& out) {
  const auto baselines = solve_baselines(config.layout, config.flight, config.solver, cmd.jobs);
  const FormationSolution sol = solve_formation(config.layout, config.flight, config.solver);
  const FormationMetrics metrics = formation_ratios(sol, baselines, config.solver, config.locus);

  RunMetadata meta = base_metadata("solve", config);
  meta.files = {"solve.csv", "solve.meta.json"};
  meta.run_id = compute_run_id(meta);
  std::string csv = csv_header(metrics_csv_columns());
  append_metrics_rows(csv, "solve", metrics, meta.run_id);
  write_files_atomically({{cmd.out / "solve.csv", csv}, {cmd.out / "solve.meta.json", render_metadata(meta)}});

  print_header(out, config, meta.run_id);
  print_metrics(out, metrics);
  out << "formation: L = " << sig(sol.aero.lift) << " N, D_i = " << sig(sol.aero.drag)
      << " N (Trefftz " << sig(sol.aero.trefftz_drag) << " N), total drag reduction "
      << sig(100.0 * metrics.total_drag_reduction()) << " %\n";
  out << "moments about each wing's root quarter-chord, nose-up positive; induced drag only\n";
  out << "wrote " << (cmd.out / "solve.csv").string() << "\n";
}

void run_sweep_command(const Command& cmd, const StudyConfig& config, std::ostream& out) {
  SweepSpec spec;
  spec.layout = config.layout;
  spec.axes = cmd.axes;
  spec.condition = config.flight;
  spec.solver = config.solver;
  spec.locus = config.locus;
  spec.jobs = cmd.jobs;
  const SweepResult result = run_sweep(spec);
  const SweepArtifacts files = write_results(result, cmd.out / "sweep.csv");

  print_header(out, config, files.run_id);
  Table t({"case", "wing", "L/L_BL", "D/D_BL", "dalpha [deg]", "drag red [%]"});
  for (const auto& c : result.cases) {
    for (const auto& w : c.metrics.wings) {
      if (w.role != Role::Trailing) continue;
      t.add({c.id, w.id, sig(w.lift_ratio), sig(w.drag_ratio), sig(w.delta_alpha * kRadToDeg),
             sig(100.0 * w.drag_reduction)});
    }
  }
  t.print(out);
  out << result.cases.size() << " cases, " << result.baselines.size() << " solo baselines\n";
  out << "wrote " << files.csv.string() << ", " << files.metadata.filename().string() << ", "
      << files.plot.filename().string() << "\n";
}

void run_optimize(const Command& cmd, const StudyConfig& config, std::ostream& out) {
  SpacingStudy study;
  study.layout = config.layout;
  study.axis = cmd.axis;
  study.lo = cmd.lo;
  study.hi = cmd.hi;
  study.tolerance = cmd.tolerance;
  study.objective = cmd.objective;
  study.condition = config.flight;
  study.solver = config.solver;
  study.scan_points = cmd.scan_points;
  study.jobs = cmd.jobs;
  const SpacingResult result = optimize_spacing(study);

  RunMetadata meta = base_metadata("optimize", config);
  meta.settings = {{"axis", std::string(to_string(cmd.axis))},
                   {"lo", format_number(cmd.lo)},
                   {"hi", format_number(cmd.hi)},
                   {"tolerance", format_number(cmd.tolerance)},
                   {"objective", std::string(to_string(cmd.objective))},
                   {"scan_points", std::to_string(cmd.scan_points)}};
  meta.files = {"optimize.csv", "optimize.meta.json"};
  meta.run_id = compute_run_id(meta);
  std::string csv = "step,phase,value,objective_reduction,trailing_power_reduction,total_drag_reduction,run_id\n";
  for (std::size_t i = 0; i < result.trace.size(); ++i) {
    const auto& p = result.trace[i];
    csv += std::to_string(i) + "," + (p.scan ? "scan" : "golden") + "," + format_number(p.value) + "," +
           format_number(p.reduction) + "," + format_number(p.trailing_power_reduction) + "," +
           format_number(p.total_drag_reduction) + "," + meta.run_id + "\n";
  }
  write_files_atomically(
      {{cmd.out / "optimize.csv", csv}, {cmd.out / "optimize.meta.json", render_metadata(meta)}});

  print_header(out, config, meta.run_id);
  out << "optimum " << to_string(cmd.axis) << " = " << sig(result.optimum) << " m, "
      << (cmd.objective == SpacingObjective::TrailingPower ? "trailing power" : "formation drag")
      << " reduction " << sig(100.0 * result.reduction) << " %, " << result.iterations
      << " refinement evaluations, " << result.trace.size() << " probes"
      << (result.multimodal ? ", pre-scan NOT unimodal (best scan point reported)" : "") << "\n";
  if (cmd.axis == SpacingAxis::Wts) {
    const double span = config.layout.leader().wing.span;
    out << "Hummel estimate for b = " << sig(span) << " m: tip overlap " << sig(hummel_optimal_wts(span))
        << " m, i.e. tip gap " << sig(hummel_optimal_gap(span)) << " m (negative gap = overlap)\n";
  }
  out << "wrote " << (cmd.out / "optimize.csv").string() << "\n";
}

void run_stagger(const Command& cmd, const StudyConfig& config, std::ostream& out) {
  const auto rows = munk_stagger_report(config.layout, cmd.offsets, config.flight, config.solver, cmd.frozen);

  RunMetadata meta = base_metadata("stagger-check", config);
  std::string offsets;
  for (std::size_t i = 0; i < cmd.offsets.size(); ++i) offsets += (i ? "," : "") + format_number(cmd.offsets[i]);
  meta.settings = {{"offsets", offsets}, {"frozen", cmd.frozen ? "true" : "false"}};
  meta.files = {"stagger.csv", "stagger.meta.json"};
  meta.run_id = compute_run_id(meta);
  std::string csv = "offset,wing_id,D_i,D_i_trefftz,run_id\n";
  for (const auto& r : rows) {
    for (std::size_t w = 0; w < r.ids.size(); ++w) {
      csv += format_number(r.offset) + "," + csv_field(r.ids[w]) + "," + format_number(r.near_field_drag[w]) +
             "," + format_number(r.trefftz_drag[w]) + "," + meta.run_id + "\n";
    }
    csv += format_number(r.offset) + ",total," + format_number(r.near_field_total) + "," +
           format_number(r.trefftz_total) + "," + meta.run_id + "\n";
  }
  write_files_atomically({{cmd.out / "stagger.csv", csv}, {cmd.out / "stagger.meta.json", render_metadata(meta)}});

  print_header(out, config, meta.run_id);
  std::vector<std::string> header = {"offset [m]"};
  for (const auto& id : rows.front().ids) header.push_back("D_i " + id + " [N]");
  header.push_back("total [N]");
  header.push_back("Trefftz total [N]");
  Table t(header);
  double lo = rows.front().trefftz_total;
  double hi = lo;
  for (const auto& r : rows) {
    std::vector<std::string> row = {sig(r.offset)};
    for (double d : r.near_field_drag) row.push_back(sig(d));
    row.push_back(sig(r.near_field_total));
    row.push_back(sig(r.trefftz_total));
    t.add(row);
    lo = std::min(lo, r.trefftz_total);
    hi = std::max(hi, r.trefftz_total);
  }
  t.print(out);
  const double mean = 0.5 * (lo + hi);
  out << (cmd.frozen ? "frozen" : "re-solved") << " circulation: Trefftz total spread "
      << sig(mean != 0.0 ? 100.0 * (hi - lo) / std::abs(mean) : 0.0) << " %\n";
  out << "wrote " << (cmd.out / "stagger.csv").string() << "\n";
}

void run_validate(const StudyConfig& config, std::ostream& out) {
  // Placement also checks that no two wings intersect.
  const Lattice lattice = assemble_formation(config.layout, config.flight.alpha_deg);
  out << "config OK: " << config.layout.members.size() << " wings (";
  for (std::size_t i = 0; i < config.layout.members.size(); ++i) {
    const auto& m = config.layout.members[i];
    out << (i ? ", " : "") << m.id << " " << to_string(m.role());
  }
  out << "), " << lattice.size() << " panels\n";
}

}  // namespace

std::string_view to_string(Subcommand sub) {
  switch (sub) {
    case Subcommand::Solve: return "solve";
    case Subcommand::Sweep: return "sweep";
    case Subcommand::Optimize: return "optimize";
    case Subcommand::StaggerCheck: return "stagger-check";
    case Subcommand::Validate: return "validate";
  }
  return "solve";
}

Command parse_invocation(int argc, const char* const* argv) {
  CLI::App app{"Vortex-lattice formation-flight simulator", "vform"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);

  Command cmd;
  std::string out_dir = ".";
  std::string param;
  std::string values;
  std::vector<std::string> axes;
  std::string axis = "wts";
  std::string objective = "trailing";
  std::string offsets;

  auto common = [&](CLI::App* sub, bool outputs) {
    sub->add_option("-c,--config", cmd.config, "formation config file ('-' reads stdin for validate)")->required();
    sub->add_option("-s,--set", cmd.overrides, "override <section>.<key>=<value>, repeatable");
    if (outputs) {
      sub->add_option("-o,--out", out_dir, "output directory")->capture_default_str();
      sub->add_option("-j,--jobs", cmd.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    }
  };

  auto* solve = app.add_subcommand("solve", "solve one formation and report ratios to solo flight");
  common(solve, true);

  auto* sweep = app.add_subcommand("sweep", "parameter sweep over leader shape or trailing-wing offsets");
  common(sweep, true);
  sweep->add_option("--param", param, "swept parameter: incidence, dihedral, aspect_ratio, taper, streamwise, "
                                      "wts, vertical");
  sweep->add_option("--values", values, "comma-separated values for --param");
  sweep->add_option("--axis", axes, "<parameter>=<v1,v2,...>; repeat for a cross-product grid");

  auto* optimize = app.add_subcommand("optimize", "golden-section search of one spacing axis");
  common(optimize, true);
  optimize->add_option("--axis", axis, "wts, vertical or streamwise")->capture_default_str();
  optimize->add_option("--lo", cmd.lo, "bracket lower end [m]")->capture_default_str();
  optimize->add_option("--hi", cmd.hi, "bracket upper end [m]")->capture_default_str();
  optimize->add_option("--tol", cmd.tolerance, "bracket tolerance [m]")->capture_default_str();
  optimize->add_option("--objective", objective, "trailing or total")->capture_default_str();
  optimize->add_option("--scan", cmd.scan_points, "pre-scan points")->capture_default_str();

  auto* stagger = app.add_subcommand("stagger-check", "induced drag against streamwise separation");
  common(stagger, true);
  stagger->add_option("--offsets", offsets, "comma-separated streamwise separations [m]")->required();
  stagger->add_flag("--frozen", cmd.frozen, "reuse the circulation solved at the first offset");

  auto* validate = app.add_subcommand("validate", "check a config without solving");
  common(validate, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::Success& e) {
    throw HelpRequested(e.what());
  } catch (const CLI::ParseError& e) {
    std::string help;
    for (auto* sub : app.get_subcommands()) help = sub->help();
    if (help.empty()) help = app.help();
    throw UsageError(std::string(e.what()) + "\n" + help);
  }

  CLI::App* chosen = app.get_subcommands().front();
  for (auto s : {Subcommand::Solve, Subcommand::Sweep, Subcommand::Optimize, Subcommand::StaggerCheck,
                 Subcommand::Validate}) {
    if (chosen->get_name() == to_string(s)) cmd.subcommand = s;
  }
  cmd.out = out_dir;

  if (cmd.subcommand == Subcommand::Sweep) {
    if (!param.empty() || !values.empty()) {
      if (param.empty() || values.empty()) throw UsageError("--param and --values must be given together");
      as_usage([&] {
        cmd.axes.push_back(SweepAxis{parse_sweep_parameter(param), parse_number_list(values, "--values")});
      });
    }
    for (const auto& a : axes) as_usage([&] { cmd.axes.push_back(parse_axis_assignment(a)); });
    if (cmd.axes.empty()) throw UsageError("sweep needs --param/--values or at least one --axis");
  }
  if (cmd.subcommand == Subcommand::Optimize) {
    as_usage([&] {
      cmd.axis = parse_spacing_axis(axis);
      cmd.objective = parse_spacing_objective(objective);
    });
  }
  if (cmd.subcommand == Subcommand::StaggerCheck) {
    as_usage([&] { cmd.offsets = parse_number_list(offsets, "--offsets"); });
  }

  if (cmd.config == "-") {
    if (cmd.subcommand != Subcommand::Validate) throw UsageError("reading the config from stdin needs 'validate'");
  } else if (!std::filesystem::is_regular_file(cmd.config)) {
    throw ConfigError("config file '" + cmd.config + "' does not exist");
  }
  return cmd;
}

void execute(const Command& cmd, std::istream& in, std::ostream& out) {
  const StudyConfig config = read_config(cmd, in);
  switch (cmd.subcommand) {
    case Subcommand::Solve: run_solve(cmd, config, out); break;
    case Subcommand::Sweep: run_sweep_command(cmd, config, out); break;
    case Subcommand::Optimize: run_optimize(cmd, config, out); break;
    case Subcommand::StaggerCheck: run_stagger(cmd, config, out); break;
    case Subcommand::Validate: run_validate(config, out); break;
  }
}

int exit_code_for(const std::exception_ptr& error) {
  try {
    std::rethrow_exception(error);
  } catch (const HelpRequested&) {
    return kSuccess;
  } catch (const UsageError&) {
    return kUsage;
  } catch (const ConfigError&) {
    return kConfig;
  } catch (const ValidationError&) {
    return kConfig;
  } catch (const DomainError&) {
    return kConfig;
  } catch (const NumericError&) {
    return kNumeric;
  } catch (...) {
    return kNumeric;
  }
}

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  try {
    execute(parse_invocation(argc, argv), in, out);
    return kSuccess;
  } catch (const HelpRequested& e) {
    out << e.what();
    return kSuccess;
  } catch (const std::exception& e) {
    const int code = exit_code_for(std::current_exception());
    const char* kind = code == kUsage ? "usage error" : code == kConfig ? "config error" : "error";
    err << "vform: " << kind << ": " << e.what() << "\n";
    return code;
  }
}

}  // namespace vform::cli

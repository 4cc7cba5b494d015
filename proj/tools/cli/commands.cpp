#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qfridge/table_io.hpp"
#include "qfridge/validation.hpp"
#include "run_config.hpp"

#ifndef QFRIDGE_VERSION
#define QFRIDGE_VERSION "unknown"
#endif

namespace qfridge::cli {

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

struct CommonOptions {
  std::string config_path;
  std::string out_path;
  std::string format;
  std::optional<double> tol;
  std::optional<int> threads;
  std::vector<std::string> overrides;
};

std::string resolved_format(const CommonOptions& o) {
  if (!o.format.empty()) return o.format;
  return fs::path(o.out_path).extension() == ".json" ? "json" : "csv";
}

ConfigFile read_config(const CommonOptions& o) {
  ConfigFile config = o.config_path.empty() ? ConfigFile{} : load_config(o.config_path);
  apply_overrides(config, o.overrides);
  if (!config.contains("model")) throw UsageError("no [model] section; pass --config PATH or --set model.tag=...");
  return config;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << text;
  if (!f) throw UsageError("failed writing '" + path + "'");
}

Json number(double v) { return std::isfinite(v) ? Json(std::stod(format_value(v))) : Json(nullptr); }

Json params_json(const ParameterSet& p) {
  Json j = Json::object();
  for (const auto& [k, v] : p) j[k] = number(v);
  return j;
}

Json solver_json(const SteadyStateOptions& s) {
  return Json{{"tol", number(s.tol)}, {"uniqueness_threshold", number(s.uniqueness_threshold)}};
}

Json model_json(const ConfigFile& config) {
  Json j;
  const ModelTag tag = model_tag(config);
  j["tag"] = to_string(tag);
  if (tag != ModelTag::Custom) {
    j["params"] = params_json(model_parameters(config));
  } else {
    Json sections = Json::object();
    for (const auto& [key, value] : flatten(config)) {
      if (key.rfind("particle.", 0) == 0 || key.rfind("channel.", 0) == 0 || key.rfind("interaction.", 0) == 0) {
        sections[key] = value;
      }
    }
    j["sections"] = sections;
  }
  return j;
}

Json sweep_json(const SweepConfig& c) {
  Json j;
  j["name"] = c.name;
  j["model"] = to_string(c.model);
  j["axis"] = c.axis;
  j["fixed"] = params_json(c.fixed);
  Json values = Json::array();
  for (double v : c.values) values.push_back(number(v));
  j["values"] = values;
  Json rules = Json::array();
  for (const auto& r : c.rules) rules.push_back(r.to_string());
  j["rules"] = rules;
  j["solver"] = solver_json(c.solver);
  j["threads"] = c.threads;
  return j;
}

void write_manifest(const std::string& command, const CommonOptions& o, const Json& resolved,
                    const std::vector<std::string>& outputs, double seconds) {
  if (o.out_path.empty()) return;
  Json m;
  m["command"] = command;
  m["tool_version"] = QFRIDGE_VERSION;
  m["config_path"] = o.config_path;
  Json overrides = Json::array();
  for (const auto& s : o.overrides) overrides.push_back(s);
  m["overrides"] = overrides;
  m["resolved_parameters"] = resolved;
  m["outputs"] = outputs;
  m["wall_time_seconds"] = seconds;
  write_file(o.out_path + ".manifest.json", m.dump(2) + "\n");
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string state_text(const ComplexMatrix& rho, const SpaceShape& shape, const std::string& format) {
  if (format == "json") {
    Json j;
    j["shape"] = shape.dims();
    Json re = Json::array();
    Json im = Json::array();
    for (int r = 0; r < rho.rows(); ++r) {
      Json rr = Json::array();
      Json ii = Json::array();
      for (int c = 0; c < rho.cols(); ++c) {
        rr.push_back(number(rho(r, c).real()));
        ii.push_back(number(rho(r, c).imag()));
      }
      re.push_back(rr);
      im.push_back(ii);
    }
    j["re"] = re;
    j["im"] = im;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "row,col,re,im\n";
  for (int r = 0; r < rho.rows(); ++r) {
    for (int c = 0; c < rho.cols(); ++c) {
      os << r << ',' << c << ',' << format_value(rho(r, c).real()) << ',' << format_value(rho(r, c).imag()) << '\n';
    }
  }
  return os.str();
}

std::string table_text(const SweepTable& t, const std::string& format) {
  return format == "json" ? to_json(t) : to_csv(t);
}

void print_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const auto& w : warnings) err << "warning: " << w << '\n';
}

// ---- steady ------------------------------------------------------------------

int cmd_steady(const CommonOptions& o, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const ConfigFile config = read_config(o);
  const FridgeModel model = make_model(config);
  SteadyStateOptions solver = solver_options(config);
  if (o.tol) solver.tol = *o.tol;
  print_warnings(model.warnings(), err);

  const SteadyStateResult ss = steady_state(model, solver);
  print_warnings(ss.warnings, err);
  const auto temps = temperatures(model, ss.rho);
  const HeatCurrents q = heat_currents(model, ss.rho);

  out << "model " << to_string(model_tag(config)) << '\n';
  for (std::size_t i = 0; i < temps.size(); ++i) {
    out << 'T' << i + 1 << ' ' << format_value(temps[i].value) << ' ' << to_string(temps[i].flag) << '\n';
  }
  for (std::size_t i = 0; i < q.per_particle.size(); ++i) {
    out << 'Q' << i + 1 << ' ' << format_value(q.per_particle[i]) << '\n';
  }
  out << "Q_total " << format_value(q.total()) << '\n';
  out << "residual " << format_value(ss.residual) << '\n';
  out << "uniqueness_gap " << format_value(ss.uniqueness_gap) << '\n';
  out << "converged " << (ss.converged ? "true" : "false") << '\n';

  std::vector<std::string> outputs;
  if (!o.out_path.empty()) {
    write_file(o.out_path, state_text(ss.rho, model.shape(), resolved_format(o)));
    outputs.push_back(o.out_path);
  }
  Json resolved{{"model", model_json(config)}, {"solver", solver_json(solver)}};
  write_manifest("steady", o, resolved, outputs, seconds_since(start));

  if (!ss.converged) {
    err << "error: stationary state did not converge (residual " << format_value(ss.residual) << " > tol "
        << format_value(solver.tol) << ")\n";
    return kExitConvergence;
  }
  return kExitOk;
}

// ---- evolve ------------------------------------------------------------------

int cmd_evolve(const CommonOptions& o, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const ConfigFile config = read_config(o);
  const FridgeModel model = make_model(config);
  const EvolveSetup setup = evolve_setup(config);
  print_warnings(model.warnings(), err);

  const Trajectory traj = evolve(model, initial_state(model, setup), setup.options);
  print_warnings(traj.warnings, err);

  const std::size_t n = model.particles().size();
  std::vector<std::string> cols{"t"};
  for (std::size_t i = 1; i <= n; ++i) cols.push_back("T" + std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i) cols.push_back("Q" + std::to_string(i));
  cols.push_back("trace_defect");
  cols.push_back("min_eigenvalue");

  std::vector<std::vector<double>> data(cols.size());
  for (std::size_t s = 0; s < traj.states.size(); ++s) {
    const auto& rho = traj.states[s];
    const auto temps = temperatures(model, rho);
    const auto q = heat_currents(model, rho);
    const auto diag = check_density(rho);
    std::size_t c = 0;
    data[c++].push_back(traj.times[s]);
    for (const auto& t : temps) data[c++].push_back(t.value);
    for (double v : q.per_particle) data[c++].push_back(v);
    data[c++].push_back(diag.trace_defect);
    data[c++].push_back(diag.min_eigenvalue);
  }

  std::string text;
  const std::string format = resolved_format(o);
  if (format == "json") {
    Json j;
    j["name"] = "evolve";
    j["model"] = to_string(model_tag(config));
    j["axis"] = "t";
    j["metadata"] = Json{{"dt_used", format_value(traj.dt_used)}, {"steps", std::to_string(traj.steps)},
                         {"initial", setup.initial}};
    j["columns"] = cols;
    Json d = Json::object();
    for (std::size_t c = 0; c < cols.size(); ++c) {
      Json arr = Json::array();
      for (double v : data[c]) arr.push_back(number(v));
      d[cols[c]] = arr;
    }
    j["data"] = d;
    text = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "# dt_used=" << format_value(traj.dt_used) << "\n# steps=" << traj.steps << "\n# initial=" << setup.initial
       << '\n';
    for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << cols[c];
    os << '\n';
    for (std::size_t r = 0; r < data[0].size(); ++r) {
      for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << format_value(data[c][r]);
      os << '\n';
    }
    text = os.str();
  }

  std::vector<std::string> outputs;
  if (o.out_path.empty()) {
    out << text;
  } else {
    write_file(o.out_path, text);
    outputs.push_back(o.out_path);
    out << "wrote " << o.out_path << " (" << data[0].size() << " samples, dt " << format_value(traj.dt_used) << ")\n";
  }
  Json resolved{{"model", model_json(config)},
                {"evolve",
                 {{"t_final", number(setup.options.t_final)},
                  {"dt", number(setup.options.dt)},
                  {"dt_used", number(traj.dt_used)},
                  {"sample_every", setup.options.sample_every},
                  {"initial", setup.initial},
                  {"initial_temperature", number(setup.initial_temperature)}}}};
  write_manifest("evolve", o, resolved, outputs, seconds_since(start));

  if (!traj.final_defects.acceptable(1e-8)) {
    err << "error: final state is not a valid density matrix (trace defect "
        << format_value(traj.final_defects.trace_defect) << ", min eigenvalue "
        << format_value(traj.final_defects.min_eigenvalue) << ")\n";
    return kExitConvergence;
  }
  return kExitOk;
}

// ---- sweep / figure -----------------------------------------------------------

std::size_t unconverged(const SweepTable& t) {
  return static_cast<std::size_t>(std::count_if(t.rows.begin(), t.rows.end(), [](const SweepRow& r) {
    return (r.flags & (kRowUnconverged | kRowBuildError)) != 0;
  }));
}

void apply_common(SweepConfig& c, const CommonOptions& o) {
  if (o.tol) c.solver.tol = *o.tol;
  if (o.threads) c.threads = *o.threads;
}

int report_rows(const std::vector<SweepTable>& tables, std::ostream& err) {
  std::size_t bad = 0;
  for (const auto& t : tables) {
    const std::size_t n = unconverged(t);
    if (n) err << "error: " << n << " row(s) of '" << t.name << "' did not converge\n";
    bad += n;
  }
  return bad ? kExitConvergence : kExitOk;
}

int cmd_sweep(const CommonOptions& o, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const ConfigFile config = read_config(o);
  SweepConfig sweep = sweep_config(config);
  apply_common(sweep, o);
  const SweepTable table = run_sweep(sweep);
  const std::string text = table_text(table, resolved_format(o));

  std::vector<std::string> outputs;
  if (o.out_path.empty()) {
    out << text;
  } else {
    write_file(o.out_path, text);
    outputs.push_back(o.out_path);
    out << "wrote " << o.out_path << " (" << table.rows.size() << " rows)\n";
  }
  write_manifest("sweep", o, Json{{"sweep", sweep_json(sweep)}}, outputs, seconds_since(start));
  return report_rows({table}, err);
}

std::string curve_path(const std::string& out_path, const std::string& curve) {
  const fs::path p(out_path);
  const fs::path name = p.stem().string() + "_" + curve + p.extension().string();
  return (p.parent_path() / name).string();
}

int cmd_figure(const std::string& id, const CommonOptions& o, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  FigurePreset fig;
  try {
    fig = preset(id);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  const std::string format = resolved_format(o);
  std::vector<SweepTable> tables;
  std::vector<std::string> outputs;
  Json curves = Json::array();
  for (auto& c : fig.curves) {
    apply_common(c, o);
    tables.push_back(run_sweep(c));
    curves.push_back(sweep_json(c));
    const std::string text = table_text(tables.back(), format);
    if (o.out_path.empty()) {
      out << text;
    } else {
      const std::string path = fig.curves.size() == 1 ? o.out_path : curve_path(o.out_path, c.name);
      write_file(path, text);
      outputs.push_back(path);
      out << "wrote " << path << " (" << tables.back().rows.size() << " rows)\n";
    }
  }
  write_manifest("figure", o, Json{{"figure", id}, {"description", fig.description}, {"curves", curves}}, outputs,
                 seconds_since(start));
  return report_rows(tables, err);
}

// ---- validate ----------------------------------------------------------------

int cmd_validate(const CommonOptions& o, const std::string& fault, bool skip_dynamics, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  ValidationOptions opts;
  if (o.tol) opts.tol = *o.tol;
  opts.include_dynamics = !skip_dynamics;
  if (fault == "commutator_sign") {
    opts.liouvillian_builder = build_liouvillian_with_commutator_sign_fault;
  } else if (!fault.empty()) {
    throw UsageError("unknown fault '" + fault + "' (expected commutator_sign)");
  }
  const ValidationReport report = run_validation(opts);
  for (const auto& c : report.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << " value=" << format_value(c.value)
        << " threshold=" << format_value(c.threshold) << '\n';
  }
  out << report.checks.size() - report.failures() << '/' << report.checks.size() << " checks passed\n";

  if (!o.out_path.empty()) {
    Json checks = Json::array();
    for (const auto& c : report.checks) {
      checks.push_back({{"name", c.name}, {"passed", c.passed}, {"value", number(c.value)}, {"threshold", number(c.threshold)}});
    }
    write_file(o.out_path, Json{{"passed", report.passed()}, {"checks", checks}}.dump(2) + "\n");
    write_manifest("validate", o,
                   Json{{"tol", number(opts.tol)}, {"include_dynamics", opts.include_dynamics},
                        {"fault", fault.empty() ? Json(nullptr) : Json(fault)}},
                   {o.out_path}, seconds_since(start));
  }
  return report.passed() ? kExitOk : kExitValidation;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qfridge: steady states, dynamics and sweeps of small absorption refrigerators", "qfridge"};
  app.set_version_flag("--version", std::string(QFRIDGE_VERSION));
  app.require_subcommand(1);
  app.fallthrough();

  CommonOptions o;
  app.add_option("--config", o.config_path, "INI run configuration")->check(CLI::ExistingFile);
  app.add_option("--out", o.out_path, "output file (tables, state or report); a manifest goes to OUT.manifest.json");
  app.add_option("--format", o.format, "output format (default: from --out extension, else csv)")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--tol", o.tol, "stationarity tolerance; for validate, loosens every threshold")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", o.threads, "worker threads for sweeps")->check(CLI::Range(1, 1024));
  app.add_option("--set", o.overrides, "override a config key: section.key=value (repeatable)");

  auto* steady = app.add_subcommand("steady", "stationary state of one model");
  auto* evolve_cmd = app.add_subcommand("evolve", "RK4 trajectory from an initial state");
  auto* sweep = app.add_subcommand("sweep", "stationary observables along one parameter axis");
  auto* figure = app.add_subcommand("figure", "run a built-in figure preset");
  std::string figure_id;
  figure->add_option("id", figure_id, "preset id")->required();
  auto* validate = app.add_subcommand("validate", "built-in invariant suite");
  std::string fault;
  bool skip_dynamics = false;
  validate->add_option("--inject-fault", fault)->group("");
  validate->add_flag("--no-dynamics", skip_dynamics, "skip the RK4 comparisons");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << QFRIDGE_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    if (e.get_name() == "RequiredError" && figure->parsed()) {
      err << "valid figure ids:";
      for (const auto& id : figure_ids()) err << ' ' << id;
      err << '\n';
    }
    return kExitUsage;
  }

  try {
    if (steady->parsed()) return cmd_steady(o, out, err);
    if (evolve_cmd->parsed()) return cmd_evolve(o, out, err);
    if (sweep->parsed()) return cmd_sweep(o, out, err);
    if (figure->parsed()) return cmd_figure(figure_id, o, out, err);
    if (validate->parsed()) return cmd_validate(o, fault, skip_dynamics, out);
  } catch (const NonUniqueStationaryState& e) {
    err << "error: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const std::exception& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace qfridge::cli

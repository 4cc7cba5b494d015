#include "qfridge/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

namespace qfridge {

namespace {

const std::vector<std::string> kModelINames{"E1", "E2", "Tc", "Tr", "Th", "p1", "p2", "p3", "g"};
const std::vector<std::string> kModelIINames{"E1", "E2", "Tc", "Tr", "Th", "p1", "p2", "p3", "g", "h"};
const std::vector<std::string> kModelIIINames{"E1", "E2", "Tc", "Tr", "Th", "p1", "p_h", "p_r", "g"};

bool is_known(ModelTag tag, const std::string& name) {
  const auto& names = parameter_names(tag);
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

const std::vector<std::string>& parameter_names(ModelTag tag) {
  switch (tag) {
    case ModelTag::I: return kModelINames;
    case ModelTag::II: return kModelIINames;
    case ModelTag::III: return kModelIIINames;
    case ModelTag::Custom: break;
  }
  throw ConfigError("custom models are not described by named parameters");
}

ParameterSet resolve_parameters(ModelTag tag, const ParameterSet& params) {
  const auto& names = parameter_names(tag);
  for (const auto& [key, value] : params) {
    if (!is_known(tag, key)) {
      throw ConfigError("unknown parameter '" + key + "' for model " + to_string(tag));
    }
  }
  ParameterSet out = params;
  if ((tag == ModelTag::I || tag == ModelTag::II) && !out.contains("Tr") && out.contains("Tc")) {
    out["Tr"] = out.at("Tc");
  }
  for (const auto& name : names) {
    if (!out.contains(name)) {
      throw ConfigError("missing required parameter '" + name + "' for model " + to_string(tag));
    }
  }
  return out;
}

FridgeModel build_model(ModelTag tag, const ParameterSet& params) {
  const ParameterSet p = resolve_parameters(tag, params);
  switch (tag) {
    case ModelTag::I:
      return build_model_I({p.at("E1"), p.at("E2"), p.at("Tc"), p.at("Tr"), p.at("Th"), p.at("p1"), p.at("p2"),
                            p.at("p3"), p.at("g")});
    case ModelTag::II:
      return build_model_II({p.at("E1"), p.at("E2"), p.at("Tc"), p.at("Tr"), p.at("Th"), p.at("p1"),
                             p.at("p2"), p.at("p3"), p.at("g"), p.at("h")});
    case ModelTag::III:
      return build_model_III({p.at("E1"), p.at("E2"), p.at("Tc"), p.at("Tr"), p.at("Th"), p.at("p1"),
                              p.at("p_h"), p.at("p_r"), p.at("g")});
    case ModelTag::Custom: break;
  }
  throw ConfigError("custom models are not described by named parameters");
}

DerivedRule DerivedRule::parse(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ConfigError("rule '" + text + "' has no '='");
  DerivedRule rule;
  rule.target = trim(text.substr(0, eq));
  if (rule.target.empty()) throw ConfigError("rule '" + text + "' has no target");
  const std::string rhs = text.substr(eq + 1);

  // Split at top-level + and - signs that are not part of an exponent.
  std::vector<std::pair<double, std::string>> pieces;
  std::string current;
  double sign = 1.0;
  bool pending_sign = false;
  auto flush = [&]() {
    const std::string piece = trim(current);
    if (piece.empty()) throw ConfigError("rule '" + text + "' has an empty term");
    pieces.emplace_back(sign, piece);
    current.clear();
    sign = 1.0;
    pending_sign = false;
  };
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    const char c = rhs[i];
    const bool exponent_sign = (c == '+' || c == '-') && i >= 2 && (rhs[i - 1] == 'e' || rhs[i - 1] == 'E') &&
                               std::isdigit(static_cast<unsigned char>(rhs[i - 2]));
    if ((c == '+' || c == '-') && !exponent_sign) {
      if (!trim(current).empty()) flush();
      else if (pending_sign) throw ConfigError("rule '" + text + "' has consecutive signs");
      sign = (c == '-') ? -1.0 : 1.0;
      pending_sign = true;
    } else {
      current += c;
    }
  }
  flush();

  auto parse_number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw ConfigError("rule '" + text + "': '" + s + "' is not a number");
    }
    if (trim(s.substr(used)).size()) throw ConfigError("rule '" + text + "': '" + s + "' is not a number");
    return v;
  };
  auto is_identifier = [](const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; });
  };

  for (const auto& [sgn, piece] : pieces) {
    const auto star = piece.find('*');
    if (star != std::string::npos) {
      const std::string coef = trim(piece.substr(0, star));
      const std::string name = trim(piece.substr(star + 1));
      if (!is_identifier(name)) throw ConfigError("rule '" + text + "': '" + name + "' is not a parameter name");
      rule.terms.emplace_back(sgn * parse_number(coef), name);
    } else if (is_identifier(piece)) {
      rule.terms.emplace_back(sgn, piece);
    } else {
      rule.constant += sgn * parse_number(piece);
    }
  }
  return rule;
}

std::string DerivedRule::to_string() const {
  std::ostringstream os;
  os << target << " =";
  bool first = true;
  for (const auto& [coef, name] : terms) {
    os << (first ? " " : (coef < 0 ? " - " : " + "));
    const double mag = first ? coef : std::abs(coef);
    if (mag != 1.0) os << format_number(mag) << "*";
    os << name;
    first = false;
  }
  if (constant != 0.0 || terms.empty()) {
    os << (first ? " " : (constant < 0 ? " - " : " + ")) << format_number(first ? constant : std::abs(constant));
  }
  return os.str();
}

double DerivedRule::evaluate(const ParameterSet& params) const {
  double v = constant;
  for (const auto& [coef, name] : terms) {
    const auto it = params.find(name);
    if (it == params.end()) throw ConfigError("rule for '" + target + "' refers to unset parameter '" + name + "'");
    v += coef * it->second;
  }
  return v;
}

void apply_rules(const std::vector<DerivedRule>& rules, ParameterSet& params) {
  std::map<std::string, std::size_t> by_target;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (!by_target.emplace(rules[i].target, i).second) {
      throw ConfigError("parameter '" + rules[i].target + "' is the target of more than one rule");
    }
  }
  // Depth-first topological order; a grey node reached again means a cycle.
  std::vector<int> state(rules.size(), 0);
  std::vector<std::size_t> order;
  std::function<void(std::size_t)> visit = [&](std::size_t i) {
    if (state[i] == 2) return;
    if (state[i] == 1) throw ConfigError("derived rules form a cycle through '" + rules[i].target + "'");
    state[i] = 1;
    for (const auto& [coef, name] : rules[i].terms) {
      const auto it = by_target.find(name);
      if (it != by_target.end()) visit(it->second);
    }
    state[i] = 2;
    order.push_back(i);
  };
  for (std::size_t i = 0; i < rules.size(); ++i) visit(i);
  for (std::size_t i : order) params[rules[i].target] = rules[i].evaluate(params);
}

void SweepConfig::validate() const {
  if (model == ModelTag::Custom) throw ConfigError("sweeps need a built-in model (I, II or III)");
  if (!is_known(model, axis)) {
    throw ConfigError("sweep axis '" + axis + "' is not a parameter of model " + to_string(model));
  }
  if (values.empty()) throw ConfigError("sweep axis has no values");
  if (values.size() > 1) {
    const bool increasing = values[1] > values[0];
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (increasing ? !(values[i] > values[i - 1]) : !(values[i] < values[i - 1])) {
        throw ConfigError("sweep axis values must be strictly monotone");
      }
    }
  }
  for (const auto& rule : rules) {
    if (rule.target == axis) throw ConfigError("a rule may not overwrite the sweep axis '" + axis + "'");
    if (!is_known(model, rule.target)) throw ConfigError("rule target '" + rule.target + "' is not a parameter");
    for (const auto& [coef, name] : rule.terms) {
      if (!is_known(model, name)) throw ConfigError("rule source '" + name + "' is not a parameter");
    }
  }
  if (threads < 1) throw ConfigError("threads must be >= 1");
  // Surface cycles before any work is done.
  ParameterSet probe = fixed;
  probe[axis] = values.front();
  apply_rules(rules, probe);
}

std::string row_flags_to_string(std::uint32_t flags) {
  if (flags == kRowOk) return "ok";
  static const std::vector<std::pair<std::uint32_t, const char*>> names{
      {kRowUnconverged, "unconverged"},
      {kRowNonUnique, "nonunique"},
      {kRowInvertedTemperature, "inverted"},
      {kRowInfiniteTemperature, "infinite_T"},
      {kRowBuildError, "error"},
      {kRowOutsideWeakCoupling, "strong_coupling"},
  };
  std::string out;
  for (const auto& [bit, name] : names) {
    if (flags & bit) {
      if (!out.empty()) out += '|';
      out += name;
    }
  }
  return out;
}

std::vector<std::string> SweepTable::columns() const {
  std::vector<std::string> cols{axis};
  for (std::size_t i = 1; i <= particles; ++i) cols.push_back("T" + std::to_string(i));
  for (std::size_t i = 1; i <= particles; ++i) cols.push_back("Q" + std::to_string(i));
  cols.push_back("residual");
  cols.push_back("flags");
  return cols;
}

std::vector<double> SweepTable::column(const std::string& name) const {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    if (name == axis) {
      out.push_back(row.axis_value);
    } else if (name == "residual") {
      out.push_back(row.residual);
    } else if (name.size() >= 2 && (name[0] == 'T' || name[0] == 'Q') &&
               std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      const std::size_t i = std::stoul(name.substr(1));
      if (i < 1 || i > particles) throw ConfigError("no column '" + name + "'");
      if (name[0] == 'T') out.push_back(i <= row.temperatures.size() ? row.temperatures[i - 1].value : nan);
      else out.push_back(i <= row.currents.size() ? row.currents[i - 1] : nan);
    } else {
      throw ConfigError("no column '" + name + "'");
    }
  }
  return out;
}

namespace {

SweepRow error_row(std::size_t particles, const ParameterSet& params, const std::string& message) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  SweepRow row;
  row.params = params;
  row.flags = kRowBuildError | kRowUnconverged;
  row.error = message;
  row.residual = nan;
  row.uniqueness_gap = nan;
  row.temperatures.assign(particles, TemperatureReading{nan, nan, nan, TemperatureFlag::Normal});
  row.currents.assign(particles, nan);
  return row;
}

}  // namespace

SweepRow solve_point(ModelTag tag, const ParameterSet& params, const SteadyStateOptions& solver) {
  SweepRow row;
  row.params = params;
  try {
    const FridgeModel model = build_model(tag, params);
    if (!model.warnings().empty()) row.flags |= kRowOutsideWeakCoupling;
    const SteadyStateResult ss = steady_state(model, solver);
    row.residual = ss.residual;
    row.uniqueness_gap = ss.uniqueness_gap;
    if (!ss.converged) row.flags |= kRowUnconverged;
    if (solver.compute_uniqueness_gap && ss.uniqueness_gap < solver.uniqueness_threshold) row.flags |= kRowNonUnique;
    row.temperatures = temperatures(model, ss.rho);
    for (const auto& t : row.temperatures) {
      if (t.flag == TemperatureFlag::Inverted) row.flags |= kRowInvertedTemperature;
      if (t.flag == TemperatureFlag::Infinite) row.flags |= kRowInfiniteTemperature;
    }
    row.currents = heat_currents(model, ss.rho).per_particle;
  } catch (const std::exception& e) {
    return error_row(tag == ModelTag::III ? 2 : 3, params, e.what());
  }
  return row;
}

SweepTable run_sweep(const SweepConfig& config) {
  config.validate();
  SweepTable table;
  table.name = config.name;
  table.model = config.model;
  table.axis = config.axis;
  table.particles = (config.model == ModelTag::III) ? 2 : 3;
  table.rows.resize(config.values.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < config.values.size(); i = next++) {
      ParameterSet params = config.fixed;
      params[config.axis] = config.values[i];
      SweepRow row;
      try {
        apply_rules(config.rules, params);
        row = solve_point(config.model, params, config.solver);
      } catch (const std::exception& e) {
        row = error_row(table.particles, params, e.what());
      }
      row.axis_value = config.values[i];
      table.rows[i] = std::move(row);
    }
  };
  const auto nthreads = std::min<std::size_t>(static_cast<std::size_t>(config.threads), config.values.size());
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  }

  table.metadata = config.metadata;
  table.metadata["model"] = to_string(config.model);
  table.metadata["axis"] = config.axis;
  table.metadata["stationarity_tol"] = format_number(config.solver.tol);
  for (const auto& [key, value] : config.fixed) {
    if (key != config.axis) table.metadata["param." + key] = format_number(value);
  }
  if (!config.rules.empty()) {
    std::string joined;
    for (const auto& r : config.rules) joined += (joined.empty() ? "" : "; ") + r.to_string();
    table.metadata["rules"] = joined;
  }
  double worst = 0.0;
  std::size_t flagged = 0;
  for (const auto& row : table.rows) {
    if (std::isfinite(row.residual)) worst = std::max(worst, row.residual);
    if (row.flags & (kRowUnconverged | kRowBuildError)) ++flagged;
  }
  table.metadata["max_residual"] = format_number(worst);
  table.metadata["unconverged_rows"] = std::to_string(flagged);
  return table;
}

std::vector<double> linspace(double start, double stop, std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = count == 1 ? start : start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return out;
}

std::vector<double> logspace(double start, double stop, std::size_t count) {
  if (!(start > 0.0) || !(stop > 0.0)) throw ConfigError("logspace needs positive bounds");
  auto exps = linspace(std::log10(start), std::log10(stop), count);
  for (auto& e : exps) e = std::pow(10.0, e);
  if (count > 0) {
    exps.front() = start;
    exps.back() = stop;
  }
  return exps;
}

namespace {

ParameterSet model_i_defaults() {
  return {{"E1", 1.0}, {"E2", 3.0}, {"Tc", 1.0}, {"Tr", 1.0}, {"Th", 1.0},
          {"p1", 1e-3}, {"p2", 1e-3}, {"p3", 1e-3}, {"g", 1e-3}};
}

const char* kDefaultsNote =
    "unstated parameters use E1=1, E2=3 (E3=2), Tr=Tc=1, g/p=1, p=1e-3*E1";

SweepConfig curve(std::string name, ModelTag tag, ParameterSet fixed, std::string axis, std::vector<double> values) {
  SweepConfig c;
  c.name = std::move(name);
  c.model = tag;
  c.axis = std::move(axis);
  fixed.erase(c.axis);
  c.fixed = std::move(fixed);
  c.values = std::move(values);
  return c;
}

FigurePreset make_fig1() {
  FigurePreset f{"fig1", "cold qubit stationary temperature against hot bath temperature, several Tc", {}};
  for (double tc : {1.0, 0.9, 0.8}) {
    auto p = model_i_defaults();
    p["Tc"] = tc;
    std::ostringstream name;
    name << "Tc" << tc;
    auto c = curve(name.str(), ModelTag::I, p, "Th", linspace(1.0, 20.0, 39));
    c.metadata["curve"] = name.str();
    f.curves.push_back(std::move(c));
  }
  return f;
}

FigurePreset make_fig2() {
  FigurePreset f{"fig2", "stationary heat current of the cold qubit against hot bath temperature", {}};
  auto c = curve("Q1", ModelTag::I, model_i_defaults(), "Th", linspace(0.5, 20.0, 40));
  f.curves.push_back(std::move(c));
  return f;
}

FigurePreset make_fig3() {
  FigurePreset f{"fig3", "cold qubit temperature against spiral (p2) and engine (p3) bath rates", {}};
  auto p = model_i_defaults();
  p["Th"] = 4.0;
  for (const char* axis : {"p2", "p3"}) {
    auto c = curve(axis, ModelTag::I, p, axis, logspace(1e-4, 10.0, 26));
    c.metadata["curve"] = axis;
    f.curves.push_back(std::move(c));
  }
  return f;
}

FigurePreset make_fig4() {
  FigurePreset f{"fig4", "cold qubit temperature against spiral gap E2 with E3/Th held at 0.1", {}};
  auto p = model_i_defaults();
  p["Tc"] = 10.0;
  p["Tr"] = 10.0;
  p["p1"] = 0.0;
  auto c = curve("E2", ModelTag::I, p, "E2", logspace(2.0, 200.0, 21));
  c.rules.push_back(DerivedRule::parse("Th = 10*E2 - 10*E1"));
  c.metadata["E3_over_Th"] = "0.1";
  c.metadata["note"] =
      "perfectly insulated target (p1=0) and Tc=Tr=10 keep the coldest populations above double-precision "
      "resolution over the two-decade E2 range";
  f.curves.push_back(std::move(c));
  return f;
}

FigurePreset make_fig5() {
  FigurePreset f{"fig5", "cold qubit temperature against its own bath rate p1 towards perfect insulation", {}};
  for (double th : {4.0, 8.0, 12.0}) {
    auto p = model_i_defaults();
    p["Th"] = th;
    std::ostringstream name;
    name << "Th" << th;
    auto c = curve(name.str(), ModelTag::I, p, "p1", logspace(1e-2, 1e-8, 13));
    const auto limit = perfect_insulation_limit(1.0, th, 1.0, 2.0);
    c.metadata["curve"] = name.str();
    c.metadata["closed_form_limit"] = format_number(limit.value);
    f.curves.push_back(std::move(c));
  }
  return f;
}

FigurePreset make_fig6() {
  FigurePreset f{"fig6", "qubit-qutrit fridge: cold qubit temperature against hot bath temperature", {}};
  const double p = 1e-3;
  for (auto [g_over_p, h_over_p] : {std::pair{1.0, 1.0}, std::pair{2.0, 1.0}, std::pair{1.0, 2.0}}) {
    ParameterSet params{{"E1", 1.0}, {"E2", 1.0}, {"Tc", 1.0}, {"Tr", 1.0}, {"Th", 1.0}, {"p1", p},
                        {"p2", p},   {"p3", p},   {"g", g_over_p * p}, {"h", h_over_p * p}};
    std::ostringstream name;
    name << "g" << g_over_p << "_h" << h_over_p;
    auto c = curve(name.str(), ModelTag::II, params, "Th", linspace(0.5, 20.0, 40));
    c.metadata["curve"] = name.str();
    c.metadata["p"] = format_number(p);
    c.metadata["Tc"] = "1";
    c.metadata["E"] = "1";
    c.metadata["g_over_p"] = format_number(g_over_p);
    c.metadata["h_over_p"] = format_number(h_over_p);
    f.curves.push_back(std::move(c));
  }
  return f;
}

}  // namespace

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids{"fig1", "fig2", "fig3", "fig4", "fig5", "fig6"};
  return ids;
}

FigurePreset preset(const std::string& figure_id) {
  FigurePreset f;
  if (figure_id == "fig1") f = make_fig1();
  else if (figure_id == "fig2") f = make_fig2();
  else if (figure_id == "fig3") f = make_fig3();
  else if (figure_id == "fig4") f = make_fig4();
  else if (figure_id == "fig5") f = make_fig5();
  else if (figure_id == "fig6") f = make_fig6();
  else {
    std::string valid;
    for (const auto& id : figure_ids()) valid += (valid.empty() ? "" : ", ") + id;
    throw ConfigError("unknown figure '" + figure_id + "'; valid ids: " + valid);
  }
  for (auto& c : f.curves) {
    c.metadata["figure"] = f.id;
    c.metadata["description"] = f.description;
    c.metadata["defaults"] = kDefaultsNote;
  }
  return f;
}

P1Limit extrapolate_p1_limit(const SweepConfig& base, const std::vector<double>& p1_sequence) {
  if (p1_sequence.size() < 4) throw ConfigError("p1 sequence needs at least 4 points");
  for (std::size_t i = 0; i < p1_sequence.size(); ++i) {
    if (!(p1_sequence[i] > 0.0)) throw ConfigError("p1 sequence must be positive");
    if (i > 0 && !(p1_sequence[i] < p1_sequence[i - 1])) throw ConfigError("p1 sequence must be strictly decreasing");
  }
  SweepConfig cfg = base;
  cfg.axis = "p1";
  cfg.values = p1_sequence;
  cfg.fixed.erase("p1");
  const SweepTable table = run_sweep(cfg);

  P1Limit out;
  out.p1 = p1_sequence;
  out.t1 = table.column("T1");
  bool rows_ok = true;
  for (const auto& row : table.rows) rows_ok = rows_ok && !(row.flags & (kRowUnconverged | kRowBuildError));

  double scale = 1.0;
  for (double t : out.t1) scale = std::max(scale, std::abs(t));
  const double floor = 1e-9 * scale;

  out.monotone = true;
  bool contracting = true;
  for (std::size_t k = 0; k + 1 < out.t1.size(); ++k) {
    const double d = out.t1[k] - out.t1[k + 1];
    out.differences.push_back(d);
    if (d < -floor) out.monotone = false;
    if (k > 0) {
      const double prev = std::abs(out.differences[k - 1]);
      if (std::abs(d) > floor && std::abs(d) >= prev) contracting = false;
    }
  }

  const std::size_t n = out.t1.size();
  const double pa = out.p1[n - 2];
  const double pb = out.p1[n - 1];
  const double ta = out.t1[n - 2];
  const double tb = out.t1[n - 1];
  out.estimate = tb - pb * (ta - tb) / (pa - pb);
  out.converged = rows_ok && contracting && std::isfinite(out.estimate);
  return out;
}

ZenoScan zeno_scan(const SweepConfig& config) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (double v : config.values) {
    if (v > 0.0) lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(hi / lo >= 100.0)) throw ConfigError("Zeno scan axis must span at least two orders of magnitude");
  if (config.axis.empty() || config.axis[0] != 'p') throw ConfigError("Zeno scan axis must be a bath rate");

  ZenoScan scan;
  scan.table = run_sweep(config);
  auto t1 = scan.table.column("T1");
  for (auto& t : t1) {
    if (!std::isfinite(t)) t = std::numeric_limits<double>::infinity();
  }
  const auto min_it = std::min_element(t1.begin(), t1.end());
  const double max_finite = *std::max_element(t1.begin(), t1.end(), [](double a, double b) {
    return (std::isfinite(a) ? a : -1.0) < (std::isfinite(b) ? b : -1.0);
  });
  const double flat_tol = 1e-9 * std::max(1.0, std::abs(*min_it));
  if (max_finite - *min_it <= flat_tol) {
    scan.argmin = 0;
  } else {
    scan.argmin = static_cast<std::size_t>(min_it - t1.begin());
  }
  scan.min_t1 = t1[scan.argmin];
  scan.argmin_rate = config.values[scan.argmin];
  scan.interior = scan.argmin > 0 && scan.argmin + 1 < t1.size() && t1.front() > scan.min_t1 &&
                  t1.back() > scan.min_t1;
  return scan;
}

}  // namespace qfridge

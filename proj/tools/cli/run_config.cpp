#include "run_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace qfridge::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n\"");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n\"");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, sep)) {
    item = trim(item);
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

const Section* find_section(const ConfigFile& config, const std::string& name) {
  const auto it = config.find(name);
  return it == config.end() ? nullptr : &it->second;
}

const std::string* find_key(const ConfigFile& config, const std::string& section, const std::string& key) {
  const Section* s = find_section(config, section);
  if (!s) return nullptr;
  const auto it = s->find(key);
  return it == s->end() ? nullptr : &it->second;
}

std::string require_key(const ConfigFile& config, const std::string& section, const std::string& key) {
  const std::string* v = find_key(config, section, key);
  if (!v) throw UsageError("missing required field '" + key + "' in section [" + section + "]");
  return *v;
}

double get_double(const ConfigFile& config, const std::string& section, const std::string& key, double fallback) {
  const std::string* v = find_key(config, section, key);
  return v ? parse_double(*v, section + "." + key) : fallback;
}

std::vector<int> parse_levels(const std::string& text, const std::string& field) {
  std::vector<int> out;
  for (double v : parse_list(text, field)) {
    if (v != std::floor(v) || v < 0) throw UsageError("field '" + field + "' must list non-negative integers");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

}  // namespace

ConfigFile parse_config(const std::string& text, const std::string& origin) {
  boost::property_tree::ptree tree;
  std::istringstream is(text);
  try {
    boost::property_tree::ini_parser::read_ini(is, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw UsageError(origin + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  ConfigFile config;
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      throw UsageError(origin + ": key '" + section + "' appears outside any [section]");
    }
    auto& out = config[section];
    for (const auto& [key, value] : body) out[key] = trim(value.data());
  }
  return config;
}

ConfigFile load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

void apply_overrides(ConfigFile& config, const std::vector<std::string>& overrides) {
  for (const auto& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("override '" + item + "' must look like section.key=value");
    const std::string path = trim(item.substr(0, eq));
    const auto dot = path.rfind('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == path.size()) {
      throw UsageError("override '" + item + "' must look like section.key=value");
    }
    config[path.substr(0, dot)][path.substr(dot + 1)] = trim(item.substr(eq + 1));
  }
}

double parse_double(const std::string& text, const std::string& field) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw UsageError("field '" + field + "': '" + text + "' is not a number");
  }
  if (used != t.size() || std::isnan(v)) throw UsageError("field '" + field + "': '" + text + "' is not a number");
  return v;
}

std::vector<double> parse_list(const std::string& text, const std::string& field) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_double(part, field));
  if (out.empty()) throw UsageError("field '" + field + "' is empty");
  return out;
}

ModelTag model_tag(const ConfigFile& config) {
  const std::string tag = require_key(config, "model", "tag");
  try {
    return model_tag_from_string(tag);
  } catch (const std::exception& e) {
    throw UsageError(std::string("field 'model.tag': ") + e.what());
  }
}

ParameterSet model_parameters(const ConfigFile& config) {
  const ModelTag tag = model_tag(config);
  if (tag == ModelTag::Custom) return {};
  ParameterSet params;
  if (const Section* s = find_section(config, "params")) {
    for (const auto& [key, value] : *s) params[key] = parse_double(value, "params." + key);
  }
  try {
    return resolve_parameters(tag, params);
  } catch (const ConfigError& e) {
    throw UsageError(std::string("section [params]: ") + e.what());
  }
}

FridgeModel make_model(const ConfigFile& config) {
  const ModelTag tag = model_tag(config);
  if (tag != ModelTag::Custom) return build_model(tag, model_parameters(config));

  std::map<int, ParticleSpec> particles;
  for (const auto& [name, section] : config) {
    if (name.rfind("particle.", 0) != 0) continue;
    const int index = static_cast<int>(parse_double(name.substr(9), "section [" + name + "]"));
    const auto it = section.find("energies");
    if (it == section.end()) throw UsageError("missing required field 'energies' in section [" + name + "]");
    particles[index].energies = parse_list(it->second, name + ".energies");
  }
  if (particles.empty()) throw UsageError("custom model needs at least one [particle.N] section");
  for (int expected = 1; const auto& [index, spec] : particles) {
    if (index != expected++) throw UsageError("particle sections must be numbered 1, 2, ... without gaps");
  }

  for (const auto& [name, section] : config) {
    if (name.rfind("channel.", 0) != 0) continue;
    auto field = [&](const std::string& key) {
      const auto it = section.find(key);
      if (it == section.end()) throw UsageError("missing required field '" + key + "' in section [" + name + "]");
      return it->second;
    };
    const int particle = static_cast<int>(parse_double(field("particle"), name + ".particle"));
    if (!particles.contains(particle)) throw UsageError("section [" + name + "] names unknown particle");
    const std::string kind = field("kind");
    const double temperature = parse_double(field("temperature"), name + ".temperature");
    const double rate = parse_double(field("rate"), name + ".rate");
    if (kind == "full_reset") {
      particles[particle].baths.push_back(BathChannel::full_reset(temperature, rate));
    } else if (kind == "transition_jump") {
      const auto levels = parse_levels(field("transition"), name + ".transition");
      if (levels.size() != 2) throw UsageError("field '" + name + ".transition' needs two levels");
      particles[particle].baths.push_back(BathChannel::transition_jump(levels[0], levels[1], temperature, rate));
    } else {
      throw UsageError("field '" + name + ".kind' must be full_reset or transition_jump");
    }
  }

  std::vector<InteractionTerm> interactions;
  for (const auto& [name, section] : config) {
    if (name.rfind("interaction.", 0) != 0) continue;
    auto field = [&](const std::string& key) {
      const auto it = section.find(key);
      if (it == section.end()) throw UsageError("missing required field '" + key + "' in section [" + name + "]");
      return it->second;
    };
    interactions.push_back({parse_double(field("coupling"), name + ".coupling"),
                            parse_levels(field("bra"), name + ".bra"), parse_levels(field("ket"), name + ".ket")});
  }

  std::vector<ParticleSpec> list;
  for (auto& [index, spec] : particles) list.push_back(std::move(spec));
  return FridgeModel(std::move(list), std::move(interactions), ModelTag::Custom);
}

SteadyStateOptions solver_options(const ConfigFile& config) {
  SteadyStateOptions o;
  o.tol = get_double(config, "solver", "tol", o.tol);
  o.uniqueness_threshold = get_double(config, "solver", "uniqueness_threshold", o.uniqueness_threshold);
  if (!(o.tol > 0.0)) throw UsageError("field 'solver.tol' must be positive");
  return o;
}

EvolveSetup evolve_setup(const ConfigFile& config) {
  EvolveSetup s;
  s.options.t_final = parse_double(require_key(config, "evolve", "t_final"), "evolve.t_final");
  s.options.dt = get_double(config, "evolve", "dt", s.options.dt);
  s.options.sample_every = static_cast<int>(get_double(config, "evolve", "sample_every", 1));
  if (const std::string* v = find_key(config, "evolve", "initial")) s.initial = *v;
  s.initial_temperature = get_double(config, "evolve", "initial_temperature", s.initial_temperature);
  if (s.initial != "maximally_mixed" && s.initial != "ground" && s.initial != "thermal") {
    throw UsageError("field 'evolve.initial' must be maximally_mixed, ground or thermal");
  }
  return s;
}

ComplexMatrix initial_state(const FridgeModel& model, const EvolveSetup& setup) {
  const int d = model.shape().total_dim();
  if (setup.initial == "maximally_mixed") return ComplexMatrix::Identity(d, d) / static_cast<double>(d);
  if (setup.initial == "ground") {
    ComplexMatrix rho = ComplexMatrix::Zero(d, d);
    rho(0, 0) = 1.0;
    return rho;
  }
  ComplexMatrix rho = thermal_state(model.particle(0), setup.initial_temperature);
  for (std::size_t i = 1; i < model.particles().size(); ++i) {
    rho = kron(rho, thermal_state(model.particle(i), setup.initial_temperature));
  }
  return rho;
}

SweepConfig sweep_config(const ConfigFile& config) {
  SweepConfig c;
  c.model = model_tag(config);
  if (c.model == ModelTag::Custom) throw UsageError("sweeps need model.tag = I, II or III");
  c.axis = require_key(config, "sweep", "axis");
  c.name = find_key(config, "sweep", "name") ? *find_key(config, "sweep", "name") : c.axis;
  if (const Section* s = find_section(config, "params")) {
    for (const auto& [key, value] : *s) c.fixed[key] = parse_double(value, "params." + key);
  }
  c.fixed.erase(c.axis);
  if (const std::string* v = find_key(config, "sweep", "values")) {
    c.values = parse_list(*v, "sweep.values");
  } else {
    const double start = parse_double(require_key(config, "sweep", "start"), "sweep.start");
    const double stop = parse_double(require_key(config, "sweep", "stop"), "sweep.stop");
    const double count = parse_double(require_key(config, "sweep", "count"), "sweep.count");
    if (count < 1 || count != std::floor(count)) throw UsageError("field 'sweep.count' must be a positive integer");
    const std::string spacing = find_key(config, "sweep", "spacing") ? *find_key(config, "sweep", "spacing") : "linear";
    if (spacing == "linear") c.values = linspace(start, stop, static_cast<std::size_t>(count));
    else if (spacing == "log") c.values = logspace(start, stop, static_cast<std::size_t>(count));
    else throw UsageError("field 'sweep.spacing' must be linear or log");
  }
  if (const std::string* v = find_key(config, "sweep", "rules")) {
    for (const auto& text : split(*v, ';')) c.rules.push_back(DerivedRule::parse(text));
  }
  c.threads = static_cast<int>(get_double(config, "sweep", "threads", 1));
  c.solver = solver_options(config);
  // Tr defaults to Tc for models I and II unless swept or derived.
  if ((c.model == ModelTag::I || c.model == ModelTag::II) && !c.fixed.contains("Tr") && c.axis != "Tr" &&
      std::none_of(c.rules.begin(), c.rules.end(), [](const DerivedRule& r) { return r.target == "Tr"; })) {
    const bool tc_fixed = c.fixed.contains("Tc");
    const bool tc_varies = c.axis == "Tc" ||
                           std::any_of(c.rules.begin(), c.rules.end(), [](const DerivedRule& r) { return r.target == "Tc"; });
    if (tc_varies) c.rules.push_back(DerivedRule::parse("Tr = Tc"));
    else if (tc_fixed) c.fixed["Tr"] = c.fixed.at("Tc");
  }
  try {
    c.validate();
  } catch (const ConfigError& e) {
    throw UsageError(std::string("section [sweep]: ") + e.what());
  }
  return c;
}

std::map<std::string, std::string> flatten(const ConfigFile& config) {
  std::map<std::string, std::string> out;
  for (const auto& [section, body] : config) {
    for (const auto& [key, value] : body) out[section + "." + key] = value;
  }
  return out;
}

}  // namespace qfridge::cli

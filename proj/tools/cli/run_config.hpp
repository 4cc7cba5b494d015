#pragma once

// Flat INI-style run configuration:
//
//   [model]   tag = I | II | III | custom
//   [params]  named model parameters (E1, E2, Tc, Tr, Th, p1, ... )
//   [solver]  tol, uniqueness_threshold
//   [evolve]  t_final, dt, sample_every, initial = maximally_mixed | ground | thermal, initial_temperature
//   [sweep]   axis, values = a, b, c | start/stop/count/spacing, rules = "Th = 10*E2; ...", threads
//
// Custom models use [particle.N] (energies), [channel.K] (particle, kind,
// temperature, rate, transition) and [interaction.K] (coupling, bra, ket).

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qfridge/dynamics.hpp"
#include "qfridge/experiments.hpp"

namespace qfridge::cli {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Section = std::map<std::string, std::string>;
using ConfigFile = std::map<std::string, Section>;

ConfigFile load_config(const std::string& path);
ConfigFile parse_config(const std::string& text, const std::string& origin = "<string>");

/// Applies "section.key=value" overrides; the last dot separates the key.
void apply_overrides(ConfigFile& config, const std::vector<std::string>& overrides);

double parse_double(const std::string& text, const std::string& field);
std::vector<double> parse_list(const std::string& text, const std::string& field);

ModelTag model_tag(const ConfigFile& config);

/// Named parameters for built-in tags, after defaults are filled in.
ParameterSet model_parameters(const ConfigFile& config);

FridgeModel make_model(const ConfigFile& config);

SteadyStateOptions solver_options(const ConfigFile& config);

struct EvolveSetup {
  EvolveOptions options;
  std::string initial = "maximally_mixed";
  double initial_temperature = 1.0;
};
EvolveSetup evolve_setup(const ConfigFile& config);
ComplexMatrix initial_state(const FridgeModel& model, const EvolveSetup& setup);

SweepConfig sweep_config(const ConfigFile& config);

/// Every key=value in the resolved configuration, "section.key" -> value.
std::map<std::string, std::string> flatten(const ConfigFile& config);

}  // namespace qfridge::cli

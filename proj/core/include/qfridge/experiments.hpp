#pragma once

// Parameter sweeps over the built-in models, figure presets, the
// perfect-insulation extrapolation and the Zeno scan.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qfridge/dynamics.hpp"
#include "qfridge/models.hpp"
#include "qfridge/observables.hpp"

namespace qfridge {

/// Raised for malformed named-parameter sets, rules or sweep configurations.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using ParameterSet = std::map<std::string, double>;

/// Parameter names understood by a model tag, in canonical order.
const std::vector<std::string>& parameter_names(ModelTag tag);

/// Fills optional parameters (Tr defaults to Tc for models I and II) and
/// rejects unknown or missing names.
ParameterSet resolve_parameters(ModelTag tag, const ParameterSet& params);

FridgeModel build_model(ModelTag tag, const ParameterSet& params);

/// target = constant + sum_k coefficient_k * source_k
struct DerivedRule {
  std::string target;
  double constant = 0.0;
  std::vector<std::pair<double, std::string>> terms;

  /// Parses "Th = 10*E2 - 10*E1 + 0.5".
  static DerivedRule parse(const std::string& text);
  std::string to_string() const;
  double evaluate(const ParameterSet& params) const;
};

/// Applies rules in dependency order. Throws ConfigError on cycles.
void apply_rules(const std::vector<DerivedRule>& rules, ParameterSet& params);

struct SweepConfig {
  std::string name;
  ModelTag model = ModelTag::I;
  ParameterSet fixed;
  std::string axis;
  std::vector<double> values;  // strictly monotone
  std::vector<DerivedRule> rules;
  SteadyStateOptions solver;
  int threads = 1;
  std::map<std::string, std::string> metadata;

  void validate() const;
};

enum RowFlag : std::uint32_t {
  kRowOk = 0,
  kRowUnconverged = 1u << 0,
  kRowNonUnique = 1u << 1,
  kRowInvertedTemperature = 1u << 2,
  kRowInfiniteTemperature = 1u << 3,
  kRowBuildError = 1u << 4,
  kRowOutsideWeakCoupling = 1u << 5,
};

std::string row_flags_to_string(std::uint32_t flags);

struct SweepRow {
  double axis_value = 0.0;
  ParameterSet params;  // after rules
  std::vector<TemperatureReading> temperatures;
  std::vector<double> currents;
  double residual = 0.0;
  double uniqueness_gap = 0.0;
  std::uint32_t flags = kRowOk;
  std::string error;  // when the model could not be built or solved
};

struct SweepTable {
  std::string name;
  ModelTag model = ModelTag::I;
  std::string axis;
  std::size_t particles = 0;
  std::vector<SweepRow> rows;
  std::map<std::string, std::string> metadata;

  /// axis, T1..Tn, Q1..Qn, residual, flags
  std::vector<std::string> columns() const;
  /// Numeric column by name ("T1", "Q2", "residual" or the axis name).
  std::vector<double> column(const std::string& name) const;
};

SweepTable run_sweep(const SweepConfig& config);

/// Solves one parameter point and evaluates every observable.
SweepRow solve_point(ModelTag tag, const ParameterSet& params, const SteadyStateOptions& solver);

struct FigurePreset {
  std::string id;
  std::string description;
  std::vector<SweepConfig> curves;
};

const std::vector<std::string>& figure_ids();
/// Throws ConfigError listing the valid ids for an unknown id.
FigurePreset preset(const std::string& figure_id);

struct P1Limit {
  double estimate = 0.0;
  bool converged = false;
  bool monotone = false;  // T1 non-increasing as p1 decreases
  std::vector<double> p1;
  std::vector<double> t1;
  std::vector<double> differences;  // t1[k] - t1[k+1]
};

/// Solves the stationary state along a decreasing p1 sequence and extrapolates
/// T1 linearly in p1 to p1 = 0.
P1Limit extrapolate_p1_limit(const SweepConfig& base, const std::vector<double>& p1_sequence);

struct ZenoScan {
  SweepTable table;
  std::size_t argmin = 0;
  double argmin_rate = 0.0;
  double min_t1 = 0.0;
  bool interior = false;
};

/// Runs a T1 sweep over a rate axis (two decades or more) and locates its minimum.
ZenoScan zeno_scan(const SweepConfig& config);

/// Evenly spaced values in linear or log scale, inclusive of both ends.
std::vector<double> linspace(double start, double stop, std::size_t count);
std::vector<double> logspace(double start, double stop, std::size_t count);

}  // namespace qfridge

#pragma once

#include <string>

#include "qfridge/experiments.hpp"

namespace qfridge {

/// 12 significant digits, "inf"/"-inf"/"nan" for non-finite values.
std::string format_value(double v);

/// "# key=value" metadata lines, a header row of column names, one line per axis sample.
std::string to_csv(const SweepTable& table);

/// {"name", "model", "axis", "metadata": {...}, "columns": [...], "data": {column: [...]}}.
/// Non-finite numbers are written as null.
std::string to_json(const SweepTable& table);

std::string to_csv(const P1Limit& limit);

}  // namespace qfridge

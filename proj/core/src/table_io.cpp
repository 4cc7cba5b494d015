#include "qfridge/table_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace qfridge {

std::string format_value(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

nlohmann::ordered_json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  // Round-trip through the 12-digit text form so JSON and CSV carry identical values.
  return std::stod(format_value(v));
}

}  // namespace

std::string to_csv(const SweepTable& table) {
  std::ostringstream os;
  os << "# name=" << table.name << '\n';
  for (const auto& [k, v] : table.metadata) os << "# " << k << '=' << v << '\n';
  const auto cols = table.columns();
  for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << cols[c];
  os << '\n';
  for (const auto& row : table.rows) {
    os << format_value(row.axis_value);
    for (std::size_t i = 0; i < table.particles; ++i) {
      os << ',' << format_value(i < row.temperatures.size() ? row.temperatures[i].value : NAN);
    }
    for (std::size_t i = 0; i < table.particles; ++i) {
      os << ',' << format_value(i < row.currents.size() ? row.currents[i] : NAN);
    }
    os << ',' << format_value(row.residual) << ',' << row_flags_to_string(row.flags) << '\n';
  }
  return os.str();
}

std::string to_json(const SweepTable& table) {
  nlohmann::ordered_json doc;
  doc["name"] = table.name;
  doc["model"] = to_string(table.model);
  doc["axis"] = table.axis;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : table.metadata) meta[k] = v;
  doc["metadata"] = meta;
  const auto cols = table.columns();
  doc["columns"] = cols;
  nlohmann::ordered_json data = nlohmann::ordered_json::object();
  for (const auto& name : cols) {
    if (name == "flags") {
      auto flags = nlohmann::ordered_json::array();
      for (const auto& row : table.rows) flags.push_back(row_flags_to_string(row.flags));
      data[name] = flags;
    } else {
      auto values = nlohmann::ordered_json::array();
      for (double v : table.column(name)) values.push_back(json_number(v));
      data[name] = values;
    }
  }
  doc["data"] = data;
  return doc.dump(2) + "\n";
}

std::string to_csv(const P1Limit& limit) {
  std::ostringstream os;
  os << "p1,T1\n";
  for (std::size_t i = 0; i < limit.p1.size(); ++i) {
    os << format_value(limit.p1[i]) << ',' << format_value(limit.t1[i]) << '\n';
  }
  os << "# limit," << format_value(limit.estimate) << ",converged=" << (limit.converged ? "true" : "false")
     << ",monotone=" << (limit.monotone ? "true" : "false") << '\n';
  return os.str();
}

}  // namespace qfridge

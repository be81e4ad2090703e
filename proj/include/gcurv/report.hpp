#pragma once

// Structured run reports: JSON, CSV and a plain table.
//
// JSON schema (keys in this order):
//   command      string   command line echo
//   surface      string   immersion name
//   m, k         int
//   chi          int | null
//   parameters   object   immersion parameters (name -> number)
//   inputs       object   numeric command inputs (point, eps, seed, ...)
//   resolution   [int]    quadrature nodes per axis kind, empty if unused
//   results      object   scalar results and residuals (name -> number)
//   status       string   "ok" | "check-failed"
//   wall_time_s  number
//
// CSV is two columns, `key,value`, one row per scalar; map entries are
// flattened as `parameters.<name>`, `inputs.<name>` and `results.<name>`,
// and the resolution list is joined with ';'. Both machine formats print
// floating-point values with 17 significant digits.

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gcurv/errors.hpp"

namespace gcurv {

using NamedValues = std::vector<std::pair<std::string, double>>;

struct RunReport {
  std::string command;
  std::string surface;
  int m = 0;
  int k = 0;
  std::optional<int> chi;
  NamedValues parameters;
  NamedValues inputs;
  std::vector<int> resolution;
  NamedValues results;
  std::string status = "ok";
  double wall_time_s = 0.0;

  bool operator==(const RunReport&) const = default;

  std::optional<double> result(const std::string& key) const {
    for (const auto& [k2, v] : results)
      if (k2 == key) return v;
    return std::nullopt;
  }
};

namespace detail {

inline nlohmann::ordered_json named_to_json(const NamedValues& values) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : values) j[k] = v;
  return j;
}

inline NamedValues named_from_json(const nlohmann::ordered_json& j, const std::string& field) {
  if (!j.is_object()) throw ParseError(field, "expected an object");
  NamedValues out;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_number()) throw ParseError(field + "." + k, "expected a number");
    out.emplace_back(k, v.get<double>());
  }
  return out;
}

inline std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return os.str();
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Full-string strtod; accepts subnormals, which std::stod rejects.
inline double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw std::invalid_argument("not a number");
  return v;
}

// Splits one CSV record into fields; handles quoted fields with "" escapes.
inline std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

template <class Json>
void write_json(std::ostream& os, const Json& j, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  const char* nl = indent > 0 ? "\n" : "";
  if (j.is_object() || j.is_array()) {
    const bool obj = j.is_object();
    if (j.empty()) {
      os << (obj ? "{}" : "[]");
      return;
    }
    os << (obj ? "{" : "[") << nl;
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) os << "," << nl;
      first = false;
      os << pad;
      if (obj) os << Json(it.key()).dump() << (indent > 0 ? ": " : ":");
      write_json(os, *it, indent, depth + 1);
    }
    os << nl << close_pad << (obj ? "}" : "]");
  } else if (j.is_number_float()) {
    const double v = j.template get<double>();
    if (!std::isfinite(v)) {
      os << "null";
      return;
    }
    std::string s = format_double(v);
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    os << s;
  } else {
    os << j.dump();
  }
}

}  // namespace detail

// Serializes with 17 significant digits for floating-point values.
template <class Json>
std::string dump_json(const Json& j, int indent = 2) {
  std::ostringstream os;
  detail::write_json(os, j, indent, 0);
  return os.str();
}

inline nlohmann::ordered_json to_json(const RunReport& r) {
  nlohmann::ordered_json j;
  j["command"] = r.command;
  j["surface"] = r.surface;
  j["m"] = r.m;
  j["k"] = r.k;
  j["chi"] = r.chi ? nlohmann::ordered_json(*r.chi) : nlohmann::ordered_json(nullptr);
  j["parameters"] = detail::named_to_json(r.parameters);
  j["inputs"] = detail::named_to_json(r.inputs);
  j["resolution"] = r.resolution;
  j["results"] = detail::named_to_json(r.results);
  j["status"] = r.status;
  j["wall_time_s"] = r.wall_time_s;
  return j;
}

inline RunReport report_from_json(const nlohmann::ordered_json& j) {
  auto req = [&](const char* key) -> const nlohmann::ordered_json& {
    if (!j.contains(key)) throw ParseError(key, "missing required field");
    return j.at(key);
  };
  RunReport r;
  r.command = req("command").get<std::string>();
  r.surface = req("surface").get<std::string>();
  r.m = req("m").get<int>();
  r.k = req("k").get<int>();
  if (!req("chi").is_null()) r.chi = req("chi").get<int>();
  r.parameters = detail::named_from_json(req("parameters"), "parameters");
  r.inputs = detail::named_from_json(req("inputs"), "inputs");
  r.resolution = req("resolution").get<std::vector<int>>();
  r.results = detail::named_from_json(req("results"), "results");
  r.status = req("status").get<std::string>();
  r.wall_time_s = req("wall_time_s").get<double>();
  return r;
}

inline std::string to_csv(const RunReport& r) {
  using detail::csv_quote;
  using detail::format_double;
  std::ostringstream os;
  os << "key,value\n";
  os << "command," << csv_quote(r.command) << "\n";
  os << "surface," << csv_quote(r.surface) << "\n";
  os << "m," << r.m << "\n";
  os << "k," << r.k << "\n";
  os << "chi," << (r.chi ? std::to_string(*r.chi) : "") << "\n";
  for (const auto& [k, v] : r.parameters) os << csv_quote("parameters." + k) << "," << format_double(v) << "\n";
  for (const auto& [k, v] : r.inputs) os << csv_quote("inputs." + k) << "," << format_double(v) << "\n";
  os << "resolution,";
  for (std::size_t i = 0; i < r.resolution.size(); ++i) os << (i ? ";" : "") << r.resolution[i];
  os << "\n";
  for (const auto& [k, v] : r.results) os << csv_quote("results." + k) << "," << format_double(v) << "\n";
  os << "status," << csv_quote(r.status) << "\n";
  os << "wall_time_s," << format_double(r.wall_time_s) << "\n";
  return os.str();
}

inline RunReport report_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != "key,value") throw ParseError("<header>", "expected 'key,value'");
  RunReport r;
  auto prefixed = [](const std::string& key, const std::string& prefix) {
    return key.rfind(prefix, 0) == 0 ? std::optional<std::string>(key.substr(prefix.size())) : std::nullopt;
  };
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = detail::csv_split(line);
    if (f.size() != 2) throw ParseError(f.empty() ? "<row>" : f[0], "expected two columns");
    const std::string& key = f[0];
    const std::string& val = f[1];
    try {
      if (key == "command") r.command = val;
      else if (key == "surface") r.surface = val;
      else if (key == "m") r.m = std::stoi(val);
      else if (key == "k") r.k = std::stoi(val);
      else if (key == "chi") r.chi = val.empty() ? std::nullopt : std::optional<int>(std::stoi(val));
      else if (key == "status") r.status = val;
      else if (key == "wall_time_s") r.wall_time_s = detail::parse_double(val);
      else if (key == "resolution") {
        std::istringstream rs(val);
        std::string item;
        while (std::getline(rs, item, ';'))
          if (!item.empty()) r.resolution.push_back(std::stoi(item));
      } else if (auto p = prefixed(key, "parameters.")) r.parameters.emplace_back(*p, detail::parse_double(val));
      else if (auto q = prefixed(key, "inputs.")) r.inputs.emplace_back(*q, detail::parse_double(val));
      else if (auto s = prefixed(key, "results.")) r.results.emplace_back(*s, detail::parse_double(val));
      else throw ParseError(key, "unknown key");
    } catch (const std::logic_error&) {
      throw ParseError(key, "malformed value '" + val + "'");
    }
  }
  return r;
}

inline std::string to_table(const RunReport& r) {
  std::ostringstream os;
  auto row = [&](const std::string& k, const std::string& v) { os << std::left << std::setw(34) << (k + " ") << v << "\n"; };
  row("command", r.command);
  row("surface", r.surface + " (m=" + std::to_string(r.m) + ", k=" + std::to_string(r.k) +
                     ", chi=" + (r.chi ? std::to_string(*r.chi) : "unknown") + ")");
  for (const auto& [k, v] : r.parameters) row("  param " + k, detail::format_double(v));
  for (const auto& [k, v] : r.inputs) row("  input " + k, detail::format_double(v));
  if (!r.resolution.empty()) {
    std::string res;
    for (std::size_t i = 0; i < r.resolution.size(); ++i) res += (i ? "x" : "") + std::to_string(r.resolution[i]);
    row("resolution", res);
  }
  for (const auto& [k, v] : r.results) row(k, detail::format_double(v));
  row("status", r.status);
  std::ostringstream t;
  t << std::fixed << std::setprecision(3) << r.wall_time_s << " s";
  row("wall time", t.str());
  return os.str();
}

}  // namespace gcurv

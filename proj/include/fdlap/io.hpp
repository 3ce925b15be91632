#pragma once

// Tabular output (CSV with a comment header block, or JSON) and grid input files.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fdlap/errors.hpp"
#include "fdlap/lattice.hpp"

namespace fdlap {

using Cell = std::variant<long, double, std::string>;

struct Table {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_meta(std::string key, std::string value) { meta.emplace_back(std::move(key), std::move(value)); }
  void add_meta(std::string key, double value);
};

/// Shortest decimal text that round-trips a double.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

inline void Table::add_meta(std::string key, double value) { add_meta(std::move(key), format_double(value)); }

inline std::string format_cell(const Cell& c) {
  if (const auto* l = std::get_if<long>(&c)) return std::to_string(*l);
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  return std::get<std::string>(c);
}

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline std::string csv_field(const std::string& f) {
  if (f.find_first_of(",\"\n") == std::string::npos) return f;
  std::string q = "\"";
  for (char c : f) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

/// "# key: value" lines, then a header row and the data rows; LF line endings.
inline void write_csv(std::ostream& os, const Table& t, bool timestamp = false) {
  if (timestamp) os << "# generated: " << utc_timestamp() << '\n';
  for (const auto& [k, v] : t.meta) os << "# " << k << ": " << v << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_field(t.columns[i]);
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(format_cell(row[i]));
    os << '\n';
  }
}

inline nlohmann::ordered_json cell_json(const Cell& c) {
  if (const auto* l = std::get_if<long>(&c)) return *l;
  if (const auto* d = std::get_if<double>(&c)) {
    if (std::isfinite(*d)) return *d;
    return format_double(*d);
  }
  return std::get<std::string>(c);
}

inline void write_json(std::ostream& os, const Table& t, bool timestamp = false) {
  nlohmann::ordered_json j;
  auto& meta = j["meta"] = nlohmann::ordered_json::object();
  if (timestamp) meta["generated"] = utc_timestamp();
  for (const auto& [k, v] : t.meta) meta[k] = v;
  j["columns"] = t.columns;
  auto& rows = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& c : row) r.push_back(cell_json(c));
    rows.push_back(std::move(r));
  }
  os << j.dump(2) << '\n';
}

/// Lattice data read from a CSV file: "j,value" (1D) or "j1,j2,value" (2D) rows, preceded by
/// optional "# hint: compact [outside]", "# hint: algebraic <decay>" or "# hint: none" lines.
struct InputGrid {
  int dim = 1;
  std::map<std::pair<long, long>, double> values;
  SupportHint::Kind kind = SupportHint::Kind::compact;
  double outside = 0.0;
  double decay = 0.0;
  long radius = 0;
};

inline InputGrid parse_grid_csv(std::istream& in) {
  InputGrid g;
  std::string line;
  bool header = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ss(line.substr(1));
      std::string key, kind;
      ss >> key;
      if (key != "hint:") continue;
      ss >> kind;
      if (kind == "compact") {
        g.kind = SupportHint::Kind::compact;
        if (!(ss >> g.outside)) g.outside = 0.0;
      } else if (kind == "algebraic") {
        g.kind = SupportHint::Kind::algebraic;
        if (!(ss >> g.decay) || !(g.decay > 0.0))
          throw ConfigError("input line " + std::to_string(lineno) + ": algebraic hint needs a positive decay");
      } else if (kind == "none") {
        g.kind = SupportHint::Kind::none;
      } else {
        throw ConfigError("input line " + std::to_string(lineno) + ": unknown hint '" + kind + "'");
      }
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    if (!header) {
      header = true;
      if (fields.size() == 2) g.dim = 1;
      else if (fields.size() == 3) g.dim = 2;
      else throw ConfigError("input header must be 'j,value' or 'j1,j2,value'");
      continue;
    }
    if (fields.size() != static_cast<std::size_t>(g.dim + 1))
      throw ConfigError("input line " + std::to_string(lineno) + ": wrong number of fields");
    try {
      const long a = std::stol(fields[0]);
      const long b = g.dim == 2 ? std::stol(fields[1]) : 0;
      const double v = std::stod(fields[g.dim]);
      g.values[{a, b}] = v;
      g.radius = std::max({g.radius, std::labs(a), std::labs(b)});
    } catch (const std::logic_error&) {
      throw ConfigError("input line " + std::to_string(lineno) + ": cannot parse numbers");
    }
  }
  if (!header) throw ConfigError("input file has no header row");
  if (g.values.empty()) throw ConfigError("input file has no data rows");
  return g;
}

inline InputGrid read_grid_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open input file '" + path + "'");
  return parse_grid_csv(in);
}

/// Sampler over the file values. Missing indices inside the radius read as zero; beyond it the
/// compact hint gives the declared constant and the algebraic hint a power law anchored on the
/// outermost value along the ray's dominant axis.
template <std::size_t D>
LatticeSampler<D> grid_sampler(const InputGrid& g) {
  if (g.dim != static_cast<int>(D)) throw ConfigError("input file dimension does not match the command");
  auto data = std::make_shared<const InputGrid>(g);
  SupportHint hint;
  if (g.kind == SupportHint::Kind::compact) hint = SupportHint::compact(g.radius, g.outside);
  else if (g.kind == SupportHint::Kind::algebraic) hint = SupportHint::algebraic(g.decay);
  auto lookup = [data](long a, long b) {
    const auto it = data->values.find({a, b});
    return it == data->values.end() ? 0.0 : it->second;
  };
  return LatticeSampler<D>(
      [data, lookup](const Index<D>& i) {
        const long a = i[0];
        const long b = D == 2 ? i[D - 1] : 0;
        const long r = std::max(std::labs(a), std::labs(b));
        if (r <= data->radius || data->kind != SupportHint::Kind::algebraic) return r <= data->radius ? lookup(a, b) : 0.0;
        const double scale = static_cast<double>(data->radius) / static_cast<double>(r);
        const long a0 = std::lround(a * scale), b0 = std::lround(b * scale);
        return lookup(a0, b0) * std::pow(scale, data->decay);
      },
      hint);
}

}  // namespace fdlap

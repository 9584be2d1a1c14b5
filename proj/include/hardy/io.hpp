#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hardy/seq.hpp"
#include "hardy/types.hpp"
#include "hardy/weight_pair.hpp"
#include "json.hpp"

namespace hardy {

using ordered_json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// Optional custom supersolution tables carried inside a sequence file:
// dense arrays indexed from 0, phi[0] = 0.
struct CustomTables {
  std::vector<long double> v;
  std::vector<long double> phi;
};

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline ordered_json sequence_to_json(const FinSeq& u) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  auto& entries = j["entries"] = ordered_json::array();
  for (const auto& [n, z] : u.nonzero_entries())
    entries.push_back({n, z.real(), z.imag()});
  return j;
}

inline FinSeq sequence_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("entries"))
    throw std::runtime_error("sequence: missing \"entries\" field");
  if (j.contains("schema_version") && j["schema_version"].get<int>() != kSchemaVersion)
    throw std::runtime_error("sequence: unsupported schema_version");
  std::vector<std::pair<i64, cx>> pairs;
  std::size_t row = 0;
  for (const auto& e : j["entries"]) {
    ++row;
    if (!e.is_array() || e.size() != 3)
      throw std::runtime_error("sequence: entry " + std::to_string(row) +
                               " must be [n, re, im]");
    const i64 n = e[0].get<i64>();
    const double re = e[1].get<double>();
    const double im = e[2].get<double>();
    if (n == 0)
      throw std::runtime_error("sequence: entry " + std::to_string(row) +
                               ": index 0 is fixed to u(0) = 0");
    pairs.emplace_back(n, cx{re, im});
  }
  try {
    return FinSeq::from_pairs(pairs);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("sequence: ") + e.what());
  }
}

namespace detail {

inline FinSeq sequence_from_csv(std::istream& in, const std::string& name) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::pair<i64, cx>> pairs;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    if (!header_seen) {
      std::string h = line;
      h.erase(std::remove_if(h.begin(), h.end(),
                             [](char c) { return c == ' ' || c == '\r'; }),
              h.end());
      if (h != "n,re,im")
        throw std::runtime_error(name + ":" + std::to_string(lineno) +
                                 ": expected header \"n,re,im\"");
      header_seen = true;
      continue;
    }
    std::istringstream row(line);
    std::string field;
    double vals[3];
    for (int k = 0; k < 3; ++k) {
      if (!std::getline(row, field, ','))
        throw std::runtime_error(name + ":" + std::to_string(lineno) +
                                 ": expected 3 fields");
      try {
        vals[k] = std::stod(field);
      } catch (const std::exception&) {
        throw std::runtime_error(name + ":" + std::to_string(lineno) +
                                 ": bad field \"" + field + "\"");
      }
    }
    const i64 n = static_cast<i64>(vals[0]);
    if (static_cast<double>(n) != vals[0] || n < 1)
      throw std::runtime_error(name + ":" + std::to_string(lineno) +
                               ": index must be a positive integer");
    pairs.emplace_back(n, cx{vals[1], vals[2]});
  }
  try {
    return FinSeq::from_pairs(pairs);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(name + ": " + e.what());
  }
}

}  // namespace detail

inline FinSeq load_sequence(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open " + path.string());
  if (path.extension() == ".csv")
    return detail::sequence_from_csv(in, path.filename().string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
  return sequence_from_json(j);
}

inline void save_sequence(const FinSeq& u, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  if (path.extension() == ".csv") {
    out << "n,re,im\n";
    for (const auto& [n, z] : u.nonzero_entries())
      out << n << ',' << format_double(z.real()) << ','
          << format_double(z.imag()) << '\n';
    return;
  }
  out << sequence_to_json(u).dump(2) << '\n';
}

// Reads the optional "v"/"phi" dense tables from a sequence JSON file.
inline std::optional<CustomTables> load_custom_tables(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  if (path.extension() == ".csv") return std::nullopt;
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
  if (!j.contains("v") || !j.contains("phi")) return std::nullopt;
  CustomTables t;
  for (const auto& x : j["v"]) t.v.push_back(x.get<double>());
  for (const auto& x : j["phi"]) t.phi.push_back(x.get<double>());
  if (t.phi.empty() || t.phi[0] != 0.0L)
    throw std::runtime_error(path.string() + ": phi table must start at 0");
  return t;
}

}  // namespace hardy

#pragma once

// File formats and JSON serialization.
//
//   SampledFunction  {"domain": {"kind": "finite"|"grid", "size": n, "endpoint": a}, "values": [...]}
//                    ("endpoint" only for grids)
//   Finite kernel    CSV, m rows of m nonnegative decimals
//   Continuous spec  {"a": a, "n": n, "alpha"|"alpha_gen", "beta"|"beta_gen", "kernel"|"kernel_gen"}
//
// Output uses insertion-ordered JSON so reports are byte-stable.

#include <cmath>
#include <cstddef>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "conekit/error.hpp"
#include "conekit/generators.hpp"
#include "conekit/norms.hpp"
#include "conekit/operators.hpp"
#include "conekit/space.hpp"
#include "conekit/verify.hpp"

namespace conekit {

using Json = nlohmann::ordered_json;

inline Json to_json(const Domain& d) {
  Json j;
  j["kind"] = d.is_grid() ? "grid" : "finite";
  j["size"] = d.size();
  if (d.is_grid()) j["endpoint"] = d.endpoint();
  return j;
}

inline Json to_json(const SampledFunction& f) {
  Json j;
  j["domain"] = to_json(f.domain());
  j["values"] = std::vector<double>(f.values().begin(), f.values().end());
  return j;
}

inline Json to_json(const NormEstimate& e) {
  Json j;
  j["value"] = e.value;
  j["trials"] = e.trials;
  j["seed"] = e.seed;
  j["witness_index"] = e.witness_index;
  Json w = Json::array();
  for (const auto& f : e.witness) w.push_back(to_json(f));
  j["witness"] = std::move(w);
  return j;
}

inline Json to_json(const PropertyReport& r) {
  Json j;
  j["property"] = r.property;
  j["status"] = r.passed ? "pass" : "fail";
  j["trials"] = r.trials;
  j["worst_violation"] = r.worst_violation;
  j["tolerance"] = r.tolerance;
  j["seed"] = r.seed;
  j["witness_index"] = r.witness_index;
  Json w;
  w["functions"] = Json::array();
  for (const auto& f : r.witness.functions) w["functions"].push_back(to_json(f));
  w["scalars"] = r.witness.scalars;
  j["witness"] = std::move(w);
  if (!r.quantities.empty()) {
    Json q;
    for (const auto& [k, v] : r.quantities) q[k] = v;
    j["quantities"] = std::move(q);
  }
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

namespace detail {

template <typename T>
T field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(where, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(where + "." + key, e.what());
  }
}

inline std::vector<double> number_array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ParseError(where + "[" + std::to_string(i) + "]", "expected a number");
    out.push_back(j[i].get<double>());
  }
  return out;
}

inline Json parse_document(std::string_view text, const std::string& where) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(where, e.what());
  }
}

}  // namespace detail

inline Domain domain_from_json(const Json& j, const std::string& where = "domain") {
  const auto kind = detail::field<std::string>(j, "kind", where);
  const auto size = detail::field<std::size_t>(j, "size", where);
  try {
    if (kind == "finite") return Domain::finite(size);
    if (kind == "grid") return Domain::grid(size, detail::field<double>(j, "endpoint", where));
  } catch (const InvalidArgument& e) {
    throw ParseError(where, e.what());
  }
  throw ParseError(where + ".kind", "expected \"finite\" or \"grid\"");
}

inline SampledFunction sampled_function_from_json(const Json& j, const std::string& where = "function") {
  if (!j.is_object()) throw ParseError(where, "expected an object");
  if (!j.contains("domain")) throw ParseError(where, "missing field 'domain'");
  if (!j.contains("values")) throw ParseError(where, "missing field 'values'");
  const Domain d = domain_from_json(j["domain"], where + ".domain");
  auto values = detail::number_array(j["values"], where + ".values");
  try {
    return SampledFunction(d, std::move(values));
  } catch (const InvalidArgument& e) {
    throw ParseError(where + ".values", e.what());
  }
}

inline SampledFunction parse_sampled_function(std::string_view text, const std::string& where = "function") {
  return sampled_function_from_json(detail::parse_document(text, where), where);
}

/// Finite kernel from CSV. Blank lines and lines starting with '#' are skipped.
inline FiniteKernel parse_kernel_csv(std::istream& in, const std::string& source = "kernel") {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const std::string where = source + ":" + std::to_string(line_no);
    std::vector<double> row;
    for (auto cell : detail::split(line, ',')) {
      const auto b = cell.find_first_not_of(" \t");
      const auto e = cell.find_last_not_of(" \t");
      if (b == std::string_view::npos) throw ParseError(where, "empty cell");
      const double v = detail::parse_number<double>(cell.substr(b, e - b + 1), where);
      if (!std::isfinite(v) || v < 0.0) throw ParseError(where, "kernel entries must be finite and nonnegative");
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError(where, "row " + std::to_string(rows.size()) + " has " + std::to_string(row.size()) +
                                  " entries, expected " + std::to_string(rows.front().size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(source, "no kernel rows");
  if (rows.size() != rows.front().size())
    throw ParseError(source, "kernel must be square, got " + std::to_string(rows.size()) + " rows of " +
                                 std::to_string(rows.front().size()));
  return FiniteKernel(rows);
}

inline FiniteKernel parse_kernel_csv(std::string_view text, const std::string& source = "kernel") {
  std::istringstream in{std::string(text)};
  return parse_kernel_csv(in, source);
}

inline ContinuousKernelSpec continuous_spec_from_json(const Json& j, const std::string& where = "spec") {
  const double a = detail::field<double>(j, "a", where);
  const auto n = detail::field<std::size_t>(j, "n", where);
  Domain grid = [&] {
    try {
      return Domain::grid(n, a);
    } catch (const InvalidArgument& e) {
      throw ParseError(where, e.what());
    }
  }();

  auto window = [&](const char* key, const char* gen_key, WindowSide side) {
    if (j.contains(key)) {
      try {
        return SampledFunction(grid, detail::number_array(j[key], where + "." + key));
      } catch (const InvalidArgument& e) {
        throw ParseError(where + "." + key, e.what());
      }
    }
    if (j.contains(gen_key))
      return generate_window(detail::field<std::string>(j, gen_key, where), grid, side, where + "." + gen_key);
    throw ParseError(where, std::string("needs '") + key + "' or '" + gen_key + "'");
  };
  auto alpha = window("alpha", "alpha_gen", WindowSide::Alpha);
  auto beta = window("beta", "beta_gen", WindowSide::Beta);

  std::vector<double> kernel;
  if (j.contains("kernel")) {
    const auto& rows = j["kernel"];
    if (!rows.is_array() || rows.size() != n) throw ParseError(where + ".kernel", "expected n rows");
    for (std::size_t i = 0; i < n; ++i) {
      auto row = detail::number_array(rows[i], where + ".kernel[" + std::to_string(i) + "]");
      if (row.size() != n)
        throw ParseError(where + ".kernel[" + std::to_string(i) + "]", "expected n entries");
      kernel.insert(kernel.end(), row.begin(), row.end());
    }
  } else if (j.contains("kernel_gen")) {
    kernel = generate_kernel_table(detail::field<std::string>(j, "kernel_gen", where), grid, where + ".kernel_gen");
  } else {
    throw ParseError(where, "needs 'kernel' or 'kernel_gen'");
  }

  try {
    return ContinuousKernelSpec(std::move(alpha), std::move(beta), std::move(kernel));
  } catch (const InvalidArgument& e) {
    throw ParseError(where, e.what());
  }
}

inline ContinuousKernelSpec parse_continuous_spec(std::string_view text, const std::string& where = "spec") {
  return continuous_spec_from_json(detail::parse_document(text, where), where);
}

}  // namespace conekit

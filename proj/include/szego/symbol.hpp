#pragma once

// Symbol specifications, as accepted on the command line and in config
// files:
//   {"coeffs": [[re, im], ...]}
//   {"preset": "plus_eps", "eps": e}                       -> z + e
//   {"preset": "geometric", "ratio": r, "dim": N, "seed": s}
//                                 -> sum r^n e^{i theta_n} z^n, seeded phases

#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "json.hpp"
#include "szego/error.hpp"
#include "szego/hardy.hpp"

namespace szego {

inline FourierVector plus_eps_symbol(double eps) { return FourierVector{eps, 1.0}; }

// Phases come from raw mt19937_64 output (not a std distribution), so the
// same seed gives the same symbol with every standard library.
inline FourierVector geometric_symbol(double ratio, Index dim, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw ConfigError("symbol.ratio must lie in (0, 1)");
  if (dim < 1) throw ConfigError("symbol.dim must be >= 1");
  std::mt19937_64 gen(seed);
  CVector v(dim);
  double mag = 1.0;
  for (Index n = 0; n < dim; ++n) {
    const double unit = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    v[n] = std::polar(mag, 2.0 * std::numbers::pi * unit);
    mag *= ratio;
  }
  return FourierVector(std::move(v));
}

namespace detail {

inline double require_number(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw ConfigError(std::string("symbol.") + key + " must be a number");
  }
  const double v = j.at(key).get<double>();
  if (!std::isfinite(v)) throw ConfigError(std::string("symbol.") + key + " must be finite");
  return v;
}

}  // namespace detail

inline FourierVector parse_symbol(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("symbol must be a JSON object");
  if (j.contains("coeffs")) {
    const auto& arr = j.at("coeffs");
    if (!arr.is_array() || arr.empty()) throw ConfigError("symbol.coeffs must be a non-empty array");
    CVector v(static_cast<Index>(arr.size()));
    for (std::size_t n = 0; n < arr.size(); ++n) {
      const auto& c = arr[n];
      if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number()) {
        throw ConfigError("symbol.coeffs[" + std::to_string(n) + "] must be [re, im]");
      }
      v[static_cast<Index>(n)] = cplx(c[0].get<double>(), c[1].get<double>());
    }
    try {
      return FourierVector(std::move(v));
    } catch (const NumericalError& e) {
      throw ConfigError(std::string("symbol.coeffs: ") + e.what());
    }
  }
  if (!j.contains("preset") || !j.at("preset").is_string()) {
    throw ConfigError("symbol needs either \"coeffs\" or \"preset\"");
  }
  const std::string preset = j.at("preset").get<std::string>();
  if (preset == "plus_eps") {
    return plus_eps_symbol(detail::require_number(j, "eps"));
  }
  if (preset == "geometric") {
    const double ratio = detail::require_number(j, "ratio");
    const double dim = detail::require_number(j, "dim");
    if (dim < 1 || dim != std::floor(dim)) throw ConfigError("symbol.dim must be a positive integer");
    std::uint64_t seed = 0;
    if (j.contains("seed")) {
      if (!j.at("seed").is_number_integer() || j.at("seed").get<long long>() < 0) {
        throw ConfigError("symbol.seed must be a non-negative integer");
      }
      seed = j.at("seed").get<std::uint64_t>();
    }
    return geometric_symbol(ratio, static_cast<Index>(dim), seed);
  }
  throw ConfigError("symbol.preset \"" + preset + "\" is not one of plus_eps, geometric");
}

// Accepts inline JSON (first non-blank character '{') or a path to a file
// holding it.
inline FourierVector parse_symbol_text(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  std::string body = text;
  if (first == std::string::npos || text[first] != '{') {
    std::ifstream in(text);
    if (!in) throw ConfigError("symbol: cannot read file " + text);
    std::ostringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("symbol: invalid JSON: ") + e.what());
  }
  return parse_symbol(j);
}

}  // namespace szego

#pragma once

// Command-line front end. A run is described by a RunConfig, assembled from
// an optional JSON config file with command-line flags layered on top, and
// produces one Report.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical or I/O failure.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "szego/conserved.hpp"
#include "szego/error.hpp"
#include "szego/experiments.hpp"
#include "szego/flow.hpp"
#include "szego/report.hpp"
#include "szego/symbol.hpp"

namespace szego::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

// Dense eigensolves beyond this are out of scope.
inline constexpr Index kMaxDim = 4096;

struct RunConfig {
  std::string command;
  std::optional<FourierVector> symbol;
  std::optional<double> t;
  std::optional<Index> N;
  std::optional<Index> M;
  std::optional<double> dt;
  std::vector<double> eps;
  std::optional<double> delta;
  std::optional<double> R;
  std::optional<Index> nsub;
  std::optional<Index> grid_m;
  std::string out;
  Format format = Format::csv;
  std::uint64_t seed = 0;
};

namespace detail {

inline double number_field(const nlohmann::json& j, const std::string& key) {
  const auto& v = j.at(key);
  if (v.is_number()) {
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(key + " must be finite");
    return d;
  }
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    std::size_t used = 0;
    double d = 0.0;
    try {
      d = std::stod(s, &used);
    } catch (const std::exception&) {
      throw ConfigError(key + " must be a number, got \"" + s + "\"");
    }
    if (used != s.size() || !std::isfinite(d)) {
      throw ConfigError(key + " must be a finite number, got \"" + s + "\"");
    }
    return d;
  }
  throw ConfigError(key + " must be a number");
}

inline Index positive_int_field(const nlohmann::json& j, const std::string& key) {
  const double d = number_field(j, key);
  if (d < 1 || d != std::floor(d) || d > 1e15) throw ConfigError(key + " must be a positive integer");
  return static_cast<Index>(d);
}

inline std::vector<double> number_list_field(const nlohmann::json& j, const std::string& key) {
  const auto& v = j.at(key);
  std::vector<double> out;
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.push_back(number_field(nlohmann::json{{key, v[i]}}, key));
    }
  } else if (v.is_string()) {
    std::stringstream ss(v.get<std::string>());
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(number_field(nlohmann::json{{key, item}}, key));
  } else {
    out.push_back(number_field(j, key));
  }
  if (out.empty()) throw ConfigError(key + " must not be empty");
  return out;
}

inline const char* const kCommands[] = {"evolve", "compare", "conserve", "inflate",
                                        "toeplitz-kernel"};

}  // namespace detail

// Builds and validates a RunConfig from a JSON object whose keys mirror the
// command-line flags.
inline RunConfig config_from_json(const nlohmann::json& j) {
  using namespace detail;
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig c;
  if (!j.contains("command") || !j.at("command").is_string()) {
    throw ConfigError("command is required");
  }
  c.command = j.at("command").get<std::string>();
  bool known = false;
  for (const char* name : kCommands) known = known || c.command == name;
  if (!known) {
    throw ConfigError("command \"" + c.command +
                      "\" is not one of evolve, compare, conserve, inflate, toeplitz-kernel");
  }
  if (j.contains("symbol")) {
    const auto& s = j.at("symbol");
    if (s.is_string()) {
      c.symbol = parse_symbol_text(s.get<std::string>());
    } else {
      c.symbol = parse_symbol(s);
    }
  }
  if (j.contains("t")) c.t = number_field(j, "t");
  if (j.contains("N")) c.N = positive_int_field(j, "N");
  if (j.contains("M")) c.M = positive_int_field(j, "M");
  if (j.contains("dt")) {
    c.dt = number_field(j, "dt");
    if (!(*c.dt > 0.0)) throw ConfigError("dt must be > 0");
  }
  if (j.contains("eps")) {
    c.eps = number_list_field(j, "eps");
    for (double e : c.eps) {
      if (!(e > 0.0)) throw ConfigError("eps must be > 0");
    }
  }
  if (j.contains("delta")) {
    c.delta = number_field(j, "delta");
    if (!(*c.delta > 0.0)) throw ConfigError("delta must be > 0");
  }
  if (j.contains("R")) {
    c.R = number_field(j, "R");
    if (!(*c.R > 0.0)) throw ConfigError("R must be > 0");
  }
  if (j.contains("nsub")) c.nsub = positive_int_field(j, "nsub");
  for (const char* key : {"grid_m", "grid-m"}) {
    if (j.contains(key)) {
      c.grid_m = positive_int_field(j, key);
      if (!spectral::is_power_of_two(*c.grid_m)) throw ConfigError("grid-m must be a power of two");
    }
  }
  if (j.contains("out")) {
    if (!j.at("out").is_string()) throw ConfigError("out must be a string");
    c.out = j.at("out").get<std::string>();
  }
  if (j.contains("format")) {
    const std::string f = j.at("format").is_string() ? j.at("format").get<std::string>() : "";
    if (f == "csv") {
      c.format = Format::csv;
    } else if (f == "json") {
      c.format = Format::json;
    } else {
      throw ConfigError("format must be csv or json");
    }
  }
  if (j.contains("seed")) {
    const double s = number_field(j, "seed");
    if (s < 0 || s != std::floor(s) || s > 9.0e15) throw ConfigError("seed must be a non-negative integer");
    c.seed = static_cast<std::uint64_t>(s);
  }
  if (c.N && *c.N > kMaxDim) throw ConfigError("N must be <= " + std::to_string(kMaxDim));
  return c;
}

namespace detail {

inline const FourierVector& require_symbol(const RunConfig& c) {
  if (!c.symbol) throw ConfigError("symbol is required for command " + c.command);
  return *c.symbol;
}

inline Index working_dim(const RunConfig& c, const FourierVector& u) {
  const Index n = c.N.value_or(std::max<Index>(64, spectral::next_power_of_two(4 * u.dim())));
  if (n < u.dim()) throw ConfigError("N must be >= dim(symbol)=" + std::to_string(u.dim()));
  if (n > kMaxDim) throw ConfigError("N must be <= " + std::to_string(kMaxDim));
  return n;
}

inline Index output_dim(const RunConfig& c, Index fallback, Index n) {
  const Index m = c.M.value_or(fallback);
  if (m > n) throw ConfigError("M must be <= N");
  return m;
}

inline Table audit_table(const std::vector<ConservedAudit>& audits) {
  Table t{"audit", {"t", "l2", "E", "J@0.1", "J@1", "J@10", "dJ0", "d2J0", "h4"}, {}};
  for (const auto& a : audits) {
    std::vector<Cell> row{a.t, a.l2_norm, a.energy};
    for (const auto& [x, jx] : a.j_samples) row.emplace_back(jx);
    row.insert(row.end(), {a.dj0, a.d2j0, a.h4_norm});
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline Report run_evolve(const RunConfig& c) {
  const FourierVector& u = require_symbol(c);
  const Index n = working_dim(c, u);
  const Index m = output_dim(c, n, n);
  const double t = c.t.value_or(1.0);
  FlowReport fr = exact_flow_report(u, {0.0, t}, n, m);
  attach_audits(fr);
  Table state{"state", {"t", "coeffs"}, {}};
  for (std::size_t i = 0; i < fr.times.size(); ++i) {
    state.rows.push_back({fr.times[i], fr.states[i].coeffs()});
  }
  return {"evolve", {std::move(state), audit_table(fr.audits)}};
}

inline Report run_compare(const RunConfig& c) {
  const FourierVector& u = require_symbol(c);
  const Index n = working_dim(c, u);
  const Index m = output_dim(c, u.dim(), n);
  const double t = c.t.value_or(1.0);
  const double dt = c.dt.value_or(default_time_step(u));
  const FourierVector exact = exact_flow(u, t, n, m);
  const FourierVector rk4 = rk4_evolve(u, t, dt, n).states.back().resized(m);
  const double diff = (exact.coeffs() - rk4.coeffs()).cwiseAbs().maxCoeff();
  Table tab{"compare", {"t", "N", "M", "dt", "max_abs_diff", "l2_exact", "l2_rk4"}, {}};
  tab.rows.push_back({t, static_cast<long long>(n), static_cast<long long>(m), dt, diff,
                      exact.norm(), rk4.norm()});
  return {"compare", {std::move(tab)}};
}

inline Report run_conserve(const RunConfig& c) {
  const FourierVector& u = require_symbol(c);
  const Index n = working_dim(c, u);
  const Index m = output_dim(c, n, n);
  const double t = c.t.value_or(1.0);
  FlowReport fr = exact_flow_report(u, {0.0, 0.25 * t, 0.5 * t, 0.75 * t, t}, n, m);
  attach_audits(fr);
  return {"conserve", {audit_table(fr.audits)}};
}

inline Report run_inflate(const RunConfig& c) {
  const std::vector<double> eps_list = c.eps.empty() ? std::vector<double>{0.2} : c.eps;
  const double delta = c.delta.value_or(0.25);
  Table tab{"inflation",
            {"eps", "delta", "R", "Nsub", "sobolev_at_0", "t_eps", "observable",
             "predicted_observable", "rel_err"},
            {}};
  for (double eps : eps_list) {
    InflationParams p = inflation_schedule(eps, delta);
    if (c.R) p.R = *c.R;
    if (c.nsub) p.nsub = *c.nsub;
    p.validate();
    const Index n = c.N.value_or(default_inflation_dim(p));
    if (n > kMaxDim) {
      throw ConfigError("N=" + std::to_string(n) + " needed for nsub=" + std::to_string(p.nsub) +
                        " exceeds " + std::to_string(kMaxDim) + "; pass a smaller --nsub");
    }
    const InflationReport r = inflation_run(p, n, 1);
    tab.rows.push_back({p.eps, p.delta, p.R, static_cast<long long>(p.nsub), r.sobolev_at_0,
                        r.t_eps, r.observable, r.predicted_observable, r.rel_err});
  }
  return {"inflate", {std::move(tab)}};
}

inline Report run_toeplitz_kernel(const RunConfig& c) {
  KernelParams p;
  if (!c.eps.empty()) {
    if (c.eps.size() != 1) throw ConfigError("eps must be a single value for toeplitz-kernel");
    p.eps = c.eps.front();
  }
  if (c.grid_m) p.grid_m = *c.grid_m;
  if (c.N) p.dim_n = *c.N;
  if (c.M) p.trunc_k = *c.M;
  p.seed = c.seed;
  p.validate();
  const double residual = kernel_residual(p);
  Table tab{"toeplitz_kernel", {"eps", "grid_M", "dim_N", "trunc_K", "residual"}, {}};
  tab.rows.push_back({p.eps, static_cast<long long>(p.grid_m), static_cast<long long>(p.dim_n),
                      static_cast<long long>(p.trunc_k), residual});
  return {"toeplitz-kernel", {std::move(tab)}};
}

}  // namespace detail

inline Report execute(const RunConfig& c) {
  if (c.command == "evolve") return detail::run_evolve(c);
  if (c.command == "compare") return detail::run_compare(c);
  if (c.command == "conserve") return detail::run_conserve(c);
  if (c.command == "inflate") return detail::run_inflate(c);
  if (c.command == "toeplitz-kernel") return detail::run_toeplitz_kernel(c);
  throw ConfigError("unknown command " + c.command);
}

// Runs one command and writes its report; every failure becomes an exit
// code and a message on err.
inline int run(const RunConfig& c, std::ostream& err) {
  try {
    emit(execute(c), c.format, c.out);
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

// Parses argv into the merged JSON config (file first, then flags).
inline nlohmann::json merged_config(int argc, const char* const* argv) {
  CLI::App app{"Hankel-operator numerics for the cubic Szego equation"};
  std::string config_path;
  std::map<std::string, std::string> values;
  app.add_option("--config", config_path, "JSON config file; flags override its fields");
  const std::vector<std::pair<std::string, std::string>> spec{
      {"command", "evolve | compare | conserve | inflate | toeplitz-kernel"},
      {"symbol", "symbol spec: inline JSON or path to a JSON file"},
      {"t", "flow time"},
      {"N", "truncation dimension"},
      {"M", "number of output coefficients (toeplitz-kernel: checked modes)"},
      {"dt", "RK4 step"},
      {"eps", "epsilon; comma-separated list for an inflate sweep"},
      {"delta", "Sobolev index delta of W^{-delta,2}"},
      {"R", "inflation amplitude"},
      {"nsub", "inflation frequency substitution z -> z^nsub"},
      {"grid-m", "boundary sample count for toeplitz-kernel"},
      {"out", "output path (default: standard output)"},
      {"format", "csv | json"},
      {"seed", "random seed"}};
  for (const auto& [name, help] : spec) app.add_option("--" + name, values[name], help);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    throw;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  nlohmann::json j = nlohmann::json::object();
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("config: cannot read " + config_path);
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    if (j.contains("grid_m") && !j.contains("grid-m")) {
      j["grid-m"] = j["grid_m"];
      j.erase("grid_m");
    }
  }
  for (const auto& [name, help] : spec) {
    if (app.count("--" + name) > 0) j[name] = values[name];
  }
  return j;
}

inline int main_entry(int argc, const char* const* argv, std::ostream& err = std::cerr) {
  RunConfig c;
  try {
    c = config_from_json(merged_config(argc, argv));
  } catch (const CLI::CallForHelp&) {
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return run(c, err);
}

}  // namespace szego::cli

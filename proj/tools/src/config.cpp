// SPDX-License-Identifier: Apache-2.0
#include "config.hpp"

#include <fstream>

#include "slgate/errors.hpp"

namespace slgate::cli {

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  return j;
}

void check_keys(const json& obj, const std::vector<std::string>& allowed,
                const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected a JSON object");
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const auto& k : allowed) {
      if (item.key() == k) {
        known = true;
        break;
      }
    }
    if (!known) throw ConfigError(where + ": unknown key \"" + item.key() + "\"");
  }
}

namespace {

const json& require_field(const json& obj, const std::string& key,
                          const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ConfigError(where + ": missing required key \"" + key + "\"");
  }
  return *it;
}

double as_num(const json& v, const std::string& key, const std::string& where) {
  if (!v.is_number()) {
    throw ConfigError(where + ": key \"" + key + "\" must be a number");
  }
  return v.get<double>();
}

int as_int(const json& v, const std::string& key, const std::string& where) {
  if (!v.is_number_integer()) {
    throw ConfigError(where + ": key \"" + key + "\" must be an integer");
  }
  return v.get<int>();
}

std::vector<double> as_num_array(const json& v, const std::string& key,
                                 const std::string& where) {
  if (!v.is_array()) {
    throw ConfigError(where + ": key \"" + key + "\" must be an array");
  }
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(as_num(e, key, where));
  return out;
}

}  // namespace

double require_num(const json& obj, const std::string& key,
                   const std::string& where) {
  return as_num(require_field(obj, key, where), key, where);
}

double get_num(const json& obj, const std::string& key, double fallback,
               const std::string& where) {
  auto it = obj.find(key);
  return it == obj.end() ? fallback : as_num(*it, key, where);
}

int require_int(const json& obj, const std::string& key,
                const std::string& where) {
  return as_int(require_field(obj, key, where), key, where);
}

int get_int(const json& obj, const std::string& key, int fallback,
            const std::string& where) {
  auto it = obj.find(key);
  return it == obj.end() ? fallback : as_int(*it, key, where);
}

PotentialSpec parse_potential(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected a potential object");
  const auto& kindj = require_field(j, "kind", where);
  if (!kindj.is_string()) throw ConfigError(where + ": \"kind\" must be a string");
  const std::string kind = kindj.get<std::string>();
  if (kind == "constant") {
    check_keys(j, {"kind", "value"}, where);
    return PotentialSpec::constant(require_num(j, "value", where));
  }
  if (kind == "linear") {
    check_keys(j, {"kind", "alpha", "beta"}, where);
    return PotentialSpec::linear(require_num(j, "alpha", where),
                                 require_num(j, "beta", where));
  }
  if (kind == "sine") {
    check_keys(j, {"kind", "amplitude", "frequency", "phase"}, where);
    return PotentialSpec::sine(require_num(j, "amplitude", where),
                               require_num(j, "frequency", where),
                               get_num(j, "phase", 0.0, where));
  }
  if (kind == "piecewise") {
    check_keys(j, {"kind", "pieces"}, where);
    const auto& pieces = require_field(j, "pieces", where);
    if (!pieces.is_array() || pieces.empty()) {
      throw ConfigError(where + ": \"pieces\" must be a non-empty array");
    }
    std::vector<SampledFunction> out;
    for (const auto& p : pieces) {
      check_keys(p, {"x_lo", "x_hi", "samples"}, where + ".pieces[]");
      auto samples = as_num_array(require_field(p, "samples", where),
                                  "samples", where);
      out.emplace_back(require_num(p, "x_lo", where),
                       require_num(p, "x_hi", where), std::move(samples));
    }
    return PotentialSpec::piecewise(std::move(out));
  }
  if (kind == "tabulated") {
    check_keys(j, {"kind", "x_lo", "x_hi", "samples"}, where);
    auto samples =
        as_num_array(require_field(j, "samples", where), "samples", where);
    return PotentialSpec::tabulated(SampledFunction(
        require_num(j, "x_lo", where), require_num(j, "x_hi", where),
        std::move(samples)));
  }
  throw ConfigError(where + ": unknown potential kind \"" + kind + "\"");
}

OperatorConfig parse_operator(const json& j, const std::string& where) {
  check_keys(j, {"q", "h", "H", "grid_n"}, where);
  OperatorConfig oc;
  oc.grid_n = get_int(j, "grid_n", 2001, where);
  auto spec = parse_potential(require_field(j, "q", where), where + ".q");
  oc.op.q = materialize(spec, 0.0, 1.0, oc.grid_n);
  oc.op.bc.h = require_num(j, "h", where);
  oc.op.bc.H = require_num(j, "H", where);
  return oc;
}

PairConfig parse_pair(const json& j, const std::string& where) {
  check_keys(j, {"q1", "h1", "q2", "h2", "H", "a", "grid_n"}, where);
  PairConfig pc;
  pc.grid_n = get_int(j, "grid_n", 2001, where);
  auto s1 = parse_potential(require_field(j, "q1", where), where + ".q1");
  auto s2 = parse_potential(require_field(j, "q2", where), where + ".q2");
  pc.pp = make_pair(materialize(s1, 0.0, 1.0, pc.grid_n),
                    require_num(j, "h1", where),
                    materialize(s2, 0.0, 1.0, pc.grid_n),
                    require_num(j, "h2", where), require_num(j, "H", where),
                    require_num(j, "a", where));
  return pc;
}

SolverOptions parse_solver(const json& j, const std::string& where) {
  check_keys(j, {"base_steps", "steps_per_unit_z", "root_rel_tol", "scan_points"},
             where);
  SolverOptions opt;
  opt.base_steps = get_int(j, "base_steps", opt.base_steps, where);
  opt.steps_per_unit_z =
      get_num(j, "steps_per_unit_z", opt.steps_per_unit_z, where);
  opt.root_rel_tol = get_num(j, "root_rel_tol", opt.root_rel_tol, where);
  opt.scan_points = get_int(j, "scan_points", opt.scan_points, where);
  return opt;
}

std::vector<int> parse_scenario(const json& j, int parent_size,
                                const std::string& where) {
  check_keys(j, {"kind", "k"}, where);
  const auto& kindj = require_field(j, "kind", where);
  if (!kindj.is_string()) throw ConfigError(where + ": \"kind\" must be a string");
  const std::string kind = kindj.get<std::string>();
  const int k = get_int(j, "k", 1, where);
  if (kind == "even") return scenario_indices(ScenarioKind::even, parent_size, k);
  if (kind == "odd") return scenario_indices(ScenarioKind::odd, parent_size, k);
  if (kind == "every_k") {
    return scenario_indices(ScenarioKind::every_k, parent_size, k);
  }
  throw ConfigError(where + ": unknown scenario kind \"" + kind + "\"");
}

KernelOptions parse_kernel_options(const json& j, const std::string& where) {
  check_keys(j, {"ny", "nx", "z_max", "dz", "tail_rel_tol"}, where);
  KernelOptions opt;
  opt.ny = get_int(j, "ny", opt.ny, where);
  opt.nx = get_int(j, "nx", opt.nx, where);
  opt.z_max = get_num(j, "z_max", opt.z_max, where);
  opt.dz = get_num(j, "dz", opt.dz, where);
  opt.tail_rel_tol = get_num(j, "tail_rel_tol", opt.tail_rel_tol, where);
  return opt;
}

}  // namespace slgate::cli

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "slgate/certificate.hpp"
#include "slgate/counting.hpp"
#include "slgate/inverse.hpp"
#include "slgate/kernelops.hpp"
#include "slgate/potentials.hpp"
#include "slgate/sturm.hpp"

namespace slgate::cli {

using nlohmann::json;

// Loads and parses a JSON file; I/O or syntax problems become ConfigError.
json load_config(const std::string& path);

// Rejects keys outside `allowed`; `where` names the object in the message.
void check_keys(const json& obj, const std::vector<std::string>& allowed,
                const std::string& where);

// Field accessors with type checking. `require_*` throw when missing.
double require_num(const json& obj, const std::string& key,
                   const std::string& where);
double get_num(const json& obj, const std::string& key, double fallback,
               const std::string& where);
int require_int(const json& obj, const std::string& key,
                const std::string& where);
int get_int(const json& obj, const std::string& key, int fallback,
            const std::string& where);

PotentialSpec parse_potential(const json& j, const std::string& where);

struct OperatorConfig {
  OperatorSpec op;
  int grid_n = 2001;
};
// {"q": <potential>, "h": num, "H": num, "grid_n": int?}
OperatorConfig parse_operator(const json& j, const std::string& where);

struct PairConfig {
  PairProblem pp;
  int grid_n = 2001;
};
// {"q1": <potential>, "h1": num, "q2": <potential>, "h2": num,
//  "H": num, "a": num, "grid_n": int?}
PairConfig parse_pair(const json& j, const std::string& where);

// Optional {"base_steps", "steps_per_unit_z", "root_rel_tol", "scan_points"}.
SolverOptions parse_solver(const json& j, const std::string& where);

// {"kind": "even"|"odd"|"every_k", "k": int?} applied to parent size j_max+1.
std::vector<int> parse_scenario(const json& j, int parent_size,
                                const std::string& where);

KernelOptions parse_kernel_options(const json& j, const std::string& where);

}  // namespace slgate::cli

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

namespace slgate::cli {

struct CommandContext {
  std::string config_path;
  std::string out_dir = ".";
  unsigned long long seed = 0;
  bool seed_set = false;
};

// Each command reads its config, writes artifacts into out_dir and returns
// 0 on success or 1 when an enabled check fails. Configuration problems
// throw ConfigError, numerical failures NumericError.
int cmd_spectrum(const CommandContext& ctx);
int cmd_certify(const CommandContext& ctx);
int cmd_hypotheses(const CommandContext& ctx);
int cmd_kernel(const CommandContext& ctx);
int cmd_reconstruct(const CommandContext& ctx);

}  // namespace slgate::cli

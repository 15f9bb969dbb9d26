// SPDX-License-Identifier: Apache-2.0
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "slgate/errors.hpp"
#include "version.hpp"

namespace {

using slgate::cli::CommandContext;

struct SubArgs {
  CLI::App* sub = nullptr;
  CommandContext ctx;
};

SubArgs* add_command(CLI::App& app, std::vector<SubArgs>& store,
                     const std::string& name, const std::string& desc) {
  auto& sa = store.emplace_back();
  sa.sub = app.add_subcommand(name, desc);
  sa.sub->add_option("--config", sa.ctx.config_path, "JSON configuration file")
      ->required();
  sa.sub->add_option("--out", sa.ctx.out_dir, "output directory")
      ->default_val(".");
  sa.sub->add_option("--seed", sa.ctx.seed,
                     "seed for randomized probes, recorded in outputs");
  return &sa;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Direct and inverse spectral toolkit for -u'' + q u on [0,1]"};
  app.set_version_flag("--version", std::string("slgate ") +
                                        slgate::cli::kVersion);
  app.require_subcommand(1);

  std::vector<SubArgs> subs;
  subs.reserve(5);
  add_command(app, subs, "spectrum",
              "eigenvalues and asymptotic residuals of one operator");
  add_command(app, subs, "certify",
              "certificate f on shared eigenvalues of a pair");
  add_command(app, subs, "hypotheses",
              "counting-function hypotheses on a sub-spectrum");
  add_command(app, subs, "kernel",
              "transform kernel s, function g and operator checks");
  add_command(app, subs, "reconstruct",
              "recover the unknown left potential and Robin constant");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    for (auto& sa : subs) {
      if (!sa.sub->parsed()) continue;
      sa.ctx.seed_set = sa.sub->count("--seed") > 0;
      const std::string name = sa.sub->get_name();
      if (name == "spectrum") return slgate::cli::cmd_spectrum(sa.ctx);
      if (name == "certify") return slgate::cli::cmd_certify(sa.ctx);
      if (name == "hypotheses") return slgate::cli::cmd_hypotheses(sa.ctx);
      if (name == "kernel") return slgate::cli::cmd_kernel(sa.ctx);
      if (name == "reconstruct") return slgate::cli::cmd_reconstruct(sa.ctx);
    }
    std::cerr << "slgate: no command selected\n";
    return 2;
  } catch (const slgate::ConfigError& e) {
    std::cerr << "slgate: config error: " << e.what() << '\n';
    return 2;
  } catch (const slgate::NumericError& e) {
    std::cerr << "slgate: numeric error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "slgate: error: " << e.what() << '\n';
    return 3;
  }
}

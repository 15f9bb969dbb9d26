// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "config.hpp"
#include "slgate/errors.hpp"
#include "version.hpp"

namespace slgate::cli {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::filesystem::path prepare_out_dir(const CommandContext& ctx) {
  std::filesystem::path dir(ctx.out_dir.empty() ? "." : ctx.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw ConfigError("cannot create output directory " + dir.string() + ": " +
                      ec.message());
  }
  return dir;
}

void write_text(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
  out << body;
  if (!out) throw ConfigError("short write to " + path.string());
}

json run_meta(const CommandContext& ctx, const std::string& command,
              const json& config) {
  json meta;
  meta["tool"] = "slgate";
  meta["version"] = kVersion;
  meta["command"] = command;
  if (ctx.seed_set) {
    meta["seed"] = ctx.seed;
  } else {
    meta["seed"] = nullptr;
  }
  meta["config"] = config;
  return meta;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Sub-spectrum selection shared by certify/hypotheses: either an explicit
// index array or a scenario descriptor.
std::vector<int> parse_indices(const json& cfg, int j_max,
                               const std::string& where) {
  const bool has_idx = cfg.contains("indices");
  const bool has_scn = cfg.contains("scenario");
  if (has_idx == has_scn) {
    throw ConfigError(where + ": provide exactly one of \"indices\" or "
                      "\"scenario\"");
  }
  if (has_idx) {
    const auto& arr = cfg.at("indices");
    if (!arr.is_array() || arr.empty()) {
      throw ConfigError(where + ": \"indices\" must be a non-empty array");
    }
    std::vector<int> out;
    for (const auto& e : arr) {
      if (!e.is_number_integer()) {
        throw ConfigError(where + ": \"indices\" entries must be integers");
      }
      out.push_back(e.get<int>());
    }
    return out;
  }
  return parse_scenario(cfg.at("scenario"), j_max + 1, where + ".scenario");
}

}  // namespace

int cmd_spectrum(const CommandContext& ctx) {
  const json cfg = load_config(ctx.config_path);
  check_keys(cfg, {"operator", "j_max", "solver"}, "spectrum");
  if (!cfg.contains("operator")) {
    throw ConfigError("spectrum: missing required key \"operator\"");
  }
  const auto oc = parse_operator(cfg.at("operator"), "spectrum.operator");
  const int j_max = require_int(cfg, "j_max", "spectrum");
  SolverOptions opt;
  if (cfg.contains("solver")) opt = parse_solver(cfg.at("solver"), "spectrum.solver");

  const auto sp = compute_spectrum(oc.op, j_max, opt);
  const auto res = asymptotic_residuals(sp);

  const auto dir = prepare_out_dir(ctx);
  std::ostringstream csv;
  csv << "j,lambda,asymptotic_residual\n";
  for (size_t j = 0; j < sp.eigenvalues.size(); ++j) {
    csv << j << ',' << fmt17(sp.eigenvalues[j]) << ',' << fmt17(res[j]) << '\n';
  }
  write_text(dir / "spectrum.csv", csv.str());

  json summary = run_meta(ctx, "spectrum", cfg);
  summary["j_max"] = j_max;
  summary["eigenvalue_count"] = sp.eigenvalues.size();
  summary["max_char_residual"] = sp.max_char_residual;
  summary["root_rel_tol"] = sp.root_rel_tol;
  summary["int_q"] = trapezoid(oc.op.q);
  summary["last_residual"] = res.empty() ? 0.0 : res.back();
  write_text(dir / "summary.json", dump(summary));
  return 0;
}

int cmd_certify(const CommandContext& ctx) {
  const json cfg = load_config(ctx.config_path);
  check_keys(cfg, {"pair", "j_max", "indices", "scenario", "match_tol",
                   "vanish_tol"},
             "certify");
  if (!cfg.contains("pair")) {
    throw ConfigError("certify: missing required key \"pair\"");
  }
  const auto pc = parse_pair(cfg.at("pair"), "certify.pair");
  const int j_max = require_int(cfg, "j_max", "certify");
  const double match_tol = get_num(cfg, "match_tol", 1e-7, "certify");
  const double vanish_tol = get_num(cfg, "vanish_tol", 1e-6, "certify");

  const auto indices = parse_indices(cfg, j_max, "certify");
  auto sp1 = compute_spectrum(OperatorSpec{pc.pp.q1, {pc.pp.h1, pc.pp.H}},
                              j_max);
  const auto S = make_subspectrum(sp1, indices);
  const auto report = vanish_on_common(pc.pp, S, match_tol);

  const bool passed =
      report.max_f_dev <= vanish_tol * (1.0 + std::abs(report.f_offset));

  const auto dir = prepare_out_dir(ctx);
  std::ostringstream csv;
  report.write_csv(csv);
  write_text(dir / "certificate.csv", csv.str());

  json out = run_meta(ctx, "certify", cfg);
  out["report"] = json::parse(report.to_json());
  out["vanish_tol"] = vanish_tol;
  out["passed"] = passed;
  write_text(dir / "certificate.json", dump(out));
  return passed ? 0 : 1;
}

int cmd_hypotheses(const CommandContext& ctx) {
  const json cfg = load_config(ctx.config_path);
  check_keys(cfg, {"operator", "j_max", "indices", "scenario", "a", "p",
                   "j_threshold", "tol", "fit_tol"},
             "hypotheses");
  if (!cfg.contains("operator")) {
    throw ConfigError("hypotheses: missing required key \"operator\"");
  }
  const auto oc = parse_operator(cfg.at("operator"), "hypotheses.operator");
  const int j_max = require_int(cfg, "j_max", "hypotheses");

  HypothesisConfig hc;
  hc.a = require_num(cfg, "a", "hypotheses");
  hc.p = require_num(cfg, "p", "hypotheses");
  hc.j_threshold = get_int(cfg, "j_threshold", hc.j_threshold, "hypotheses");
  hc.tol = get_num(cfg, "tol", hc.tol, "hypotheses");
  hc.fit_tol = get_num(cfg, "fit_tol", hc.fit_tol, "hypotheses");

  const auto indices = parse_indices(cfg, j_max, "hypotheses");
  const auto sp = compute_spectrum(oc.op, j_max);
  const auto S = make_subspectrum(sp, indices);

  const auto h1 = check_H1(S, hc);
  const auto h2 = check_H2(S, hc);
  const auto hl = check_HL(S, hc);

  const auto dir = prepare_out_dir(ctx);
  for (const auto* rep : {&h1, &h2, &hl}) {
    std::ostringstream csv;
    rep->write_csv(csv);
    std::string name = "counting_" + rep->check + ".csv";
    for (auto& c : name) c = static_cast<char>(std::tolower(c));
    write_text(dir / name, csv.str());
  }

  json out = run_meta(ctx, "hypotheses", cfg);
  out["H1"] = json::parse(h1.to_json());
  out["H2"] = json::parse(h2.to_json());
  out["HL"] = json::parse(hl.to_json());
  out["passed"] = h1.passed && h2.passed && hl.passed;
  write_text(dir / "hypotheses.json", dump(out));
  return (h1.passed && h2.passed && hl.passed) ? 0 : 1;
}

int cmd_kernel(const CommandContext& ctx) {
  const json cfg = load_config(ctx.config_path);
  check_keys(cfg, {"pair", "options", "checks"}, "kernel");
  if (!cfg.contains("pair")) {
    throw ConfigError("kernel: missing required key \"pair\"");
  }
  const auto pc = parse_pair(cfg.at("pair"), "kernel.pair");
  KernelOptions opt;
  if (cfg.contains("options")) {
    opt = parse_kernel_options(cfg.at("options"), "kernel.options");
  }

  json checks_cfg = json::object();
  if (cfg.contains("checks")) checks_cfg = cfg.at("checks");
  check_keys(checks_cfg,
             {"support", "support_tol", "holder_p", "contraction_n",
              "fourier_z_count", "fourier_z_hi", "fixed_point",
              "fixed_point_tol"},
             "kernel.checks");
  const bool want_support = checks_cfg.value("support", true);
  const double support_tol =
      get_num(checks_cfg, "support_tol", 1e-3, "kernel.checks");
  std::vector<double> holder_p = {1.0, 2.0, 3.0};
  if (checks_cfg.contains("holder_p")) {
    holder_p.clear();
    for (const auto& e : checks_cfg.at("holder_p")) {
      if (!e.is_number()) {
        throw ConfigError("kernel.checks: \"holder_p\" entries must be numbers");
      }
      holder_p.push_back(e.get<double>());
    }
  }
  const int contraction_n =
      get_int(checks_cfg, "contraction_n", 5, "kernel.checks");
  const int fourier_z_count =
      get_int(checks_cfg, "fourier_z_count", 0, "kernel.checks");
  const double fourier_z_hi =
      get_num(checks_cfg, "fourier_z_hi", 40.0, "kernel.checks");
  const bool want_fixed_point = checks_cfg.value("fixed_point", true);
  const double fixed_point_tol =
      get_num(checks_cfg, "fixed_point_tol", 1e-4, "kernel.checks");

  const auto K = build_s(pc.pp, opt);
  const auto g = g_compute(pc.pp, K);

  const auto dir = prepare_out_dir(ctx);
  {
    std::ostringstream csv;
    K.write_matrix_csv(csv);
    write_text(dir / "kernel_matrix.csv", csv.str());
  }
  {
    std::ostringstream csv;
    g.write_csv(csv);
    write_text(dir / "g.csv", csv.str());
  }
  json meta = run_meta(ctx, "kernel", cfg);
  meta["kernel"] = json::parse(K.meta_json());
  write_text(dir / "kernel_meta.json", dump(meta));

  bool all_pass = true;
  json checks = json::object();
  if (want_support) {
    const auto sc = support_check(K);
    const bool ok = sc.ratio <= support_tol;
    checks["support"] = {{"max_inside", sc.max_inside},
                         {"max_outside", sc.max_outside},
                         {"ratio", sc.ratio},
                         {"guard_cells", sc.guard_cells},
                         {"tol", support_tol},
                         {"passed", ok}};
    all_pass = all_pass && ok;
  }
  if (!holder_p.empty()) {
    json arr = json::array();
    for (double p : holder_p) {
      const auto hc = holder_bound_check(pc.pp, K, p);
      arr.push_back({{"p", hc.p},
                     {"lhs", hc.lhs},
                     {"rhs", hc.rhs},
                     {"rhs_small_const", hc.rhs_small_const},
                     {"slack", hc.slack},
                     {"sup_s_2p", hc.sup_s_2p},
                     {"dq_l1", hc.dq_l1},
                     {"holds", hc.holds},
                     {"small_const_holds", hc.small_const_holds}});
      all_pass = all_pass && hc.holds;
    }
    checks["holder"] = std::move(arr);
  }
  if (contraction_n > 0) {
    const auto cc = contraction_check(
        K, contraction_n, ctx.seed_set ? ctx.seed : 0x51906a7eULL);
    json rows = json::array();
    for (const auto& r : cc.rows) {
      rows.push_back({{"n", r.n},
                      {"norm", r.discrete_norm},
                      {"bound", r.bound},
                      {"holds", r.holds}});
    }
    checks["contraction"] = {{"rows", std::move(rows)},
                             {"sup_s_l2", cc.sup_s_l2},
                             {"probe_max_ratio", cc.probe_max_ratio},
                             {"all_hold", cc.all_hold}};
    all_pass = all_pass && cc.all_hold;
  }
  if (fourier_z_count > 0) {
    std::vector<double> zs;
    zs.reserve(static_cast<size_t>(fourier_z_count));
    for (int i = 0; i < fourier_z_count; ++i) {
      zs.push_back(fourier_z_count == 1
                       ? fourier_z_hi
                       : fourier_z_hi * i / (fourier_z_count - 1));
    }
    const auto fc = fourier_consistency(pc.pp, K, g, zs);
    json rows = json::array();
    for (const auto& r : fc.rows) {
      rows.push_back({{"z", r.z},
                      {"g_hat_re", r.g_hat_re},
                      {"g_hat_im", r.g_hat_im},
                      {"f", r.f},
                      {"dev", r.dev}});
    }
    checks["fourier"] = {{"rows", std::move(rows)},
                         {"max_dev", fc.max_dev},
                         {"max_abs_f", fc.max_abs_f},
                         {"tol", fc.tol},
                         {"passed", fc.within}};
    all_pass = all_pass && fc.within;
  }
  if (want_fixed_point) {
    const auto fp = fixed_point_check(pc.pp, K);
    const bool ok = fp.rel_err_l1 <= fixed_point_tol;
    checks["fixed_point"] = {{"rel_err_l1", fp.rel_err_l1},
                             {"cond_estimate", fp.cond_estimate},
                             {"tol", fixed_point_tol},
                             {"passed", ok}};
    all_pass = all_pass && ok;
  }
  json out = run_meta(ctx, "kernel", cfg);
  out["checks"] = std::move(checks);
  out["passed"] = all_pass;
  write_text(dir / "kernel_checks.json", dump(out));
  return all_pass ? 0 : 1;
}

int cmd_reconstruct(const CommandContext& ctx) {
  const json cfg = load_config(ctx.config_path);
  check_keys(cfg,
             {"known_part", "known_grid_n", "a", "H", "targets", "basis_dim",
              "grid_n", "mu", "max_iterations"},
             "reconstruct");
  ReconstructionProblem prob;
  prob.a = require_num(cfg, "a", "reconstruct");
  prob.H = require_num(cfg, "H", "reconstruct");
  prob.basis_dim = get_int(cfg, "basis_dim", prob.basis_dim, "reconstruct");
  prob.grid_n = get_int(cfg, "grid_n", prob.grid_n, "reconstruct");
  prob.mu = get_num(cfg, "mu", prob.mu, "reconstruct");
  prob.max_iterations =
      get_int(cfg, "max_iterations", prob.max_iterations, "reconstruct");

  if (!cfg.contains("known_part")) {
    throw ConfigError("reconstruct: missing required key \"known_part\"");
  }
  const int known_grid_n = get_int(cfg, "known_grid_n", 1001, "reconstruct");
  const auto kp_spec =
      parse_potential(cfg.at("known_part"), "reconstruct.known_part");
  prob.known_part = materialize(kp_spec, prob.a, 1.0, known_grid_n);

  if (!cfg.contains("targets")) {
    throw ConfigError("reconstruct: missing required key \"targets\"");
  }
  const auto& tg = cfg.at("targets");
  check_keys(tg, {"indices", "values"}, "reconstruct.targets");
  if (!tg.contains("indices") || !tg.contains("values")) {
    throw ConfigError("reconstruct.targets: needs \"indices\" and \"values\"");
  }
  for (const auto& e : tg.at("indices")) {
    if (!e.is_number_integer()) {
      throw ConfigError("reconstruct.targets: indices must be integers");
    }
    prob.target_indices.push_back(e.get<int>());
  }
  for (const auto& e : tg.at("values")) {
    if (!e.is_number()) {
      throw ConfigError("reconstruct.targets: values must be numbers");
    }
    prob.target_values.push_back(e.get<double>());
  }

  const auto res = reconstruct(prob);

  const auto dir = prepare_out_dir(ctx);
  {
    std::ostringstream csv;
    csv << "iteration,misfit\n";
    for (size_t i = 0; i < res.misfit_history.size(); ++i) {
      csv << i << ',' << fmt17(res.misfit_history[i]) << '\n';
    }
    write_text(dir / "history.csv", csv.str());
  }
  {
    const auto q = assemble_potential(res.coefficients, prob, prob.grid_n);
    std::ostringstream csv;
    csv << "x,q\n";
    for (int i = 0; i < q.grid_n(); ++i) {
      csv << fmt17(q.node(i)) << ',' << fmt17(q.samples[static_cast<size_t>(i)])
          << '\n';
    }
    write_text(dir / "q_reconstructed.csv", csv.str());
  }
  json out = run_meta(ctx, "reconstruct", cfg);
  out["result"] = json::parse(res.to_json());
  write_text(dir / "reconstruction.json", dump(out));
  return res.converged ? 0 : 1;
}

}  // namespace slgate::cli

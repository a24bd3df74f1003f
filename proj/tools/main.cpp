// Command-line front end: mesh dumps, direct solves, Green functions, and the
// verification/decay sweeps. Every run echoes its effective configuration so
// any output table can be reproduced from its own header.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sdgreen/greens.hpp"
#include "sdgreen/harness.hpp"
#include "sdgreen/mesh.hpp"
#include "sdgreen/stabilization.hpp"

namespace {

using namespace sdgreen;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os << text;
  std::cerr << "wrote " << path << "\n";
}

template <typename WriteFn>
void emit(const std::string& path, WriteFn write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  write(os);
  std::cerr << "wrote " << path << "\n";
}

ShishkinMesh checked_mesh(const ExperimentConfig& cfg, const ProblemSpec& spec,
                          int N) {
  MeshParams params;
  params.N = N;
  params.spec = spec;
  const auto tp = transition_parameters(params);
  if (!tp.assumption1 && !cfg.allow_non_assumption1)
    throw std::domain_error(
        "mesh is outside the convection-dominated regime (eps > 1/N or a "
        "transition parameter capped at 1/2); pass --allow-non-assumption1 to "
        "proceed");
  return ShishkinMesh::build(params);
}

int run_mesh_dump(const ExperimentConfig& cfg) {
  const int N = cfg.N_list.front();
  const double eps = cfg.eps_list.front();
  const ProblemSpec spec(eps, cfg.b1, cfg.b2, nullptr);
  const ShishkinMesh mesh = checked_mesh(cfg, spec, N);
  if (cfg.out.empty())
    std::cout << mesh.to_json() << "\n";
  else
    write_text(cfg.out + ".json", mesh.to_json() + "\n");
  return 0;
}

int run_solve_cmd(const ExperimentConfig& cfg) {
  const SolveSweep sweep = run_solve(cfg);
  emit(cfg.out.empty() ? "" : cfg.out + ".csv",
       [&](std::ostream& os) { write_solve_csv(sweep, os); });
  if (!cfg.out.empty()) write_text(cfg.out + ".json", solve_summary_json(sweep));
  int failures = 0;
  for (const auto& row : sweep.rows)
    if (!row.ok) {
      ++failures;
      std::cerr << "solve N=" << row.N << " eps=" << row.eps << ": " << row.error
                << "\n";
    }
  return failures == 0 ? 0 : 1;
}

int run_green_cmd(const ExperimentConfig& cfg) {
  const int N = cfg.N_list.front();
  const double eps = cfg.eps_list.front();
  const double k = cfg.k_list.front();
  const ProblemSpec spec(eps, cfg.b1, cfg.b2, nullptr);
  const ShishkinMesh mesh = checked_mesh(cfg, spec, N);
  const auto profile = cfg.crosswind ? StabilizationProfile::crosswind(spec, N)
                                     : StabilizationProfile::plain_sdfem(spec, N);
  const auto [is, js] = resolve_xstar(cfg.xstar_rule, N);
  const GreenFunction gf = discrete_green(mesh, spec, profile, is, js, cfg.tol);
  if (!gf.report.success)
    throw std::runtime_error("solver stalled at relative residual " +
                             std::to_string(gf.report.rel_residual));
  const WeightParams w = WeightParams::make(k, gf.x_star, N, eps);
  const DecayProfile prof = green_decay_profile(gf, mesh, spec, w);
  std::cerr << "green N=" << N << " eps=" << eps << " x*=(" << gf.x_star.x << ","
            << gf.x_star.y << ") method=" << gf.report.method
            << " residual=" << gf.report.rel_residual << " peak=" << prof.peak_abs
            << " at (" << prof.peak_i << "," << prof.peak_j << ")\n";
  emit(cfg.out.empty() ? "" : cfg.out + ".csv",
       [&](std::ostream& os) { write_decay_profile_csv(prof, cfg, os); });
  return 0;
}

int run_verify_cmd(const ExperimentConfig& cfg) {
  const GreenSuiteReport rep = run_green_suite(cfg);
  emit(cfg.out.empty() ? "" : cfg.out + ".csv",
       [&](std::ostream& os) { write_green_suite_csv(rep, os); });
  if (!cfg.out.empty())
    write_text(cfg.out + ".json", green_suite_summary_json(rep));
  int failures = 0;
  for (const auto& row : rep.rows)
    if (!row.ok) {
      ++failures;
      std::cerr << "verify N=" << row.N << " eps=" << row.eps << " k=" << row.k
                << ": " << row.error << "\n";
    }
  return failures == 0 ? 0 : 1;
}

int run_decay_cmd(const ExperimentConfig& cfg) {
  const DecayReport rep = run_decay(cfg);
  emit(cfg.out.empty() ? "" : cfg.out + "_regions.csv",
       [&](std::ostream& os) { write_decay_csv(rep, os); });
  emit(cfg.out.empty() ? "" : cfg.out + "_rings.csv",
       [&](std::ostream& os) { write_decay_rings_csv(rep, os); });
  if (!cfg.out.empty()) write_text(cfg.out + ".json", decay_summary_json(rep));
  int failures = 0;
  for (const auto& row : rep.ring_rows)
    if (!row.ok) {
      ++failures;
      std::cerr << "decay N=" << row.N << " eps=" << row.eps << " k=" << row.k
                << ": " << row.error << "\n";
    }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  // A config file provides the baseline; explicit flags override it.
  sdgreen::ExperimentConfig cfg;
  for (int a = 1; a < argc; ++a) {
    const std::string arg = argv[a];
    try {
      if (arg == "--config" && a + 1 < argc)
        cfg = sdgreen::ExperimentConfig::from_file(argv[a + 1]);
      else if (arg.rfind("--config=", 0) == 0)
        cfg = sdgreen::ExperimentConfig::from_file(arg.substr(9));
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  }

  CLI::App app{
      "Streamline-diffusion finite elements with crosswind diffusion on "
      "Shishkin meshes: solves, discrete Green functions, weighted-norm "
      "verification, and pointwise decay experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<double> b_vec;
  bool plain_sdfem = false;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key = value configuration file");
    sub->add_option("--N", cfg.N_list, "mesh sizes (comma separated, even, >= 4)")
        ->delimiter(',');
    sub->add_option("--eps", cfg.eps_list, "diffusion parameters")->delimiter(',');
    sub->add_option("--b", b_vec, "convection field b1,b2")
        ->delimiter(',')
        ->expected(2);
    sub->add_option("--k", cfg.k_list, "weight-scale multipliers")->delimiter(',');
    sub->add_option("--xstar", cfg.xstar_rule,
                    "anchor rule: center | xlayer | ylayer | i,j");
    sub->add_option("--quad-order", cfg.quad_order,
                    "Gauss points per direction for weighted integrals");
    sub->add_option("--assembly-quad-order", cfg.assembly_quad_order,
                    "Gauss points per direction for assembly");
    sub->add_option("--tol", cfg.tol, "solver relative-residual tolerance");
    sub->add_option("--source", cfg.source, "right-hand side: zero | one | poly");
    sub->add_option("--out", cfg.out, "output path stem (default: stdout)");
    sub->add_option("--seed", cfg.seed, "random seed recorded in reports");
    sub->add_flag("--allow-non-assumption1", cfg.allow_non_assumption1,
                  "permit meshes outside the convection-dominated regime");
    sub->add_flag("--plain-sdfem", plain_sdfem,
                  "disable the artificial crosswind diffusion");
    sub->add_option("--K", cfg.K_list, "exclusion strengths (omega >= N^-K)")
        ->delimiter(',');
    sub->add_option("--v", cfg.v_exponent, "decay template exponent in N^-v");
  };

  CLI::App* mesh_cmd = app.add_subcommand("mesh", "dump mesh coordinates as JSON");
  CLI::App* solve_cmd = app.add_subcommand("solve", "solve the discrete scheme");
  CLI::App* green_cmd =
      app.add_subcommand("green", "one Green function with its decay profile");
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "Green-function sweep with norm, coercivity, and bound quantities");
  CLI::App* decay_cmd =
      app.add_subcommand("decay", "sup-norm decay outside the anchor neighborhood");
  for (CLI::App* sub : {mesh_cmd, solve_cmd, green_cmd, verify_cmd, decay_cmd})
    add_common(sub);

  CLI11_PARSE(app, argc, argv);

  if (b_vec.size() == 2) {
    cfg.b1 = b_vec[0];
    cfg.b2 = b_vec[1];
  }
  if (plain_sdfem) cfg.crosswind = false;

  try {
    if (mesh_cmd->parsed()) return run_mesh_dump(cfg);
    if (solve_cmd->parsed()) return run_solve_cmd(cfg);
    if (green_cmd->parsed()) return run_green_cmd(cfg);
    if (verify_cmd->parsed()) return run_verify_cmd(cfg);
    if (decay_cmd->parsed()) return run_decay_cmd(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

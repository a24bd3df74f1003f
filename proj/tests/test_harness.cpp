#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "sdgreen/harness.hpp"

using namespace sdgreen;

TEST_CASE("anchor rules resolve to the documented node indices") {
  CHECK(resolve_xstar("center", 16) == std::pair<int, int>(4, 4));
  CHECK(resolve_xstar("xlayer", 16) == std::pair<int, int>(12, 4));
  CHECK(resolve_xstar("ylayer", 16) == std::pair<int, int>(4, 12));
  CHECK(resolve_xstar("center", 4) == std::pair<int, int>(1, 1));
  CHECK(resolve_xstar("5,9", 16) == std::pair<int, int>(5, 9));
  CHECK_THROWS(resolve_xstar("0,4", 16));    // boundary node
  CHECK_THROWS(resolve_xstar("16,4", 16));   // boundary node
  CHECK_THROWS(resolve_xstar("corner", 16)); // unknown rule
}

TEST_CASE("least-squares fit recovers an exact line and flags poor data") {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
  std::vector<double> y(4);
  for (int i = 0; i < 4; ++i) y[i] = -1.7 * x[i] + 0.4;
  const FitResult f = fit_line(x, y);
  CHECK(f.slope == doctest::Approx(-1.7).epsilon(1e-12));
  CHECK(f.intercept == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(f.r2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.reliable);

  const FitResult two = fit_line({1.0, 2.0}, {3.0, 5.0});
  CHECK_FALSE(two.reliable);  // too few points even though r2 = 1

  const FitResult noisy = fit_line({1, 2, 3, 4, 5}, {0.0, 5.0, -4.0, 3.0, 0.5});
  CHECK_FALSE(noisy.reliable);
  CHECK(noisy.r2 < 0.9);
}

TEST_CASE("config lines round-trip through the canonical echo") {
  ExperimentConfig cfg;
  cfg.apply_line("N", "8,16");
  cfg.apply_line("eps", "1e-3,1e-4");
  cfg.apply_line("b", "2.0,0.5");
  cfg.apply_line("k", "1.5");
  cfg.apply_line("xstar", "xlayer");
  cfg.apply_line("tol", "1e-11");
  cfg.apply_line("source", "poly");
  cfg.apply_line("seed", "77");
  cfg.apply_line("crosswind", "false");
  cfg.apply_line("K", "1,2");
  cfg.apply_line("v", "1.5");
  CHECK(cfg.N_list == std::vector<int>{8, 16});
  CHECK(cfg.b1 == 2.0);
  CHECK(cfg.b2 == 0.5);
  CHECK(cfg.xstar_rule == "xlayer");
  CHECK_FALSE(cfg.crosswind);
  CHECK(cfg.v_exponent == 1.5);
  CHECK_THROWS(cfg.apply_line("no_such_key", "1"));

  const std::string path = "harness_cfg_roundtrip.cfg";
  {
    std::ofstream os(path);
    os << "# comment line\n[sweep]\n" << cfg.echo();
  }
  const ExperimentConfig back = ExperimentConfig::from_file(path);
  CHECK(back.echo() == cfg.echo());
  std::remove(path.c_str());
}

TEST_CASE("solve sweep honours trivial sources and isolates failures") {
  ExperimentConfig cfg;
  cfg.N_list = {8, 16};
  cfg.eps_list = {1e-3, 0.2};  // 0.2 violates the mesh-width assumption at N=8
  cfg.source = "zero";
  const SolveSweep sweep = run_solve(cfg);
  REQUIRE(sweep.rows.size() == 4);
  int ok_rows = 0, bad_rows = 0;
  for (const SolveRow& r : sweep.rows) {
    if (r.ok) {
      ++ok_rows;
      CHECK(r.u_min == 0.0);
      CHECK(r.u_max == 0.0);
      CHECK(r.u_at_center == 0.0);
    } else {
      ++bad_rows;
      CHECK_FALSE(r.error.empty());
    }
  }
  CHECK(ok_rows == 2);
  CHECK(bad_rows == 2);

  ExperimentConfig one = cfg;
  one.eps_list = {1e-3};
  one.source = "one";
  const SolveSweep s1 = run_solve(one);
  for (const SolveRow& r : s1.rows) {
    REQUIRE(r.ok);
    CHECK(r.u_max > 0.5);
    CHECK(r.u_max < 1.3);   // no blow-up past the maximum-principle ceiling
    CHECK(r.u_min >= -0.2); // layer undershoots stay small
    CHECK(r.u_min <= 0.0);  // boundary zeros are part of the range
  }
}

TEST_CASE("solutions converge toward a fine-grid reference at fixed probes") {
  // Meshes for different N are not nested (the transition point moves), so the
  // comparison uses fixed probe points evaluated through the interpolant.
  ExperimentConfig cfg;
  cfg.source = "poly";
  cfg.eps_list = {1e-3};

  const double eps = 1e-3;
  const ProblemSpec spec(eps, 1.0, 1.0, builtin_source("poly"));
  const std::vector<std::pair<double, double>> probes{
      {0.25, 0.25}, {0.5, 0.5}, {0.375, 0.625}};

  auto solve_at = [&](int N) {
    MeshParams mp;
    mp.N = N;
    mp.spec = spec;
    const ShishkinMesh mesh = ShishkinMesh::build(mp);
    const auto profile = StabilizationProfile::crosswind(spec, N);
    const SparseSystem sys = assemble(mesh, spec, profile);
    const SolveReport rep = solve(sys, 1e-12);
    REQUIRE(rep.success);
    const NodalField u = to_nodal(rep.x, N);
    std::vector<double> vals;
    for (const auto& p : probes) vals.push_back(u.eval(mesh, p.first, p.second));
    return vals;
  };

  const std::vector<double> ref = solve_at(64);
  double prev = 1e300;
  for (int N : {8, 16, 32}) {
    const std::vector<double> got = solve_at(N);
    double err = 0.0;
    for (size_t p = 0; p < probes.size(); ++p)
      err = std::max(err, std::fabs(got[p] - ref[p]));
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 2e-2);  // N = 32 against N = 64 on away-from-layer probes
}

TEST_CASE("green suite output is deterministic") {
  ExperimentConfig cfg;
  cfg.N_list = {8, 16};
  cfg.eps_list = {1e-3};
  cfg.k_list = {2.0};
  cfg.tol = 1e-11;
  const GreenSuiteReport a = run_green_suite(cfg);
  const GreenSuiteReport b = run_green_suite(cfg);
  std::ostringstream csv_a, csv_b;
  write_green_suite_csv(a, csv_a);
  write_green_suite_csv(b, csv_b);
  CHECK(csv_a.str() == csv_b.str());
  CHECK(csv_a.str().rfind("# ", 0) == 0);  // config echo leads the table

  REQUIRE(a.rows.size() == 2);
  for (const GreenSuiteRow& r : a.rows) {
    REQUIRE(r.ok);
    CHECK(r.norm_sq > 0.0);
    CHECK(r.coercivity_ratio > 0.0);
    CHECK(std::fabs(r.identity_rel_resid) < 1e-6);
  }
  CHECK(green_suite_summary_json(a) == green_suite_summary_json(b));
}

TEST_CASE("green sweep isolates rows that violate the mesh assumption") {
  ExperimentConfig cfg;
  cfg.N_list = {16};
  cfg.eps_list = {1e-3, 0.2};
  cfg.k_list = {2.0};
  const GreenSuiteReport rep = run_green_suite(cfg);
  REQUIRE(rep.rows.size() == 2);
  CHECK(rep.rows[0].ok);
  CHECK_FALSE(rep.rows[1].ok);
  CHECK_FALSE(rep.rows[1].error.empty());

  ExperimentConfig relaxed = cfg;
  relaxed.eps_list = {0.2};
  relaxed.allow_non_assumption1 = true;
  const GreenSuiteReport ok_rep = run_green_suite(relaxed);
  REQUIRE(ok_rep.rows.size() == 1);
  CHECK(ok_rep.rows[0].ok);
}

TEST_CASE("decay study reports regions and shrinks with the exclusion cutoff") {
  ExperimentConfig cfg;
  cfg.N_list = {32};
  cfg.eps_list = {1e-4};
  cfg.k_list = {1.0};
  cfg.K_list = {1.0, 2.0};
  cfg.xstar_rule = "center";
  const DecayReport rep = run_decay(cfg);
  REQUIRE(rep.region_rows.size() == 6);  // two K values, three region groups
  REQUIRE(rep.ring_rows.size() == 1);

  double sup_k1 = -1.0, sup_k2 = -1.0;
  for (const DecayRegionRow& r : rep.region_rows) {
    CHECK((r.region_label == "Os" || r.region_label == "OxOy" ||
           r.region_label == "Oxy"));
    CHECK(r.template_value > 0.0);
    if (r.region_label == "Os" && !r.empty) {
      if (r.K == 1.0) sup_k1 = r.sup_abs;
      if (r.K == 2.0) sup_k2 = r.sup_abs;
    }
  }
  if (sup_k1 >= 0.0 && sup_k2 >= 0.0)
    CHECK(sup_k2 <= sup_k1);  // a larger cutoff excludes more, shrinking the sup

  std::ostringstream regions, rings;
  write_decay_csv(rep, regions);
  write_decay_rings_csv(rep, rings);
  CHECK(regions.str().find("region") != std::string::npos);
  CHECK(rings.str().find("m,count,max_abs") != std::string::npos);

  ExperimentConfig corner = cfg;
  corner.xstar_rule = "30,30";  // corner-layer anchor is rejected for decay runs
  const DecayReport bad = run_decay(corner);
  REQUIRE(bad.ring_rows.size() == 1);
  CHECK_FALSE(bad.ring_rows[0].ok);
  CHECK(bad.ring_rows[0].error.find("corner") != std::string::npos);
  CHECK(bad.region_rows.empty());
}

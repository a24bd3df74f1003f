#ifndef SDGREEN_HARNESS_HPP
#define SDGREEN_HARNESS_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sdgreen/greens.hpp"
#include "sdgreen/mesh.hpp"
#include "sdgreen/problem.hpp"
#include "sdgreen/solver.hpp"
#include "sdgreen/weights.hpp"

namespace sdgreen {

/// Sweep configuration. Every field has a CLI flag and a key=value config-file
/// form; the effective values are echoed into each report so that any table
/// can be reproduced from its own header.
struct ExperimentConfig {
  std::vector<int> N_list{16, 32, 64};
  std::vector<double> eps_list{1e-3};
  double b1 = 1.0, b2 = 1.0;
  std::vector<double> k_list{2.0};
  std::string xstar_rule = "center";  // center | xlayer | ylayer | "i,j"
  int quad_order = 5;                 // weighted integrals
  int assembly_quad_order = 3;
  double tol = 1e-10;
  std::string source = "one";  // zero | one | poly
  std::string out;             // output path stem ("" = stdout only)
  unsigned long seed = 1;
  bool allow_non_assumption1 = false;
  bool crosswind = true;
  std::vector<double> K_list{1.0, 2.0, 3.0};  // exclusion strengths for decay runs
  double v_exponent = 2.0;                    // decay template N^{-v}

  /// Parse "key = value" lines ('#' comments, optional [section] headers).
  /// Unknown keys are an error.
  static ExperimentConfig from_file(const std::string& path);
  void apply_line(const std::string& key, const std::string& value);
  std::string echo() const;  // canonical key = value block
};

/// Resolve the anchor rule to a node index: "center" -> (N/4, N/4) inside the
/// smooth region, "xlayer" -> (3N/4, N/4), "ylayer" -> (N/4, 3N/4), or an
/// explicit "i,j".
std::pair<int, int> resolve_xstar(const std::string& rule, int N);

/// Least-squares fit of y against x with coefficient of determination; a fit
/// with r2 < 0.9 is flagged and must not be asserted on.
struct FitResult {
  double slope = 0, intercept = 0, r2 = 0;
  bool reliable = false;  // r2 >= 0.9 and at least 3 points
};
FitResult fit_line(const std::vector<double>& x, const std::vector<double>& y);

// ---------------------------------------------------------------------------
// solve sweep

struct SolveRow {
  int N = 0;
  double eps = 0;
  bool ok = false;
  std::string error;
  double u_min = 0, u_max = 0;
  double u_at_center = 0;
  double rel_residual = 0;
  std::string method;
  double seconds = 0;
};

struct SolveSweep {
  ExperimentConfig config;
  std::vector<SolveRow> rows;
};

SolveSweep run_solve(const ExperimentConfig& cfg);

// ---------------------------------------------------------------------------
// Green-function verification sweep

struct GreenSuiteRow {
  int N = 0;
  double eps = 0, k = 0;
  int i_star = 0, j_star = 0;
  double x_star = 0, y_star = 0;
  bool ok = false;
  std::string error;

  double coercivity_ratio = 0;   // B(1/omega G, G) / |G|_w^2
  double identity_rel_resid = 0; // norm identity residual / |G|_w^2
  double norm_sq = 0;
  double t1 = 0, t2 = 0, t3 = 0, t4 = 0;
  LemmaQuantities lemmas;
  std::vector<RingMax> rings;
  double solver_residual = 0;
  double seconds = 0;
};

struct GreenSuiteReport {
  ExperimentConfig config;
  std::vector<GreenSuiteRow> rows;
  // log |G|_w^2 against log(N ln N), per (eps, k) pair with the N sweep
  struct SeriesFit {
    double eps = 0, k = 0;
    FitResult fit;
  };
  std::vector<SeriesFit> norm_growth_fits;
  std::vector<SeriesFit> interp_decay_fits;  // log(e_smooth/|G|_w) against log N
};

GreenSuiteReport run_green_suite(const ExperimentConfig& cfg);

// ---------------------------------------------------------------------------
// pointwise decay experiment

struct DecayRegionRow {
  int N = 0;
  double eps = 0, k = 0, K = 0;
  std::string region_label;  // "Os", "OxOy", "Oxy"
  bool empty = true;
  int cells = 0;
  double sup_abs = 0;
  double sup_grad = 0;
  double eps_sup_grad = 0;
  double template_value = 0;  // N^{-v}, or eps^{-1/2} N^{-v} on the corner region
  // measured/template, where measured is max(sup_abs, sup_grad) on the smooth
  // region (full W^{1,inf}) and sup_abs + eps*sup_grad on the layer regions
  double ratio = 0;
};

struct DecayReport {
  ExperimentConfig config;
  std::vector<DecayRegionRow> region_rows;
  std::vector<GreenSuiteRow> ring_rows;  // rings reported per configuration
};

DecayReport run_decay(const ExperimentConfig& cfg);

// ---------------------------------------------------------------------------
// serialization

void write_solve_csv(const SolveSweep& sweep, std::ostream& os);
void write_green_suite_csv(const GreenSuiteReport& rep, std::ostream& os);
void write_decay_csv(const DecayReport& rep, std::ostream& os);
void write_decay_rings_csv(const DecayReport& rep, std::ostream& os);
void write_decay_profile_csv(const DecayProfile& prof, const ExperimentConfig& cfg,
                             std::ostream& os);
std::string green_suite_summary_json(const GreenSuiteReport& rep);
std::string solve_summary_json(const SolveSweep& sweep);
std::string decay_summary_json(const DecayReport& rep);

}  // namespace sdgreen

#endif

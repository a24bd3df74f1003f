#ifndef SDGREEN_GREENS_HPP
#define SDGREEN_GREENS_HPP

#include <vector>

#include "sdgreen/assembly.hpp"
#include "sdgreen/fields.hpp"
#include "sdgreen/solver.hpp"
#include "sdgreen/weights.hpp"

namespace sdgreen {

/// Discrete Green function anchored at the interior node x*: the member G of
/// the discrete space with B(v, G) = v(x*) for every discrete v, i.e. the
/// transposed solve A^T g = e_{x*}.
struct GreenFunction {
  int i_star = 0, j_star = 0;
  Point x_star;
  NodalField G;
  SolveReport report;
};

GreenFunction discrete_green(const SparseSystem& sys, const ShishkinMesh& mesh,
                             int i_star, int j_star, double tol = 1e-10);

/// Convenience overload that assembles the system first.
GreenFunction discrete_green(const ShishkinMesh& mesh, const ProblemSpec& spec,
                             const StabilizationProfile& profile, int i_star,
                             int j_star, double tol = 1e-10);

struct DecayRow {
  int i = 0, j = 0;
  double x = 0, y = 0;
  double s_beta = 0;  // (x - x*).beta / sigma_beta
  double s_eta = 0;   // (x - x*).eta / sigma_eta
  Region region = Region::Os;
  double abs_g = 0;
};

/// Ring m collects the nodes with m <= max(|s_beta|, |s_eta|) / ln N < m+1.
struct RingMax {
  int m = 0;
  int count = 0;       // 0 marks an empty ring
  double max_abs = 0;  // 0 when empty
};

struct DecayProfile {
  std::vector<DecayRow> rows;   // all mesh nodes
  std::vector<RingMax> rings;   // m = 0 .. max populated index
  int peak_i = 0, peak_j = 0;   // node of the largest |G|
  double peak_abs = 0;
};

DecayProfile green_decay_profile(const GreenFunction& gf, const ShishkinMesh& mesh,
                                 const ProblemSpec& spec, const WeightParams& w);

/// Sup of |G| over nodes and of |grad G| over per-cell samples (center and
/// corners), restricted to cells of the given regions that lie fully outside
/// the excluded set. An empty restriction is reported as such, not as zero.
struct SupNorms {
  bool empty = true;
  int cells = 0;
  double sup_abs = 0;
  double sup_grad = 0;
};

SupNorms w1inf_norms(const NodalField& G, const ShishkinMesh& mesh,
                     const std::vector<Region>& region_set,
                     const std::vector<char>& excluded);

}  // namespace sdgreen

#endif

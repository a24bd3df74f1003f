#include "sdgreen/greens.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sdgreen {

GreenFunction discrete_green(const SparseSystem& sys, const ShishkinMesh& mesh,
                             int i_star, int j_star, double tol) {
  const int N = mesh.N();
  const DofMap dofs(N);
  if (!dofs.is_interior(i_star, j_star))
    throw std::out_of_range("discrete_green: anchor must be an interior node");

  SparseSystem unit;
  unit.A = sys.A;
  unit.rhs = Eigen::VectorXd::Zero(dofs.size());
  unit.rhs[dofs.flat(i_star, j_star)] = 1.0;

  GreenFunction gf;
  gf.i_star = i_star;
  gf.j_star = j_star;
  gf.x_star = mesh.node(i_star, j_star);
  gf.report = solve(unit, tol, /*transpose=*/true);
  gf.G = to_nodal(gf.report.x, N);
  return gf;
}

GreenFunction discrete_green(const ShishkinMesh& mesh, const ProblemSpec& spec,
                             const StabilizationProfile& profile, int i_star,
                             int j_star, double tol) {
  ProblemSpec homogeneous = spec;
  homogeneous.f = nullptr;  // the unit load replaces the source
  return discrete_green(assemble(mesh, homogeneous, profile), mesh, i_star, j_star,
                        tol);
}

DecayProfile green_decay_profile(const GreenFunction& gf, const ShishkinMesh& mesh,
                                 const ProblemSpec& spec, const WeightParams& w) {
  const int N = mesh.N();
  const auto beta = spec.beta();
  const auto eta = spec.eta();
  const double logN = std::log(double(N));

  DecayProfile prof;
  prof.rows.reserve(size_t(N + 1) * (N + 1));
  int max_ring = 0;
  for (int j = 0; j <= N; ++j) {
    for (int i = 0; i <= N; ++i) {
      const Point pt = mesh.node(i, j);
      DecayRow row;
      row.i = i;
      row.j = j;
      row.x = pt.x;
      row.y = pt.y;
      const double dx = pt.x - gf.x_star.x, dy = pt.y - gf.x_star.y;
      row.s_beta = (dx * beta[0] + dy * beta[1]) / w.sigma_beta;
      row.s_eta = (dx * eta[0] + dy * eta[1]) / w.sigma_eta;
      row.region = mesh.region_of_point(pt.x, pt.y);
      row.abs_g = std::fabs(gf.G.at(i, j));
      prof.rows.push_back(row);

      const double scaled =
          std::max(std::fabs(row.s_beta), std::fabs(row.s_eta)) / logN;
      max_ring = std::max(max_ring, int(std::floor(scaled)));
      if (row.abs_g > prof.peak_abs) {
        prof.peak_abs = row.abs_g;
        prof.peak_i = i;
        prof.peak_j = j;
      }
    }
  }

  prof.rings.assign(size_t(max_ring) + 1, RingMax{});
  for (int m = 0; m <= max_ring; ++m) prof.rings[m].m = m;
  for (const DecayRow& row : prof.rows) {
    const double scaled = std::max(std::fabs(row.s_beta), std::fabs(row.s_eta)) / logN;
    RingMax& ring = prof.rings[size_t(std::floor(scaled))];
    ring.count += 1;
    ring.max_abs = std::max(ring.max_abs, row.abs_g);
  }
  return prof;
}

SupNorms w1inf_norms(const NodalField& G, const ShishkinMesh& mesh,
                     const std::vector<Region>& region_set,
                     const std::vector<char>& excluded) {
  const int N = mesh.N();
  if (excluded.size() != size_t(N) * N)
    throw std::invalid_argument("w1inf_norms: excluded-flag size mismatch");

  SupNorms out;
  // gradient samples on the reference cell: corners plus center
  static const double sample[5][2] = {
      {0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
  for (int ej = 0; ej < N; ++ej) {
    for (int ei = 0; ei < N; ++ei) {
      if (excluded[size_t(ej) * N + ei]) continue;
      const auto el = mesh.element(ei, ej);
      if (std::find(region_set.begin(), region_set.end(), el.region) ==
          region_set.end())
        continue;
      out.empty = false;
      out.cells += 1;
      for (const auto& st : sample) {
        const auto vg = G.eval_on_element(mesh, ei, ej, st[0], st[1]);
        out.sup_abs = std::max(out.sup_abs, std::fabs(vg.v));
        out.sup_grad = std::max(out.sup_grad, std::hypot(vg.dx, vg.dy));
      }
    }
  }
  return out;
}

}  // namespace sdgreen

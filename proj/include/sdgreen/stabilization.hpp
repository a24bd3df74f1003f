#ifndef SDGREEN_STABILIZATION_HPP
#define SDGREEN_STABILIZATION_HPP

#include <algorithm>
#include <cmath>

#include "sdgreen/mesh.hpp"
#include "sdgreen/problem.hpp"

namespace sdgreen {

/// Region-wise stabilization coefficients of the scheme: the streamline
/// parameter delta (N^-1 on the smooth region, 0 in the layers) and the
/// crosswind diffusion epshat (eps_tilde = max(eps, N^{-3/2}) on the smooth
/// region, eps in the layers). The plain variant keeps epshat == eps
/// everywhere for comparison runs.
struct StabilizationProfile {
  double eps = 0.0;
  double eps_tilde = 0.0;
  double delta_smooth = 0.0;
  bool crosswind_enabled = true;

  double delta(Region r) const { return r == Region::Os ? delta_smooth : 0.0; }
  double epshat(Region r) const {
    return (crosswind_enabled && r == Region::Os) ? eps_tilde : eps;
  }

  static StabilizationProfile crosswind(const ProblemSpec& spec, int N) {
    StabilizationProfile p;
    p.eps = spec.epsilon;
    p.eps_tilde = std::max(spec.epsilon, std::pow(double(N), -1.5));
    p.delta_smooth = 1.0 / double(N);
    p.crosswind_enabled = true;
    return p;
  }

  static StabilizationProfile plain_sdfem(const ProblemSpec& spec, int N) {
    StabilizationProfile p = crosswind(spec, N);
    p.crosswind_enabled = false;
    return p;
  }
};

}  // namespace sdgreen

#endif

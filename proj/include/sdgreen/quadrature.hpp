#ifndef SDGREEN_QUADRATURE_HPP
#define SDGREEN_QUADRATURE_HPP

#include <vector>

namespace sdgreen {

/// Gauss-Legendre rule mapped to [0, 1].
struct GaussRule {
  std::vector<double> pts;
  std::vector<double> wts;
};

/// n-point rule, n in [1, 32]; computed once and cached.
const GaussRule& gauss_rule(int n);

}  // namespace sdgreen

#endif

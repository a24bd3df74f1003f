#ifndef SDGREEN_PROBLEM_HPP
#define SDGREEN_PROBLEM_HPP

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace sdgreen {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Source term f(x, y).
using SourceFn = std::function<double(double, double)>;

/// Data of the model problem
///   -eps * Laplace(u) + b . grad(u) + u = f   on (0,1)^2,   u = 0 on the boundary,
/// with constant convection b = (b1, b2), both components positive, and unit
/// reaction coefficient.
struct ProblemSpec {
  double epsilon = 1e-3;
  double b1 = 1.0;
  double b2 = 1.0;
  SourceFn f;

  ProblemSpec() = default;
  ProblemSpec(double eps, double b1_, double b2_, SourceFn f_ = nullptr)
      : epsilon(eps), b1(b1_), b2(b2_), f(std::move(f_)) {
    if (!(epsilon > 0.0))
      throw std::invalid_argument("ProblemSpec: epsilon must be positive");
    if (!(b1 > 0.0) || !(b2 > 0.0))
      throw std::invalid_argument("ProblemSpec: both convection components must be positive");
  }

  /// |b| = sqrt(b1^2 + b2^2)
  double b_norm() const { return std::hypot(b1, b2); }

  /// Unit vector along the flow.
  std::array<double, 2> beta() const {
    const double b = b_norm();
    return {b1 / b, b2 / b};
  }

  /// Unit vector orthogonal to the flow (crosswind direction).
  std::array<double, 2> eta() const {
    const double b = b_norm();
    return {-b2 / b, b1 / b};
  }
};

/// Named built-in sources: "zero", "one", "poly" (a smooth low-degree polynomial).
SourceFn builtin_source(const std::string& name);

}  // namespace sdgreen

#endif

#ifndef SDGREEN_FIELDS_HPP
#define SDGREEN_FIELDS_HPP

#include <functional>
#include <vector>

#include "sdgreen/mesh.hpp"

namespace sdgreen {

/// Coefficient vector of a piecewise-bilinear function on the mesh, stored at
/// all (N+1)^2 nodes. Members of the discrete space carry zero boundary values.
class NodalField {
 public:
  NodalField() = default;
  explicit NodalField(int N) : N_(N), v_((N + 1) * (N + 1), 0.0) {}

  int N() const { return N_; }
  double& at(int i, int j) { return v_[idx(i, j)]; }
  double at(int i, int j) const { return v_[idx(i, j)]; }
  const std::vector<double>& values() const { return v_; }
  std::vector<double>& values() { return v_; }

  struct ValueGrad {
    double v = 0, dx = 0, dy = 0;
  };

  /// Value and gradient at local coordinates (s, t) in [0,1]^2 of cell (ei, ej).
  ValueGrad eval_on_element(const ShishkinMesh& mesh, int ei, int ej, double s,
                            double t) const;

  /// Value at an arbitrary point of the closed unit square.
  double eval(const ShishkinMesh& mesh, double x, double y) const;

  double max_abs_boundary() const;
  double max_abs() const;

 private:
  int idx(int i, int j) const { return j * (N_ + 1) + i; }
  int N_ = 0;
  std::vector<double> v_;
};

}  // namespace sdgreen

#endif

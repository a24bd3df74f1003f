#ifndef SDGREEN_MESH_HPP
#define SDGREEN_MESH_HPP

#include <array>
#include <string>
#include <vector>

#include "sdgreen/problem.hpp"

namespace sdgreen {

/// The four subdomains of the layer-adapted dissection: smooth region,
/// x-layer, y-layer and the corner layer.
enum class Region : int { Os = 0, Ox = 1, Oy = 2, Oxy = 3 };

const char* region_name(Region r);

struct MeshParams {
  int N = 16;  // mesh intervals per axis, even, >= 4
  ProblemSpec spec;
};

struct TransitionParameters {
  double lambda_x = 0.0;
  double lambda_y = 0.0;
  bool capped_x = false;  // true when the 1/2 branch of the min was taken
  bool capped_y = false;
  bool assumption1 = false;  // eps <= 1/N and neither parameter capped
};

/// lambda_x = min(1/2, 2 (eps/b1) ln N), lambda_y = min(1/2, 2 (eps/b2) ln N).
TransitionParameters transition_parameters(const MeshParams& params);

/// Piecewise-uniform tensor-product mesh on the unit square: N/2 coarse cells
/// on [0, 1-lambda] and N/2 fine cells on [1-lambda, 1] per axis. Immutable
/// after construction; safe to share across threads.
class ShishkinMesh {
 public:
  struct Element {
    int i = 0, j = 0;  // 0-based cell index per axis
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    Region region = Region::Os;
    double hx() const { return x1 - x0; }
    double hy() const { return y1 - y0; }
  };

  static ShishkinMesh build(const MeshParams& params);
  /// Direct construction from explicit transition parameters.
  static ShishkinMesh build_from_lambdas(int N, double lambda_x, double lambda_y);

  int N() const { return N_; }
  double lambda_x() const { return lambda_x_; }
  double lambda_y() const { return lambda_y_; }
  double Hx() const { return Hx_; }
  double hx() const { return hx_; }
  double Hy() const { return Hy_; }
  double hy() const { return hy_; }
  double epsilon() const { return epsilon_; }
  double b1() const { return b1_; }
  double b2() const { return b2_; }

  const std::vector<double>& x_coords() const { return x_; }
  const std::vector<double>& y_coords() const { return y_; }

  Point node(int i, int j) const { return {x_[i], y_[j]}; }
  bool is_interior_node(int i, int j) const {
    return i >= 1 && i <= N_ - 1 && j >= 1 && j <= N_ - 1;
  }

  /// Region of cell (i, j), 0-based (cell i spans [x_i, x_{i+1}]).
  Region element_region(int i, int j) const;
  Element element(int i, int j) const;

  /// Closed-region classification of an arbitrary point; interface points
  /// count as part of the fine side. Throws on points outside the unit square.
  Region region_of_point(double x, double y) const;

  /// Cell containing (x, y); points on a grid line go to the cell on the right/top
  /// except at the far boundary.
  std::pair<int, int> locate(double x, double y) const;

  /// Cells per region, indexed by Region value.
  std::array<int, 4> region_element_counts() const;

  /// JSON mesh dump: {N, epsilon, b, lambda_x, lambda_y, x_coords, y_coords}.
  std::string to_json() const;

 private:
  int N_ = 0;
  double lambda_x_ = 0, lambda_y_ = 0;
  double Hx_ = 0, hx_ = 0, Hy_ = 0, hy_ = 0;
  double epsilon_ = -1, b1_ = -1, b2_ = -1;  // generating data, kept for dumps
  std::vector<double> x_, y_;
};

}  // namespace sdgreen

#endif

#include "sdgreen/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace sdgreen {

const char* region_name(Region r) {
  switch (r) {
    case Region::Os: return "Os";
    case Region::Ox: return "Ox";
    case Region::Oy: return "Oy";
    case Region::Oxy: return "Oxy";
  }
  return "?";
}

namespace {

void validate_N(int N) {
  if (N < 4 || N % 2 != 0)
    throw std::invalid_argument("ShishkinMesh: N must be an even integer >= 4");
}

}  // namespace

TransitionParameters transition_parameters(const MeshParams& params) {
  validate_N(params.N);
  const double N = params.N;
  const double lnN = std::log(N);
  TransitionParameters t;
  const double lx = 2.0 * params.spec.epsilon / params.spec.b1 * lnN;
  const double ly = 2.0 * params.spec.epsilon / params.spec.b2 * lnN;
  t.capped_x = lx >= 0.5;
  t.capped_y = ly >= 0.5;
  t.lambda_x = t.capped_x ? 0.5 : lx;
  t.lambda_y = t.capped_y ? 0.5 : ly;
  t.assumption1 = params.spec.epsilon <= 1.0 / N && !t.capped_x && !t.capped_y;
  return t;
}

ShishkinMesh ShishkinMesh::build(const MeshParams& params) {
  const auto t = transition_parameters(params);
  ShishkinMesh m = build_from_lambdas(params.N, t.lambda_x, t.lambda_y);
  m.epsilon_ = params.spec.epsilon;
  m.b1_ = params.spec.b1;
  m.b2_ = params.spec.b2;
  return m;
}

ShishkinMesh ShishkinMesh::build_from_lambdas(int N, double lambda_x, double lambda_y) {
  validate_N(N);
  if (!(lambda_x > 0.0 && lambda_x <= 0.5 && lambda_y > 0.0 && lambda_y <= 0.5))
    throw std::invalid_argument("ShishkinMesh: transition parameters must lie in (0, 1/2]");

  ShishkinMesh m;
  m.N_ = N;
  m.lambda_x_ = lambda_x;
  m.lambda_y_ = lambda_y;
  m.Hx_ = (1.0 - lambda_x) / (N / 2);
  m.hx_ = lambda_x / (N / 2);
  m.Hy_ = (1.0 - lambda_y) / (N / 2);
  m.hy_ = lambda_y / (N / 2);
  m.x_.resize(N + 1);
  m.y_.resize(N + 1);
  // Each coordinate comes straight from its closed formula; accumulating
  // widths would drift and break the two-width structure.
  for (int i = 0; i <= N; ++i) {
    m.x_[i] = (i <= N / 2) ? 2.0 * i * (1.0 - lambda_x) / N
                           : 1.0 - 2.0 * (N - i) * lambda_x / N;
    m.y_[i] = (i <= N / 2) ? 2.0 * i * (1.0 - lambda_y) / N
                           : 1.0 - 2.0 * (N - i) * lambda_y / N;
  }
  return m;
}

Region ShishkinMesh::element_region(int i, int j) const {
  const bool fine_x = i >= N_ / 2;  // 0-based: cells N/2 .. N-1 lie in [1-lambda_x, 1]
  const bool fine_y = j >= N_ / 2;
  if (fine_x && fine_y) return Region::Oxy;
  if (fine_x) return Region::Ox;
  if (fine_y) return Region::Oy;
  return Region::Os;
}

ShishkinMesh::Element ShishkinMesh::element(int i, int j) const {
  if (i < 0 || i >= N_ || j < 0 || j >= N_)
    throw std::out_of_range("ShishkinMesh::element: index out of range");
  Element el;
  el.i = i;
  el.j = j;
  el.x0 = x_[i];
  el.x1 = x_[i + 1];
  el.y0 = y_[j];
  el.y1 = y_[j + 1];
  el.region = element_region(i, j);
  return el;
}

Region ShishkinMesh::region_of_point(double x, double y) const {
  if (x < 0.0 || x > 1.0 || y < 0.0 || y > 1.0)
    throw std::domain_error("region_of_point: point outside the unit square");
  const bool fine_x = x >= 1.0 - lambda_x_;  // interface points count as fine side
  const bool fine_y = y >= 1.0 - lambda_y_;
  if (fine_x && fine_y) return Region::Oxy;
  if (fine_x) return Region::Ox;
  if (fine_y) return Region::Oy;
  return Region::Os;
}

std::pair<int, int> ShishkinMesh::locate(double x, double y) const {
  if (x < 0.0 || x > 1.0 || y < 0.0 || y > 1.0)
    throw std::domain_error("locate: point outside the unit square");
  const auto cell = [this](const std::vector<double>& c, double v) {
    auto it = std::upper_bound(c.begin(), c.end(), v);
    int idx = int(it - c.begin()) - 1;
    return std::clamp(idx, 0, N_ - 1);
  };
  return {cell(x_, x), cell(y_, y)};
}

std::array<int, 4> ShishkinMesh::region_element_counts() const {
  std::array<int, 4> counts{0, 0, 0, 0};
  for (int j = 0; j < N_; ++j)
    for (int i = 0; i < N_; ++i) counts[int(element_region(i, j))]++;
  return counts;
}

std::string ShishkinMesh::to_json() const {
  nlohmann::json j;
  j["N"] = N_;
  j["epsilon"] = epsilon_;
  j["b"] = {b1_, b2_};
  j["lambda_x"] = lambda_x_;
  j["lambda_y"] = lambda_y_;
  j["x_coords"] = x_;
  j["y_coords"] = y_;
  return j.dump(2);
}

}  // namespace sdgreen

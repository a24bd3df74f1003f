#include "sdgreen/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace sdgreen {

NodalField::ValueGrad NodalField::eval_on_element(const ShishkinMesh& mesh, int ei,
                                                  int ej, double s, double t) const {
  const auto el = mesh.element(ei, ej);
  const double c00 = at(ei, ej);          // SW
  const double c10 = at(ei + 1, ej);      // SE
  const double c11 = at(ei + 1, ej + 1);  // NE
  const double c01 = at(ei, ej + 1);      // NW
  ValueGrad r;
  r.v = c00 * (1 - s) * (1 - t) + c10 * s * (1 - t) + c11 * s * t + c01 * (1 - s) * t;
  r.dx = ((c10 - c00) * (1 - t) + (c11 - c01) * t) / el.hx();
  r.dy = ((c01 - c00) * (1 - s) + (c11 - c10) * s) / el.hy();
  return r;
}

double NodalField::eval(const ShishkinMesh& mesh, double x, double y) const {
  const auto [ei, ej] = mesh.locate(x, y);
  const auto el = mesh.element(ei, ej);
  const double s = (x - el.x0) / el.hx();
  const double t = (y - el.y0) / el.hy();
  return eval_on_element(mesh, ei, ej, s, t).v;
}

double NodalField::max_abs_boundary() const {
  double m = 0.0;
  for (int i = 0; i <= N_; ++i) {
    m = std::max({m, std::abs(at(i, 0)), std::abs(at(i, N_)), std::abs(at(0, i)),
                  std::abs(at(N_, i))});
  }
  return m;
}

double NodalField::max_abs() const {
  double m = 0.0;
  for (double v : v_) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace sdgreen

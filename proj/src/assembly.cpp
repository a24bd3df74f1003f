#include "sdgreen/assembly.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "sdgreen/quadrature.hpp"

namespace sdgreen {

namespace {

// Local bilinear basis on the unit reference cell, corner order (SW, SE, NE, NW).
inline void shape_values(double s, double t, double phi[4]) {
  phi[0] = (1 - s) * (1 - t);
  phi[1] = s * (1 - t);
  phi[2] = s * t;
  phi[3] = (1 - s) * t;
}

inline void shape_grads(double s, double t, double hx, double hy, double dphix[4],
                        double dphiy[4]) {
  dphix[0] = -(1 - t) / hx;
  dphix[1] = (1 - t) / hx;
  dphix[2] = t / hx;
  dphix[3] = -t / hx;
  dphiy[0] = -(1 - s) / hy;
  dphiy[1] = -s / hy;
  dphiy[2] = s / hy;
  dphiy[3] = (1 - s) / hy;
}

// Global node indices of the element corners in (SW, SE, NE, NW) order.
inline void corner_nodes(const ShishkinMesh::Element& el, int nodes[4][2]) {
  nodes[0][0] = el.i;     nodes[0][1] = el.j;
  nodes[1][0] = el.i + 1; nodes[1][1] = el.j;
  nodes[2][0] = el.i + 1; nodes[2][1] = el.j + 1;
  nodes[3][0] = el.i;     nodes[3][1] = el.j + 1;
}

inline TermWeights form_weights(const ProblemSpec& spec,
                                const StabilizationProfile& profile, Region r) {
  const double b = spec.b_norm();
  const double delta = profile.delta(r);
  TermWeights tw;
  tw.c_beta = spec.epsilon + b * b * delta;
  tw.c_eta = profile.epshat(r);
  tw.c_conv = -b * (1.0 - delta);
  tw.c_mass = 1.0;
  return tw;
}

}  // namespace

Eigen::Matrix4d local_matrix_terms(const ShishkinMesh::Element& el,
                                   const std::array<double, 2>& beta,
                                   const std::array<double, 2>& eta,
                                   const TermWeights& tw, int quad_order) {
  const GaussRule& q = gauss_rule(quad_order);
  const double hx = el.hx(), hy = el.hy();
  const double jac = hx * hy;
  Eigen::Matrix4d M = Eigen::Matrix4d::Zero();
  double phi[4], dpx[4], dpy[4];
  for (int qy = 0; qy < quad_order; ++qy) {
    for (int qx = 0; qx < quad_order; ++qx) {
      const double s = q.pts[qx], t = q.pts[qy];
      const double w = q.wts[qx] * q.wts[qy] * jac;
      shape_values(s, t, phi);
      shape_grads(s, t, hx, hy, dpx, dpy);
      double db[4], de[4];
      for (int a = 0; a < 4; ++a) {
        db[a] = beta[0] * dpx[a] + beta[1] * dpy[a];
        de[a] = eta[0] * dpx[a] + eta[1] * dpy[a];
      }
      // rows are test functions, columns trial functions
      for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 4; ++c)
          M(a, c) += w * (tw.c_beta * db[c] * db[a] + tw.c_eta * de[c] * de[a] +
                          tw.c_conv * phi[c] * db[a] + tw.c_mass * phi[c] * phi[a]);
    }
  }
  return M;
}

Eigen::Matrix4d local_matrix(const ShishkinMesh::Element& el, const ProblemSpec& spec,
                             const StabilizationProfile& profile, int quad_order) {
  return local_matrix_terms(el, spec.beta(), spec.eta(),
                            form_weights(spec, profile, el.region), quad_order);
}

Eigen::Matrix4d local_laplace_xy(const ShishkinMesh::Element& el, int quad_order) {
  const GaussRule& q = gauss_rule(quad_order);
  const double hx = el.hx(), hy = el.hy();
  const double jac = hx * hy;
  Eigen::Matrix4d M = Eigen::Matrix4d::Zero();
  double dpx[4], dpy[4];
  for (int qy = 0; qy < quad_order; ++qy) {
    for (int qx = 0; qx < quad_order; ++qx) {
      const double w = q.wts[qx] * q.wts[qy] * jac;
      shape_grads(q.pts[qx], q.pts[qy], hx, hy, dpx, dpy);
      for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 4; ++c) M(a, c) += w * (dpx[c] * dpx[a] + dpy[c] * dpy[a]);
    }
  }
  return M;
}

SparseSystem assemble(const ShishkinMesh& mesh, const ProblemSpec& spec,
                      const StabilizationProfile& profile, int quad_order) {
  const int N = mesh.N();
  const DofMap dofs(N);
  const auto beta = spec.beta();
  const auto eta = spec.eta();
  const double b = spec.b_norm();
  const GaussRule& q = gauss_rule(quad_order);

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(size_t(dofs.size()) * 9);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dofs.size());

  double phi[4], dpx[4], dpy[4];
  int nodes[4][2];
  for (int ej = 0; ej < N; ++ej) {
    for (int ei = 0; ei < N; ++ei) {
      const auto el = mesh.element(ei, ej);
      const Eigen::Matrix4d M =
          local_matrix_terms(el, beta, eta, form_weights(spec, profile, el.region),
                             quad_order);
      corner_nodes(el, nodes);
      int dof[4];
      for (int a = 0; a < 4; ++a)
        dof[a] = dofs.is_interior(nodes[a][0], nodes[a][1])
                     ? dofs.flat(nodes[a][0], nodes[a][1])
                     : -1;
      for (int a = 0; a < 4; ++a) {
        if (dof[a] < 0) continue;
        for (int c = 0; c < 4; ++c) {
          if (dof[c] < 0) continue;
          trips.emplace_back(dof[a], dof[c], M(a, c));
        }
      }
      if (spec.f) {
        const double delta = profile.delta(el.region);
        for (int qy = 0; qy < quad_order; ++qy) {
          for (int qx = 0; qx < quad_order; ++qx) {
            const double s = q.pts[qx], t = q.pts[qy];
            const double w = q.wts[qx] * q.wts[qy] * el.hx() * el.hy();
            const double fx = spec.f(el.x0 + s * el.hx(), el.y0 + t * el.hy());
            if (fx == 0.0) continue;
            shape_values(s, t, phi);
            shape_grads(s, t, el.hx(), el.hy(), dpx, dpy);
            for (int a = 0; a < 4; ++a) {
              if (dof[a] < 0) continue;
              const double vb = beta[0] * dpx[a] + beta[1] * dpy[a];
              rhs[dof[a]] += w * fx * (phi[a] + delta * b * vb);
            }
          }
        }
      }
    }
  }

  SparseSystem sys;
  sys.A.resize(dofs.size(), dofs.size());
  sys.A.setFromTriplets(trips.begin(), trips.end());
  sys.A.makeCompressed();
  sys.rhs = std::move(rhs);
  return sys;
}

ScalarField field_of(const NodalField& u, const ShishkinMesh& mesh) {
  return [&u, &mesh](double x, double y, int ei, int ej) {
    const auto el = mesh.element(ei, ej);
    const double s = (x - el.x0) / el.hx();
    const double t = (y - el.y0) / el.hy();
    const auto vg = u.eval_on_element(mesh, ei, ej, s, t);
    return FieldValue{vg.v, vg.dx, vg.dy};
  };
}

double apply_form(const ScalarField& w, const NodalField& v, const ShishkinMesh& mesh,
                  const ProblemSpec& spec, const StabilizationProfile& profile,
                  int quad_order) {
  const int N = mesh.N();
  const auto beta = spec.beta();
  const auto eta = spec.eta();
  const GaussRule& q = gauss_rule(quad_order);
  double total = 0.0;
  for (int ej = 0; ej < N; ++ej) {
    for (int ei = 0; ei < N; ++ei) {
      const auto el = mesh.element(ei, ej);
      const TermWeights tw = form_weights(spec, profile, el.region);
      double acc = 0.0;
      for (int qy = 0; qy < quad_order; ++qy) {
        for (int qx = 0; qx < quad_order; ++qx) {
          const double s = q.pts[qx], t = q.pts[qy];
          const double x = el.x0 + s * el.hx();
          const double y = el.y0 + t * el.hy();
          const FieldValue wv = w(x, y, ei, ej);
          const auto vv = v.eval_on_element(mesh, ei, ej, s, t);
          const double wb = beta[0] * wv.dx + beta[1] * wv.dy;
          const double we = eta[0] * wv.dx + eta[1] * wv.dy;
          const double vb = beta[0] * vv.dx + beta[1] * vv.dy;
          const double ve = eta[0] * vv.dx + eta[1] * vv.dy;
          acc += q.wts[qx] * q.wts[qy] *
                 (tw.c_beta * wb * vb + tw.c_eta * we * ve + tw.c_conv * wv.v * vb +
                  tw.c_mass * wv.v * vv.v);
        }
      }
      total += acc * el.hx() * el.hy();
    }
  }
  return total;
}

double apply_rhs(const SourceFn& f, const NodalField& v, const ShishkinMesh& mesh,
                 const ProblemSpec& spec, const StabilizationProfile& profile,
                 int quad_order) {
  const int N = mesh.N();
  const auto beta = spec.beta();
  const double b = spec.b_norm();
  const GaussRule& q = gauss_rule(quad_order);
  double total = 0.0;
  for (int ej = 0; ej < N; ++ej) {
    for (int ei = 0; ei < N; ++ei) {
      const auto el = mesh.element(ei, ej);
      const double delta = profile.delta(el.region);
      double acc = 0.0;
      for (int qy = 0; qy < quad_order; ++qy) {
        for (int qx = 0; qx < quad_order; ++qx) {
          const double s = q.pts[qx], t = q.pts[qy];
          const double x = el.x0 + s * el.hx();
          const double y = el.y0 + t * el.hy();
          const auto vv = v.eval_on_element(mesh, ei, ej, s, t);
          const double vb = beta[0] * vv.dx + beta[1] * vv.dy;
          acc += q.wts[qx] * q.wts[qy] * f(x, y) * (vv.v + delta * b * vb);
        }
      }
      total += acc * el.hx() * el.hy();
    }
  }
  return total;
}

DirectionalDerivs directional_derivatives(const NodalField& v, const ShishkinMesh& mesh,
                                          const ProblemSpec& spec, int ei, int ej,
                                          double s, double t) {
  const auto vg = v.eval_on_element(mesh, ei, ej, s, t);
  const auto beta = spec.beta();
  const auto eta = spec.eta();
  DirectionalDerivs d;
  d.vx = vg.dx;
  d.vy = vg.dy;
  d.vbeta = beta[0] * vg.dx + beta[1] * vg.dy;
  d.veta = eta[0] * vg.dx + eta[1] * vg.dy;
  return d;
}

void write_matrix_market(const SparseSystem& sys, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_matrix_market: cannot open " + path);
  os << "%%MatrixMarket matrix coordinate real general\n";
  os << sys.A.rows() << " " << sys.A.cols() << " " << sys.A.nonZeros() << "\n";
  char buf[64];
  for (int r = 0; r < sys.A.outerSize(); ++r) {
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(sys.A, r); it;
         ++it) {
      std::snprintf(buf, sizeof buf, "%d %d %.17g\n", int(it.row()) + 1,
                    int(it.col()) + 1, it.value());
      os << buf;
    }
  }
}

NodalField to_nodal(const Eigen::VectorXd& interior, int N) {
  NodalField u(N);
  const DofMap dofs(N);
  if (interior.size() != dofs.size())
    throw std::invalid_argument("to_nodal: size mismatch");
  for (int p = 0; p < dofs.size(); ++p) {
    const auto [i, j] = dofs.node(p);
    u.at(i, j) = interior[p];
  }
  return u;
}

Eigen::VectorXd interior_of(const NodalField& u) {
  const int N = u.N();
  const DofMap dofs(N);
  Eigen::VectorXd v(dofs.size());
  for (int p = 0; p < dofs.size(); ++p) {
    const auto [i, j] = dofs.node(p);
    v[p] = u.at(i, j);
  }
  return v;
}

}  // namespace sdgreen

#include "sdgreen/weights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sdgreen/quadrature.hpp"

namespace sdgreen {

double g_eval(double r) {
  // g(r) = 2/(1 + e^r); branch on the sign so the exponential never overflows.
  if (r >= 0) {
    const double e = std::exp(-r);
    return 2.0 * e / (1.0 + e);
  }
  return 2.0 / (1.0 + std::exp(r));
}

double g_prime(double r) {
  // g'(r) = -2 e^r / (1 + e^r)^2 is even in r, so evaluate at -|r| where the
  // exponential is bounded by one.
  const double e = std::exp(-std::fabs(r));
  const double d = 1.0 + e;
  return -2.0 * e / (d * d);
}

WeightParams WeightParams::make(double k, Point x_star, int N, double eps) {
  if (k <= 0) throw std::invalid_argument("WeightParams: k must be positive");
  if (N < 2) throw std::invalid_argument("WeightParams: N must be at least 2");
  if (eps <= 0) throw std::invalid_argument("WeightParams: eps must be positive");
  WeightParams w;
  w.k = k;
  w.x_star = x_star;
  w.eps_tilde = std::max(eps, std::pow(double(N), -1.5));
  const double logN = std::log(double(N));
  w.sigma_beta = k * logN / double(N);
  w.sigma_eta = k * std::sqrt(w.eps_tilde) * logN;
  return w;
}

namespace {

// logistic(p) = 1/(1 + e^{-p}) = -g'(p)/g(p), always in (0, 1)
inline double logistic(double p) {
  if (p >= 0) return 1.0 / (1.0 + std::exp(-p));
  const double e = std::exp(p);
  return e / (1.0 + e);
}

// Phi(q) := g(q) g(-q) = sech^2(q/2), the even crosswind factor.
inline double phi_even(double q) {
  const double e = std::exp(-std::fabs(q));
  const double d = 1.0 + e;
  return 4.0 * e / (d * d);
}

// 1/Phi(q) = cosh^2(q/2), safe while |q| stays below the exp overflow bound.
inline double inv_phi_even(double q) {
  const double a = std::fabs(q);
  return 0.25 * (std::exp(a) + 2.0 + std::exp(-a));
}

// 1/g(p) = (1 + e^p)/2
inline double inv_g(double p) { return 0.5 * (1.0 + std::exp(p)); }

}  // namespace

OmegaEval omega_eval(Point x, const WeightParams& w, const ProblemSpec& spec) {
  const auto beta = spec.beta();
  const auto eta = spec.eta();
  const double dx = x.x - w.x_star.x;
  const double dy = x.y - w.x_star.y;
  const double p = (dx * beta[0] + dy * beta[1]) / w.sigma_beta;
  const double q = (dx * eta[0] + dy * eta[1]) / w.sigma_eta;

  OmegaEval r;
  const double gp = g_eval(p);
  const double Phi = phi_even(q);
  r.omega = gp * Phi;

  // Logarithmic-derivative ratios stay O(1) for any argument:
  //   g'/g = -logistic(p)  and  Phi'/Phi = -tanh(q/2).
  const double ratio_p = -logistic(p);
  const double ratio_q = -std::tanh(0.5 * q);
  r.omega_beta = r.omega * ratio_p / w.sigma_beta;
  r.omega_eta = r.omega * ratio_q / w.sigma_eta;
  r.omega_x = r.omega_beta * beta[0] + r.omega_eta * eta[0];
  r.omega_y = r.omega_beta * beta[1] + r.omega_eta * eta[1];

  // The inverse is rebuilt from its own overflow-safe factors rather than by
  // dividing, so it stays finite long after omega has underflowed.
  r.inv_omega = inv_g(p) * inv_phi_even(q);
  r.inv_beta = -ratio_p / w.sigma_beta * r.inv_omega;
  r.inv_eta = -ratio_q / w.sigma_eta * r.inv_omega;
  r.inv_x = r.inv_beta * beta[0] + r.inv_eta * eta[0];
  r.inv_y = r.inv_beta * beta[1] + r.inv_eta * eta[1];
  return r;
}

NormBreakdown weighted_norm(const NodalField& G, const ShishkinMesh& mesh,
                            const ProblemSpec& spec, const StabilizationProfile& profile,
                            const WeightParams& w, int quad_order) {
  const int N = mesh.N();
  const auto beta = spec.beta();
  const auto eta = spec.eta();
  const double b = spec.b_norm();
  const GaussRule& q = gauss_rule(quad_order);

  NormBreakdown out;
  for (int ej = 0; ej < N; ++ej) {
    for (int ei = 0; ei < N; ++ei) {
      const auto el = mesh.element(ei, ej);
      const double c_beta = spec.epsilon + b * b * profile.delta(el.region);
      const double c_eta = profile.epshat(el.region);
      double a1 = 0, a2 = 0, a3 = 0, a4 = 0;
      for (int qy = 0; qy < quad_order; ++qy) {
        for (int qx = 0; qx < quad_order; ++qx) {
          const double s = q.pts[qx], t = q.pts[qy];
          const Point pt{el.x0 + s * el.hx(), el.y0 + t * el.hy()};
          const auto om = omega_eval(pt, w, spec);
          const auto vg = G.eval_on_element(mesh, ei, ej, s, t);
          const double gb = beta[0] * vg.dx + beta[1] * vg.dy;
          const double ge = eta[0] * vg.dx + eta[1] * vg.dy;
          const double wq = q.wts[qx] * q.wts[qy];
          if (om.inv_beta < 0) out.t3_integrand_negative = true;
          a1 += wq * om.inv_omega * gb * gb;
          a2 += wq * om.inv_omega * ge * ge;
          a3 += wq * om.inv_beta * vg.v * vg.v;
          a4 += wq * om.inv_omega * vg.v * vg.v;
        }
      }
      const double jac = el.hx() * el.hy();
      out.t1 += c_beta * a1 * jac;
      out.t2 += c_eta * a2 * jac;
      out.t3 += 0.5 * b * a3 * jac;
      out.t4 += a4 * jac;
    }
  }
  return out;
}

namespace {

// omega^{-1} G as an exact product field: value and product-rule gradient.
ScalarField inverse_weighted_field(const NodalField& G, const ShishkinMesh& mesh,
                                   const ProblemSpec& spec, const WeightParams& w) {
  return [&G, &mesh, &spec, &w](double x, double y, int ei, int ej) {
    const auto el = mesh.element(ei, ej);
    const double s = (x - el.x0) / el.hx();
    const double t = (y - el.y0) / el.hy();
    const auto vg = G.eval_on_element(mesh, ei, ej, s, t);
    const auto om = omega_eval({x, y}, w, spec);
    FieldValue f;
    f.v = om.inv_omega * vg.v;
    f.dx = om.inv_x * vg.v + om.inv_omega * vg.dx;
    f.dy = om.inv_y * vg.v + om.inv_omega * vg.dy;
    return f;
  };
}

}  // namespace

CoercivityReport coercivity_quantities(const NodalField& G, const ShishkinMesh& mesh,
                                       const ProblemSpec& spec,
                                       const StabilizationProfile& profile,
                                       const WeightParams& w, int quad_order) {
  const int N = mesh.N();
  const auto beta = spec.beta();
  const auto eta = spec.eta();
  const double b = spec.b_norm();
  const GaussRule& q = gauss_rule(quad_order);

  CoercivityReport rep;
  rep.B_value = apply_form(inverse_weighted_field(G, mesh, spec, w), G, mesh, spec,
                           profile, quad_order);
  rep.norm = weighted_norm(G, mesh, spec, profile, w, quad_order);

  for (int ej = 0; ej < N; ++ej) {
    for (int ei = 0; ei < N; ++ei) {
      const auto el = mesh.element(ei, ej);
      const double delta = profile.delta(el.region);
      const double c_beta = spec.epsilon + b * b * delta;
      const double c_eta = profile.epshat(el.region);
      double ab = 0, ae = 0, ac = 0;
      for (int qy = 0; qy < quad_order; ++qy) {
        for (int qx = 0; qx < quad_order; ++qx) {
          const double s = q.pts[qx], t = q.pts[qy];
          const Point pt{el.x0 + s * el.hx(), el.y0 + t * el.hy()};
          const auto om = omega_eval(pt, w, spec);
          const auto vg = G.eval_on_element(mesh, ei, ej, s, t);
          const double gb = beta[0] * vg.dx + beta[1] * vg.dy;
          const double ge = eta[0] * vg.dx + eta[1] * vg.dy;
          const double wq = q.wts[qx] * q.wts[qy];
          ab += wq * om.inv_beta * vg.v * gb;
          ae += wq * om.inv_eta * vg.v * ge;
          ac += wq * om.inv_omega * vg.v * gb;
        }
      }
      const double jac = el.hx() * el.hy();
      rep.corr_beta += c_beta * ab * jac;
      rep.corr_eta += c_eta * ae * jac;
      rep.corr_conv += b * delta * ac * jac;
    }
  }
  return rep;
}

NodalField bilinear_interpolant(const std::function<double(double, double)>& field,
                                const ShishkinMesh& mesh) {
  const int N = mesh.N();
  NodalField u(N);
  for (int j = 0; j <= N; ++j)
    for (int i = 0; i <= N; ++i) {
      const Point p = mesh.node(i, j);
      u.at(i, j) = field(p.x, p.y);
    }
  return u;
}

LemmaQuantities lemma_quantities(const NodalField& G, const ShishkinMesh& mesh,
                                 const ProblemSpec& spec,
                                 const StabilizationProfile& profile,
                                 const WeightParams& w, int quad_order) {
  const int N = mesh.N();
  const auto beta = spec.beta();
  const auto eta = spec.eta();
  const GaussRule& q = gauss_rule(quad_order);

  LemmaQuantities out;
  out.norm = weighted_norm(G, mesh, spec, profile, w, quad_order);

  const auto exact = inverse_weighted_field(G, mesh, spec, w);
  NodalField interp(N);
  for (int j = 0; j <= N; ++j)
    for (int i = 0; i <= N; ++i)
      interp.at(i, j) = omega_eval(mesh.node(i, j), w, spec).inv_omega * G.at(i, j);

  // E = omega^{-1} G - (omega^{-1} G)^I, evaluated pointwise per element.
  ScalarField E = [&exact, &interp, &mesh](double x, double y, int ei, int ej) {
    const FieldValue a = exact(x, y, ei, ej);
    const auto el = mesh.element(ei, ej);
    const auto b_ = interp.eval_on_element(mesh, ei, ej, (x - el.x0) / el.hx(),
                                           (y - el.y0) / el.hy());
    return FieldValue{a.v - b_.v, a.dx - b_.dx, a.dy - b_.dy};
  };

  const auto om_star = omega_eval(w.x_star, w, spec);
  out.G_at_xstar = om_star.inv_omega * G.eval(mesh, w.x_star.x, w.x_star.y);

  double eb_s = 0, eb_l = 0, ee_s = 0, ee_l = 0, e_s = 0, e_l = 0;
  for (int ej = 0; ej < N; ++ej) {
    for (int ei = 0; ei < N; ++ei) {
      const auto el = mesh.element(ei, ej);
      const bool smooth = el.region == Region::Os;
      double ab = 0, ae = 0, av = 0;
      for (int qy = 0; qy < quad_order; ++qy) {
        for (int qx = 0; qx < quad_order; ++qx) {
          const double x = el.x0 + q.pts[qx] * el.hx();
          const double y = el.y0 + q.pts[qy] * el.hy();
          const FieldValue ev = E(x, y, ei, ej);
          const double om = omega_eval({x, y}, w, spec).omega;
          const double db = beta[0] * ev.dx + beta[1] * ev.dy;
          const double de = eta[0] * ev.dx + eta[1] * ev.dy;
          const double wq = q.wts[qx] * q.wts[qy];
          ab += wq * om * db * db;
          ae += wq * om * de * de;
          av += wq * om * ev.v * ev.v;
        }
      }
      const double jac = el.hx() * el.hy();
      (smooth ? eb_s : eb_l) += ab * jac;
      (smooth ? ee_s : ee_l) += ae * jac;
      (smooth ? e_s : e_l) += av * jac;
    }
  }
  out.e_beta_smooth = std::sqrt(eb_s);
  out.e_beta_layer = std::sqrt(eb_l);
  out.e_eta_smooth = std::sqrt(ee_s);
  out.e_eta_layer = std::sqrt(ee_l);
  out.e_smooth = std::sqrt(e_s);
  out.e_layer = std::sqrt(e_l);

  out.B_E_G = apply_form(E, G, mesh, spec, profile, quad_order);

  const double norm_sq = out.norm.total();
  const double norm = std::sqrt(std::max(norm_sq, 0.0));
  const double logN = std::log(double(N));
  const double k = w.k;
  const double eps = spec.epsilon;
  out.growth_C = (std::fabs(out.G_at_xstar) - norm_sq / 16.0) / (N * logN);
  if (norm > 0) {
    out.deriv_smooth_C = std::max(out.e_beta_smooth, out.e_eta_smooth) /
                         (std::sqrt(double(N)) / std::sqrt(k) * norm);
    out.deriv_layer_C = std::max(out.e_beta_layer, out.e_eta_layer) /
                        (1.0 / (k * std::sqrt(eps) * logN) * norm);
    out.interp_smooth_C = out.e_smooth / (1.0 / (k * std::sqrt(double(N))) * norm);
    out.interp_layer_C = out.e_layer / (std::sqrt(eps) / k * norm);
    out.form_ratio = std::fabs(out.B_E_G) / (norm_sq / 16.0);
  }
  return out;
}

double abs_linear_integral(double f0, double f1, double H) {
  if (!(H > 0)) throw std::invalid_argument("abs_linear_integral: H must be positive");
  if (f0 * f1 >= 0) return 0.5 * (std::fabs(f0) + std::fabs(f1)) * H;
  return 0.5 * (f0 * f0 + f1 * f1) / std::fabs(f1 - f0) * H;
}

double omega_max_on_element(const ShishkinMesh::Element& el, const WeightParams& w,
                            const ProblemSpec& spec) {
  const auto beta = spec.beta();
  const auto eta = spec.eta();
  const double xs[2] = {el.x0, el.x1};
  const double ys[2] = {el.y0, el.y1};
  double p_min = 0, q_min = 0, q_max = 0;
  bool first = true;
  for (double y : ys)
    for (double x : xs) {
      const double dx = x - w.x_star.x, dy = y - w.x_star.y;
      const double p = (dx * beta[0] + dy * beta[1]) / w.sigma_beta;
      const double q = (dx * eta[0] + dy * eta[1]) / w.sigma_eta;
      if (first) {
        p_min = p;
        q_min = q_max = q;
        first = false;
      } else {
        p_min = std::min(p_min, p);
        q_min = std::min(q_min, q);
        q_max = std::max(q_max, q);
      }
    }
  // Both factors are monotone in the rotated coordinates: g decreases in p,
  // the even factor peaks at q = 0. Their separate maxima over the corner
  // ranges give the envelope used for the exclusion test.
  const double q_best = (q_min <= 0 && q_max >= 0) ? 0.0 : std::min(std::fabs(q_min),
                                                                    std::fabs(q_max));
  return g_eval(p_min) * phi_even(q_best);
}

std::vector<char> excluded_cells(const ShishkinMesh& mesh, const WeightParams& w,
                                 const ProblemSpec& spec, double K) {
  const int N = mesh.N();
  const double cutoff = std::pow(double(N), -K);
  std::vector<char> flags(size_t(N) * N, 0);
  for (int ej = 0; ej < N; ++ej)
    for (int ei = 0; ei < N; ++ei)
      flags[size_t(ej) * N + ei] =
          omega_max_on_element(mesh.element(ei, ej), w, spec) >= cutoff ? 1 : 0;
  return flags;
}

}  // namespace sdgreen

#ifndef SDGREEN_WEIGHTS_HPP
#define SDGREEN_WEIGHTS_HPP

#include <functional>
#include <vector>

#include "sdgreen/assembly.hpp"
#include "sdgreen/fields.hpp"
#include "sdgreen/mesh.hpp"
#include "sdgreen/problem.hpp"
#include "sdgreen/stabilization.hpp"

namespace sdgreen {

/// g(r) = 2 / (1 + e^r), evaluated overflow-safe for any real r.
double g_eval(double r);
/// g'(r) = -2 e^r / (1 + e^r)^2 in cancellation-safe form (g' is even).
double g_prime(double r);

/// Anchored anisotropic weight scales: sigma_beta = k ln(N) / N along the
/// streamline, sigma_eta = k eps_tilde^{1/2} ln(N) crosswind.
struct WeightParams {
  double k = 1.0;
  Point x_star;
  double sigma_beta = 0.0;
  double sigma_eta = 0.0;
  double eps_tilde = 0.0;

  static WeightParams make(double k, Point x_star, int N, double eps);
};

/// The weight omega(x) = g(p) g(q) g(-q) with p = (x - x*).beta / sigma_beta,
/// q = (x - x*).eta / sigma_eta, together with its analytic first derivatives
/// and those of 1/omega.
struct OmegaEval {
  double omega = 0;
  double omega_beta = 0, omega_eta = 0;  // directional derivatives
  double omega_x = 0, omega_y = 0;
  double inv_omega = 0;
  double inv_beta = 0, inv_eta = 0;  // (1/omega)_beta = -omega_beta/omega^2, etc.
  double inv_x = 0, inv_y = 0;
};

OmegaEval omega_eval(Point x, const WeightParams& w, const ProblemSpec& spec);

/// The four squared terms of the weighted energy norm:
///   t1 = (eps + b^2 delta)-weighted |omega^{-1/2} G_beta|^2
///   t2 = epshat-weighted            |omega^{-1/2} G_eta |^2
///   t3 = (b/2)                      |((1/omega)_beta)^{1/2} G|^2
///   t4 =                            |omega^{-1/2} G|^2
struct NormBreakdown {
  double t1 = 0, t2 = 0, t3 = 0, t4 = 0;
  bool t3_integrand_negative = false;  // flags (1/omega)_beta < 0 at a sample
  double total() const { return t1 + t2 + t3 + t4; }
};

NormBreakdown weighted_norm(const NodalField& G, const ShishkinMesh& mesh,
                            const ProblemSpec& spec, const StabilizationProfile& profile,
                            const WeightParams& w, int quad_order = 5);

/// B(omega^{-1} G, G), the weighted norm, and the three correction integrals
/// whose difference reproduces the norm identically (up to quadrature error).
struct CoercivityReport {
  double B_value = 0;  // B(omega^{-1} G, G)
  NormBreakdown norm;
  double corr_beta = 0;  // (eps + b^2 delta)((1/omega)_beta G, G_beta)
  double corr_eta = 0;   // epshat ((1/omega)_eta G, G_eta)
  double corr_conv = 0;  // b delta (omega^{-1} G, G_beta)

  double identity_residual() const {
    return norm.total() - (B_value - corr_beta - corr_eta - corr_conv);
  }
  double ratio() const { return B_value / norm.total(); }
};

CoercivityReport coercivity_quantities(const NodalField& G, const ShishkinMesh& mesh,
                                       const ProblemSpec& spec,
                                       const StabilizationProfile& profile,
                                       const WeightParams& w, int quad_order = 5);

/// Vertex interpolant of a scalar field onto the piecewise-bilinear space.
NodalField bilinear_interpolant(const std::function<double(double, double)>& field,
                                const ShishkinMesh& mesh);

/// Measured left-hand sides of the interpolation-error estimates for
/// E = omega^{-1} G - (omega^{-1} G)^I, split over the smooth region and the
/// layer regions, plus the implied constants against the proved right-hand
/// sides.
struct LemmaQuantities {
  double G_at_xstar = 0;  // (omega^{-1} G)(x*) = G(x*) since omega(x*) = 1
  double e_beta_smooth = 0, e_beta_layer = 0;  // |omega^{1/2} E_beta| on Os / off Os
  double e_eta_smooth = 0, e_eta_layer = 0;
  double e_smooth = 0, e_layer = 0;  // |omega^{1/2} E|
  double B_E_G = 0;                  // B(E, G)

  NormBreakdown norm;

  // implied constants (measured LHS divided by the estimate's RHS)
  double growth_C = 0;         // (|G(x*)| - norm/16) / (N ln N)
  double deriv_smooth_C = 0;   // max over beta/eta of LHS / (k^{-1/2} N^{1/2} |G|_w)
  double deriv_layer_C = 0;    // ... / (k^{-1} eps^{-1/2} ln^{-1} N |G|_w)
  double interp_smooth_C = 0;  // e_smooth / (k^{-1} N^{-1/2} |G|_w)
  double interp_layer_C = 0;   // e_layer / (k^{-1} eps^{1/2} |G|_w)
  double form_ratio = 0;       // |B(E,G)| / ((1/16) |G|_w^2)
};

LemmaQuantities lemma_quantities(const NodalField& G, const ShishkinMesh& mesh,
                                 const ProblemSpec& spec,
                                 const StabilizationProfile& profile,
                                 const WeightParams& w, int quad_order = 5);

/// Exact integral of |f0 (1 - t/H) + f1 t/H| over [0, H]. Same-sign case
/// (|f0|+|f1|) H/2; sign-change case (f0^2+f1^2) H / (2 |f1-f0|). Always at
/// least max(|f0|, |f1|) H / 4.
double abs_linear_integral(double f0, double f1, double H);

/// Neighborhood of x* excluded from pointwise decay studies: all cells that
/// contain a point with omega(x) >= N^{-K}. Returns one flag per cell,
/// indexed ej * N + ei.
std::vector<char> excluded_cells(const ShishkinMesh& mesh, const WeightParams& w,
                                 const ProblemSpec& spec, double K);

/// Upper envelope of omega over a closed cell: the product of the separate
/// factor maxima over the corner ranges of the rotated coordinates (both
/// factors are monotone away from their peak, so the ranges are exact).
double omega_max_on_element(const ShishkinMesh::Element& el, const WeightParams& w,
                            const ProblemSpec& spec);

}  // namespace sdgreen

#endif

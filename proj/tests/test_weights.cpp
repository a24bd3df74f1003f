#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "sdgreen/greens.hpp"
#include "sdgreen/weights.hpp"
#include "support/oracles.hpp"

using namespace sdgreen;

namespace {

ShishkinMesh make_mesh(int N, double eps, const ProblemSpec& spec) {
  MeshParams p;
  p.N = N;
  p.spec = spec;
  p.spec.epsilon = eps;
  return ShishkinMesh::build(p);
}

}  // namespace

TEST_CASE("logistic factor identities") {
  CHECK(g_eval(0.0) == doctest::Approx(1.0));
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> r(-40.0, 40.0);
  for (int t = 0; t < 200; ++t) {
    const double x = r(rng);
    CHECK(g_eval(x) + g_eval(-x) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(g_eval(x) > 0.0);
    CHECK(g_prime(x) == doctest::Approx(g_prime(-x)).epsilon(1e-13));
    const double h = 1e-6;
    const double fd = (g_eval(x + h) - g_eval(x - h)) / (2 * h);
    CHECK(g_prime(x) == doctest::Approx(fd).epsilon(1e-7));
  }
  // extreme arguments stay finite
  CHECK(std::isfinite(g_eval(900.0)));
  CHECK(std::isfinite(g_eval(-900.0)));
  CHECK(g_eval(900.0) >= 0.0);
}

TEST_CASE("weight is anchored, positive, and consistent with its reciprocal") {
  const ProblemSpec spec(1e-3, 1.0, 2.0, nullptr);
  const WeightParams w = WeightParams::make(1.5, Point{0.3, 0.4}, 32, 1e-3);
  CHECK(w.sigma_beta == doctest::Approx(1.5 * std::log(32.0) / 32.0));
  CHECK(w.sigma_eta ==
        doctest::Approx(1.5 * std::sqrt(std::max(1e-3, std::pow(32.0, -1.5))) *
                        std::log(32.0)));

  const OmegaEval at_anchor = omega_eval(Point{0.3, 0.4}, w, spec);
  CHECK(at_anchor.omega == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(at_anchor.inv_omega == doctest::Approx(1.0).epsilon(1e-14));

  std::mt19937 rng(12);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < 500; ++t) {
    const Point x{unit(rng), unit(rng)};
    const OmegaEval e = omega_eval(x, w, spec);
    CHECK(e.omega > 0.0);
    CHECK(e.omega <= 2.0);  // g <= 2 and the even factor is <= 1
    if (e.omega > 1e-300)
      CHECK(e.omega * e.inv_omega == doctest::Approx(1.0).epsilon(1e-12));
  }

  CHECK_THROWS_AS(WeightParams::make(0.0, Point{0.5, 0.5}, 32, 1e-3),
                  std::invalid_argument);
  CHECK_THROWS_AS(WeightParams::make(1.0, Point{0.5, 0.5}, 32, -1.0),
                  std::invalid_argument);
}

TEST_CASE("reciprocal streamline derivative is positive everywhere") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> kd(0.5, 4.0);
  std::uniform_real_distribution<double> le(std::log(1e-6), std::log(1e-2));
  std::uniform_int_distribution<int> nd(3, 64);
  std::uniform_real_distribution<double> bd(0.5, 3.0);
  int checked = 0;
  for (int t = 0; t < 10000; ++t) {
    const int N = 2 * nd(rng);
    const double eps = std::exp(le(rng));
    const ProblemSpec spec(eps, bd(rng), bd(rng), nullptr);
    const WeightParams w =
        WeightParams::make(kd(rng), Point{unit(rng), unit(rng)}, N, eps);
    const OmegaEval e = omega_eval(Point{unit(rng), unit(rng)}, w, spec);
    CHECK(e.inv_beta > 0.0);
    ++checked;
  }
  CHECK(checked == 10000);
}

TEST_CASE("reciprocal streamline derivative is bounded below near the anchor") {
  // On the cell just southwest of the anchor node, 1/(1/omega)_beta =
  // 2 sigma_beta e^{-p} / inv_phi(q) <= 2 sigma_beta e^{|p|} and |p| is at most
  // a cell diagonal over sigma_beta = k ln(N)/N, i.e. about 2 sqrt(2)/(k ln N).
  const double eps = 1e-3;
  const ProblemSpec spec(eps, 1.0, 1.0, nullptr);
  const int N = 32;
  const ShishkinMesh mesh = make_mesh(N, eps, spec);
  const Point xs = mesh.node(N / 4, N / 4);
  const WeightParams w = WeightParams::make(2.0, xs, N, eps);
  const auto cell = mesh.element(N / 4 - 1, N / 4 - 1);  // SW of the anchor node
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const Point x{cell.x0 + unit(rng) * cell.hx(), cell.y0 + unit(rng) * cell.hy()};
    const OmegaEval e = omega_eval(x, w, spec);
    CHECK(1.0 / e.inv_beta <= 4.0 * w.sigma_beta * (1.0 + 1e-12));
  }
}

TEST_CASE("analytic weight gradients agree with finite differences") {
  const ProblemSpec spec(1e-3, 2.0, 1.0, nullptr);
  const WeightParams w = WeightParams::make(2.0, Point{0.6, 0.55}, 24, 1e-3);
  std::mt19937 rng(14);
  std::uniform_real_distribution<double> near(0.35, 0.85);
  const double h = 1e-6;
  for (int t = 0; t < 100; ++t) {
    const Point x{near(rng), near(rng)};
    const OmegaEval e = omega_eval(x, w, spec);
    const double wdx = (omega_eval(Point{x.x + h, x.y}, w, spec).omega -
                        omega_eval(Point{x.x - h, x.y}, w, spec).omega) /
                       (2 * h);
    const double wdy = (omega_eval(Point{x.x, x.y + h}, w, spec).omega -
                        omega_eval(Point{x.x, x.y - h}, w, spec).omega) /
                       (2 * h);
    const double scale = std::fabs(e.omega) + std::fabs(wdx) + std::fabs(wdy);
    CHECK(std::fabs(e.omega_x - wdx) <= 1e-6 * scale);
    CHECK(std::fabs(e.omega_y - wdy) <= 1e-6 * scale);

    const double idx = (omega_eval(Point{x.x + h, x.y}, w, spec).inv_omega -
                        omega_eval(Point{x.x - h, x.y}, w, spec).inv_omega) /
                       (2 * h);
    const double iscale = std::fabs(e.inv_omega) + std::fabs(idx);
    CHECK(std::fabs(e.inv_x - idx) <= 1e-5 * iscale);

    // rotation consistency: directional = gradient dotted with the frame
    const auto beta = spec.beta();
    const auto eta = spec.eta();
    CHECK(e.omega_beta ==
          doctest::Approx(beta[0] * e.omega_x + beta[1] * e.omega_y).epsilon(1e-12));
    CHECK(e.omega_eta ==
          doctest::Approx(eta[0] * e.omega_x + eta[1] * e.omega_y).epsilon(1e-12));
  }
}

TEST_CASE("weighted norm is quadratically homogeneous and refines consistently") {
  const double eps = 1e-3;
  const ProblemSpec spec(eps, 1.0, 1.0, nullptr);
  const int N = 16;
  const ShishkinMesh mesh = make_mesh(N, eps, spec);
  const auto profile = StabilizationProfile::crosswind(spec, N);
  const WeightParams w = WeightParams::make(2.0, Point{mesh.node(N / 4, N / 4).x,
                                                       mesh.node(N / 4, N / 4).y},
                                            N, eps);

  NodalField G(N);
  std::mt19937 rng(15);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  for (int j = 1; j < N; ++j)
    for (int i = 1; i < N; ++i) G.at(i, j) = val(rng);

  const NormBreakdown base = weighted_norm(G, mesh, spec, profile, w);
  CHECK_FALSE(base.t3_integrand_negative);
  CHECK(base.t1 > 0.0);
  CHECK(base.t2 > 0.0);
  CHECK(base.t3 > 0.0);
  CHECK(base.t4 > 0.0);

  NodalField G3(N);
  for (int j = 0; j <= N; ++j)
    for (int i = 0; i <= N; ++i) G3.at(i, j) = 3.0 * G.at(i, j);
  const NormBreakdown scaled = weighted_norm(G3, mesh, spec, profile, w);
  CHECK(scaled.total() == doctest::Approx(9.0 * base.total()).epsilon(1e-12));

  const NormBreakdown finer = weighted_norm(G, mesh, spec, profile, w, 7);
  CHECK(finer.total() == doctest::Approx(base.total()).epsilon(1e-8));
}

TEST_CASE("coercivity identity holds to quadrature accuracy on a solved field") {
  const double eps = 1e-3;
  const ProblemSpec spec(eps, 1.0, 1.0, nullptr);
  const int N = 16;
  const ShishkinMesh mesh = make_mesh(N, eps, spec);
  const auto profile = StabilizationProfile::crosswind(spec, N);
  const Point xs = mesh.node(N / 4, N / 4);
  const GreenFunction gf = discrete_green(mesh, spec, profile, N / 4, N / 4, 1e-12);
  REQUIRE(gf.report.success);
  const WeightParams w = WeightParams::make(2.0, xs, N, eps);
  const CoercivityReport rep = coercivity_quantities(gf.G, mesh, spec, profile, w);
  CHECK(rep.norm.total() > 0.0);
  CHECK(std::fabs(rep.identity_residual()) <= 1e-6 * rep.norm.total());
  CHECK(rep.ratio() > 0.0);
}

TEST_CASE("piecewise absolute linear integrals are exact") {
  CHECK(abs_linear_integral(1.0, 1.0, 0.7) == doctest::Approx(0.7));
  CHECK(abs_linear_integral(0.0, 2.0, 0.7) == doctest::Approx(0.7));
  CHECK(abs_linear_integral(1.0, -1.0, 0.7) == doctest::Approx(0.35));
  CHECK_THROWS_AS(abs_linear_integral(1.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(abs_linear_integral(1.0, 1.0, -2.0), std::invalid_argument);

  std::mt19937 rng(16);
  std::uniform_real_distribution<double> fv(-3.0, 3.0);
  std::uniform_real_distribution<double> hv(0.01, 2.0);
  for (int t = 0; t < 20000; ++t) {
    const double f0 = fv(rng), f1 = fv(rng), H = hv(rng);
    const double got = abs_linear_integral(f0, f1, H);
    const auto fn = [&](double s) { return std::fabs(f0 + (f1 - f0) * s / H); };
    const double ref = oracle::adaptive_simpson(fn, 0.0, H, 1e-13);
    CHECK(std::fabs(got - ref) <= 1e-10 * std::max(1.0, std::fabs(ref)));
    CHECK(got >= 0.25 * std::max(std::fabs(f0), std::fabs(f1)) * H - 1e-12);
  }
}

TEST_CASE("cell envelope dominates sampled weight values") {
  const double eps = 1e-3;
  const ProblemSpec spec(eps, 1.0, 2.0, nullptr);
  const int N = 16;
  const ShishkinMesh mesh = make_mesh(N, eps, spec);
  const WeightParams w = WeightParams::make(1.0, mesh.node(N / 4, N / 4), N, eps);
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int ej = 0; ej < N; ++ej)
    for (int ei = 0; ei < N; ++ei) {
      const auto el = mesh.element(ei, ej);
      const double env = omega_max_on_element(el, w, spec);
      for (int t = 0; t < 6; ++t) {
        const Point x{el.x0 + unit(rng) * el.hx(), el.y0 + unit(rng) * el.hy()};
        CHECK(omega_eval(x, w, spec).omega <= env * (1.0 + 1e-12));
      }
      // corners themselves are admissible points of the closed cell
      CHECK(omega_eval(Point{el.x0, el.y0}, w, spec).omega <= env * (1.0 + 1e-12));
      CHECK(omega_eval(Point{el.x1, el.y1}, w, spec).omega <= env * (1.0 + 1e-12));
    }
}

TEST_CASE("exclusion sets grow with the cutoff exponent") {
  const double eps = 1e-4;
  const ProblemSpec spec(eps, 1.0, 1.0, nullptr);
  const int N = 32;
  const ShishkinMesh mesh = make_mesh(N, eps, spec);
  const WeightParams w = WeightParams::make(1.0, mesh.node(N / 4, N / 4), N, eps);
  const std::vector<char> k1 = excluded_cells(mesh, w, spec, 1.0);
  const std::vector<char> k2 = excluded_cells(mesh, w, spec, 2.0);
  REQUIRE(k1.size() == size_t(N) * N);
  REQUIRE(k2.size() == size_t(N) * N);
  int n1 = 0, n2 = 0;
  for (size_t c = 0; c < k1.size(); ++c) {
    if (k1[c]) {
      ++n1;
      CHECK(k2[c]);  // a cell above N^{-1} is also above N^{-2}
    }
    if (k2[c]) ++n2;
  }
  CHECK(n1 > 0);
  CHECK(n2 >= n1);
  // the anchor's own cell is always excluded (omega = 1 there)
  const auto [ai, aj] = mesh.locate(w.x_star.x, w.x_star.y);
  CHECK(k1[size_t(aj) * N + ai]);
}

TEST_CASE("vertex interpolation reproduces bilinear data exactly") {
  const double eps = 1e-2;
  const ProblemSpec spec(eps, 1.0, 1.0, nullptr);
  const ShishkinMesh mesh = make_mesh(8, eps, spec);
  const auto f = [](double x, double y) { return 0.25 - x + 2 * y + 3 * x * y; };
  const NodalField u = bilinear_interpolant(f, mesh);
  std::mt19937 rng(18);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const double x = unit(rng), y = unit(rng);
    CHECK(u.eval(mesh, x, y) == doctest::Approx(f(x, y)).epsilon(1e-13));
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "sdgreen/assembly.hpp"
#include "sdgreen/solver.hpp"
#include "support/oracles.hpp"

using namespace sdgreen;

namespace {

SparseSystem assemble_small(int N, double eps) {
  const ProblemSpec spec(eps, 1.0, 1.0, builtin_source("poly"));
  MeshParams p;
  p.N = N;
  p.spec = spec;
  const ShishkinMesh mesh = ShishkinMesh::build(p);
  return assemble(mesh, spec, StabilizationProfile::crosswind(spec, N));
}

double residual_inf(const SparseSystem& sys, const Eigen::VectorXd& x, bool transpose) {
  const Eigen::VectorXd r =
      transpose ? Eigen::VectorXd(sys.A.transpose() * x - sys.rhs)
                : Eigen::VectorXd(sys.A * x - sys.rhs);
  return r.cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("direct solve matches dense gaussian elimination") {
  const SparseSystem sys = assemble_small(6, 1e-2);
  const int n = int(sys.rhs.size());

  oracle::Matrix A(n, std::vector<double>(n, 0.0));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) A[r][c] = sys.A.coeff(r, c);
  std::vector<double> b(n);
  for (int r = 0; r < n; ++r) b[r] = sys.rhs[r];
  const std::vector<double> ref = oracle::dense_solve(A, b);

  const SolveReport rep = solve(sys, 1e-12);
  REQUIRE(rep.success);
  CHECK(rep.method.find("sparselu") != std::string::npos);
  CHECK(rep.rel_residual <= 1e-12);
  double worst = 0.0;
  for (int p = 0; p < n; ++p) worst = std::max(worst, std::fabs(rep.x[p] - ref[p]));
  CHECK(worst <= 1e-10);
}

TEST_CASE("transpose solve satisfies the transposed system") {
  const SparseSystem sys = assemble_small(8, 1e-3);
  const SolveReport rep = solve(sys, 1e-12, /*transpose=*/true);
  REQUIRE(rep.success);
  const double scale = sys.rhs.cwiseAbs().maxCoeff();
  CHECK(residual_inf(sys, rep.x, true) <= 1e-11 * std::max(1.0, scale));
  // the transposed solution is genuinely different from the direct one
  const SolveReport direct = solve(sys, 1e-12, false);
  CHECK((rep.x - direct.x).cwiseAbs().maxCoeff() > 1e-8);
}

TEST_CASE("singular systems report failure instead of crashing") {
  SparseSystem sys;
  sys.A.resize(2, 2);
  sys.A.insert(0, 0) = 1.0;  // second row identically zero -> singular
  sys.A.makeCompressed();
  sys.rhs = Eigen::VectorXd::Ones(2);
  const SolveReport rep = solve(sys, 1e-10);
  CHECK_FALSE(rep.success);
  CHECK(rep.x.size() == 2);
}

#ifndef SDGREEN_ASSEMBLY_HPP
#define SDGREEN_ASSEMBLY_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <functional>
#include <string>

#include "sdgreen/fields.hpp"
#include "sdgreen/mesh.hpp"
#include "sdgreen/problem.hpp"
#include "sdgreen/stabilization.hpp"

namespace sdgreen {

/// Interior nodes (i, j), 1 <= i, j <= N-1, numbered lexicographically with i
/// fastest: p = (j-1)*(N-1) + (i-1). Boundary nodes are excluded, which
/// enforces the homogeneous Dirichlet condition.
class DofMap {
 public:
  explicit DofMap(int N) : N_(N) {}
  int size() const { return (N_ - 1) * (N_ - 1); }
  int flat(int i, int j) const { return (j - 1) * (N_ - 1) + (i - 1); }
  std::pair<int, int> node(int p) const {
    return {p % (N_ - 1) + 1, p / (N_ - 1) + 1};
  }
  bool is_interior(int i, int j) const {
    return i >= 1 && i <= N_ - 1 && j >= 1 && j <= N_ - 1;
  }

 private:
  int N_;
};

/// A p q = B(phi_q, phi_p): row = test function, column = trial function.
struct SparseSystem {
  Eigen::SparseMatrix<double, Eigen::RowMajor> A;
  Eigen::VectorXd rhs;
};

/// Per-element constant weights of the four bilinear-form terms
///   c_beta (w_beta, v_beta) + c_eta (w_eta, v_eta) + c_conv (w, v_beta) + c_mass (w, v).
struct TermWeights {
  double c_beta = 0, c_eta = 0, c_conv = 0, c_mass = 0;
};

/// Local corner ordering is (SW, SE, NE, NW); entry (a, c) is the form value
/// with trial corner c against test corner a.
Eigen::Matrix4d local_matrix_terms(const ShishkinMesh::Element& el,
                                   const std::array<double, 2>& beta,
                                   const std::array<double, 2>& eta,
                                   const TermWeights& tw, int quad_order = 3);

/// Full stabilized form on one element, with the region-constant coefficients
/// taken from the profile.
Eigen::Matrix4d local_matrix(const ShishkinMesh::Element& el, const ProblemSpec& spec,
                             const StabilizationProfile& profile, int quad_order = 3);

/// Laplacian block (grad w, grad v) assembled directly in Cartesian components;
/// reference route for the rotation identity (w_beta,v_beta)+(w_eta,v_eta).
Eigen::Matrix4d local_laplace_xy(const ShishkinMesh::Element& el, int quad_order = 3);

SparseSystem assemble(const ShishkinMesh& mesh, const ProblemSpec& spec,
                      const StabilizationProfile& profile, int quad_order = 3);

/// Value and first derivatives of an element-wise smooth scalar field at a
/// point, used to feed non-polynomial trial functions into the form.
struct FieldValue {
  double v = 0, dx = 0, dy = 0;
};
using ScalarField = std::function<FieldValue(double x, double y, int ei, int ej)>;

ScalarField field_of(const NodalField& u, const ShishkinMesh& mesh);

/// Element-wise quadrature of B(w, v) for a general first argument; exact for
/// the default order when w is piecewise bilinear.
double apply_form(const ScalarField& w, const NodalField& v, const ShishkinMesh& mesh,
                  const ProblemSpec& spec, const StabilizationProfile& profile,
                  int quad_order = 3);

/// Quadrature of (f, v + delta*b*v_beta) against one nodal basis function is a
/// by-product of assemble(); this evaluates it for a whole field v.
double apply_rhs(const SourceFn& f, const NodalField& v, const ShishkinMesh& mesh,
                 const ProblemSpec& spec, const StabilizationProfile& profile,
                 int quad_order = 3);

struct DirectionalDerivs {
  double vx = 0, vy = 0, vbeta = 0, veta = 0;
};

/// Exact bilinear gradient at local point (s, t) of cell (ei, ej), with its
/// rotation into the streamline/crosswind frame.
DirectionalDerivs directional_derivatives(const NodalField& v, const ShishkinMesh& mesh,
                                          const ProblemSpec& spec, int ei, int ej,
                                          double s, double t);

/// MatrixMarket coordinate export of A (general real).
void write_matrix_market(const SparseSystem& sys, const std::string& path);

NodalField to_nodal(const Eigen::VectorXd& interior, int N);
Eigen::VectorXd interior_of(const NodalField& u);

}  // namespace sdgreen

#endif

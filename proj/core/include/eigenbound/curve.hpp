#pragma once

#include <string>
#include <utility>
#include <vector>

#include "eigenbound/matspace.hpp"
#include "eigenbound/polynomial.hpp"

namespace eigenbound {

// A rational curve is carried by two polynomial charts glued along |w| = 1:
// chart 0 in the coordinate w, chart 1 in u = 1/w with components
// homogenized by u^degree.  Chart domains are the closed unit disks, so the
// two disks tile the parameter sphere.
//
// At an immersed point the curve point is A = conj(z)^T z/|z|^2 and the
// Gauss map value is B = A~ - A, where A~ is the point of the tangent line
// antipodal to A.  At a branch point of order m (z' vanishing to order m)
// the tangent direction is the first nonvanishing factor h = z'/(w-w0)^m,
// which extends B continuously through the branch.

struct BranchPoint {
  Complex location;
  int order = 0;  // m >= 1
};

class CurveChart {
 public:
  explicit CurveChart(std::vector<Polynomial> components);

  int dimension() const { return static_cast<int>(components_.size()) - 1; }  // ambient n
  int degree() const { return degree_; }
  bool is_constant() const { return degree_ <= 0; }
  const std::vector<Polynomial>& components() const { return components_; }
  const std::vector<Polynomial>& derivative() const { return derivative_; }
  // Derivative with the common branch factor divided out; never vanishes.
  const std::vector<Polynomial>& tangent() const { return tangent_; }
  const std::vector<Polynomial>& tangent_derivative() const { return tangent_derivative_; }
  const std::vector<BranchPoint>& branch_points() const { return branches_; }

  Eigen::VectorXcd eval_components(Complex w) const;
  Eigen::VectorXcd eval_derivative(Complex w) const;
  Eigen::VectorXcd eval_tangent(Complex w) const;
  Eigen::VectorXcd eval_tangent_derivative(Complex w) const;

 private:
  std::vector<Polynomial> components_;
  std::vector<Polynomial> derivative_;
  std::vector<Polynomial> tangent_;
  std::vector<Polynomial> tangent_derivative_;
  std::vector<BranchPoint> branches_;
  int degree_ = 0;
};

// Branch locations of a chart: common roots of the component derivatives,
// with their vanishing orders.
std::vector<std::pair<Complex, int>> branch_orders(const CurveChart& chart);

class CurveAtlas {
 public:
  // Builds both charts from the w-chart components.  Common polynomial
  // factors are divided out first (reduced parametrization).
  explicit CurveAtlas(std::vector<Polynomial> chart0_components, std::string name = "");

  const CurveChart& chart(int id) const;
  int dimension() const { return chart0_.dimension(); }
  int degree() const { return chart0_.degree(); }
  int genus() const { return 0; }
  const std::string& name() const { return name_; }

  // Total branching over the sphere: chart-0 branches in the closed unit
  // disk plus chart-1 branches in the open unit disk.
  int total_branching() const { return total_branching_; }
  // delta = 1 + (g - 1 - b/2)/d  (g = 0 here); nonnegative by construction.
  double delta() const;
  // The components span C^{n+1} (the curve is not contained in a hyperplane).
  bool is_full() const { return full_; }

 private:
  CurveChart chart0_;
  CurveChart chart_inf_;
  std::string name_;
  int total_branching_ = 0;
  bool full_ = false;
};

CurveAtlas make_rational_normal_curve(int n);

// Built-in validation curves: line, conic, rational normal cubic, a cuspidal
// cubic (1, w^2, w^3), and a reparametrized (asymmetric-measure) conic.
std::vector<std::pair<std::string, CurveAtlas>> builtin_test_curves();

struct CurvePointData {
  Eigen::MatrixXcd A;
  Eigen::MatrixXcd B;
  double conformal = 0.0;  // e^{2 theta}
  double sigma_sq = 0.0;   // |sigma|^2, clamped at 0
  double gauss_curvature = 0.0;  // K = 1 - |sigma|^2 / 2
};

HermitianPoint eval_point(const CurveChart& chart, Complex w);

// Gauss map via the antipodal construction on the (deflated) tangent
// direction; defined at every chart point, branch points included.
Eigen::MatrixXcd eval_gauss(const CurveChart& chart, Complex w);

// Gauss map via the normalized mixed second derivative of A.  Equal to
// eval_gauss away from branch points; throws where the derivative term
// degenerates (at or numerically on a branch point).
Eigen::MatrixXcd gauss_from_laplacian(const CurveChart& chart, Complex w);

// Induced metric density e^{2 theta} in chart coordinates:
// 4 (|z|^2 |z'|^2 - |<z, z'>|^2) / |z|^4, which is the unique density with
// |grad A|^2 = 2.  Vanishes to order 2m at an order-m branch point.
double conformal_factor(const CurveChart& chart, Complex w);

// Point, Gauss value, density, |sigma|^2 and K at an unbranched point.
CurvePointData curvature_data(const CurveChart& chart, Complex w);

// Closed-form first derivatives of A and B along chart axes x, y (w = x+iy).
void point_derivatives(const CurveChart& chart, Complex w,
                       Eigen::MatrixXcd& dAx, Eigen::MatrixXcd& dAy);
void gauss_derivatives(const CurveChart& chart, Complex w,
                       Eigen::MatrixXcd& dBx, Eigen::MatrixXcd& dBy);

}  // namespace eigenbound

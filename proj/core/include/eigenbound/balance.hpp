#pragma once

#include <functional>
#include <vector>

#include "eigenbound/curve.hpp"
#include "eigenbound/quad.hpp"

namespace eigenbound {

// Measure d mu on the parameter sphere: the induced area measure d Sigma, or
// a conformal rescaling rho * d Sigma with a user density per (chart, w).
struct MeasureSpec {
  enum class Kind { induced, conformal_density };
  Kind kind = Kind::induced;
  std::function<double(int chart_id, Complex w)> density;  // used iff conformal_density

  static MeasureSpec induced() { return {}; }
  static MeasureSpec conformal(std::function<double(int, Complex)> rho) {
    return {Kind::conformal_density, std::move(rho)};
  }
};

struct BalanceOptions {
  double tol = 1e-8;            // on ||Phi_a(P) - I/(n+1)||
  int max_iterations = 500;
  double fd_step = 1e-6;        // scaled by (1 + ||S||)
  double interior_floor = 1e-10;  // reject steps with lambda_min(P) below this
};

struct BalanceResult {
  HermitianPoint P;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> residual_history;  // residual at start and after each accepted step
};

// Center-of-mass map: Phi_a(P) = integral of (A_P + a B_P) d mu, normalized
// by the total mass of d mu, where A_P is the projected curve point and B_P
// its own Gauss map (recomputed on the projected curve, not the projection
// of B).  P must be PSD; rank-one P is allowed only for a = 0, where
// Phi_0(P) = P.
Eigen::MatrixXcd center_of_mass(const CurveAtlas& atlas, const MeasureSpec& measure,
                                const HermitianPoint& P, double a,
                                const QuadratureGrid& grid);

// Solve Phi_a(P) = I/(n+1) for P in the interior of the hull, parametrized
// as P = exp_normalize(S) over traceless Hermitian S, by Levenberg-style
// least squares with finite-difference directional derivatives.  Requires a
// full curve with n >= 2 and 0 <= a < 1/2.
BalanceResult balance(const CurveAtlas& atlas, const MeasureSpec& measure, double a,
                      double tol, const QuadratureGrid& grid,
                      const BalanceOptions& options = {});
BalanceResult balance(const CurveAtlas& atlas, const MeasureSpec& measure, double a,
                      double tol);

// The curve w -> [z(w) P]: components combined through P, then reduced.
// Requires rank P >= 2 and a nonconstant image.
CurveAtlas project_curve(const CurveAtlas& atlas, const HermitianPoint& P);

// Phi_a along the boundary family P_eps = diag(1, eps, 0, ..., 0)/(1 + eps).
// The sequence converges as eps -> 0, but its limit remembers the family's
// direction, not just P_0 = diag(1, 0, ..., 0) (distinct coordinate
// orderings give limits separated by order a).
std::vector<Eigen::MatrixXcd> boundary_limit_experiment(const CurveAtlas& atlas, double a,
                                                        const std::vector<double>& eps_list,
                                                        const QuadratureGrid& grid);

}  // namespace eigenbound

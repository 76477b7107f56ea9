#pragma once

#include <functional>
#include <vector>

#include "eigenbound/curve.hpp"

namespace eigenbound {

// One quadrature node on the parameter sphere: a chart id (0 or 1), the
// chart coordinate, and the flat polar weight w_r * w_t * r.  The induced
// surface measure is obtained by multiplying with e^{2 theta}(w).
struct QuadratureNode {
  int chart_id = 0;
  Complex w;
  double weight = 0.0;
};

// Gauss-Legendre tensor grid in (r, angle) over each of the two closed unit
// disks; the disks tile the sphere up to the measure-zero gluing circle, so
// flat weights sum to 2 pi exactly.  Angular nodes carry a fixed irrational
// rotation offset so no node can land on an algebraic branch location.
class QuadratureGrid {
 public:
  explicit QuadratureGrid(int radial_order = 64, int angular_order = 128);

  int radial_order() const { return radial_order_; }
  int angular_order() const { return angular_order_; }
  const std::vector<QuadratureNode>& nodes() const { return nodes_; }
  double flat_mass() const;  // sum of weights; 2 pi up to roundoff

 private:
  int radial_order_ = 0;
  int angular_order_ = 0;
  std::vector<QuadratureNode> nodes_;
};

// Gauss-Legendre nodes and weights on [-1, 1] (Golub-Welsch).
void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights);

// Integral against the induced measure dSigma = e^{2 theta} dx dy: the field
// is sampled at every node and weighted by the node's induced density.
// Accumulation is pairwise, so the result is independent of traversal
// chunking to roundoff.
double integrate(const CurveAtlas& atlas, const QuadratureGrid& grid,
                 const std::function<double(const CurveChart&, Complex)>& field);
Eigen::MatrixXcd integrate_matrix(
    const CurveAtlas& atlas, const QuadratureGrid& grid,
    const std::function<Eigen::MatrixXcd(const CurveChart&, Complex)>& field);

// Area of the curve: integrate(1); equals 4 pi d.
double curve_area(const CurveAtlas& atlas, const QuadratureGrid& grid);

// Dirichlet energy of the test map phi_a = A + aB against its closed form
// 8 pi d {(2a-1)^2 + 2 a^2 delta}.
struct EnergyReport {
  double a = 0.0;
  double numeric_energy = 0.0;
  double closed_form = 0.0;
  double delta = 0.0;
  double rel_err = 0.0;
};

EnergyReport energy(const CurveAtlas& atlas, const QuadratureGrid& grid, double a);

// Max deviation of |phi_a - I/(n+1)|^2 from (2a-1)^2 + (n-1)/(n+1) over
// random unbranched samples (fixed internal seed; deterministic).
double sphere_radius_check(const CurveAtlas& atlas, double a, int sample_count);

}  // namespace eigenbound

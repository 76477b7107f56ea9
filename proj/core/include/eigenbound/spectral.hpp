#pragma once

#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "eigenbound/curve.hpp"

namespace eigenbound {

// Closed oriented triangle mesh with an optional per-vertex conformal
// density (metric = density x ambient) and, for quotient surfaces such as
// flat tori, per-triangle unwrapped corner coordinates.
struct TriangleMesh {
  Eigen::MatrixXd vertices;       // V x dim, dim in {2, 3}
  Eigen::MatrixXi triangles;      // T x 3, consistently oriented
  Eigen::VectorXd density;        // V entries, or empty for unit density
  Eigen::MatrixXd corner_coords;  // T x (3*dim) unwrapped, or empty
};

// Closed + consistently oriented (every directed edge once), nondegenerate
// triangles, positive density.  Throws on violation.
void validate_mesh(const TriangleMesh& mesh);

// Subdivided icosahedron projected to the unit sphere: 20 * 4^level
// triangles, level in [0, 7].
TriangleMesh build_icosphere(int level);

// grid x grid triangulation of the torus R^2 / (Z b1 + Z b2); area equals
// |det(b1 b2)|.
TriangleMesh build_flat_torus(const Eigen::Vector2d& b1, const Eigen::Vector2d& b2, int grid);

struct SpectrumReport {
  double lambda1 = 0.0;
  double area = 0.0;
  double product = 0.0;  // lambda1 * area
  int mesh_size = 0;     // vertex count
  std::vector<double> low_eigenvalues;  // smallest nonzero Ritz values
};

// Cotangent stiffness + lumped barycentric mass; smallest generalized
// eigenvalue on the complement of constants via shift-inverted block
// iteration with Rayleigh-Ritz extraction.
SpectrumReport lambda1_area(const TriangleMesh& mesh);

struct CurveBoundReport {
  int n = 0;
  int d = 0;
  double delta = 0.0;
  double a = 0.0;
  double lambda1 = 0.0;
  double area = 0.0;
  double product = 0.0;
  double bound_at_a = 0.0;        // F(n, d, delta, a); 8 pi d when n = 1
  double best_bound = 0.0;        // min over a of F; 8 pi d when n = 1
  double best_a = 0.0;
  double rayleigh_quotient = 0.0; // energy / ((2a-1)^2 + (n-1)/(n+1))
  double margin = 0.0;
  bool inequality_ok = false;     // product <= best_bound * (1 + margin)
};

// Pulls the curve's induced conformal factor back onto an icosphere through
// the stereographic charts, runs the eigensolver, and compares the product
// with the closed-form bound; the Rayleigh quotient of phi_a (by quadrature)
// is reported as an independent upper bound.
CurveBoundReport verify_bound_on_curve(const CurveAtlas& atlas, double a, int mesh_level);

}  // namespace eigenbound

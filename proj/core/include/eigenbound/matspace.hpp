#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace eigenbound {

// Ambient space: Hermitian matrices of order n+1 with the inner product
// <X,Y> = 2 Re tr(XY).  Projective points are the trace-one rank-one
// idempotents A = conj(z)^T z / |z|^2; their convex hull is the set of
// positive semidefinite trace-one matrices.

inline constexpr int kMaxMatrixOrder = 64;

// Raised when a projectivity is applied to a point of its kernel subspace
// (distinct from a zero-vector input, which is invalid_argument).
class KernelHitError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

double hm_inner(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y);
double hm_norm(const Eigen::MatrixXcd& x);

// Trace-one Hermitian matrix (validated on construction).
class HermitianPoint {
 public:
  explicit HermitianPoint(Eigen::MatrixXcd m);
  int order() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return m_; }

  // Center of the sphere containing the projective points: I/(n+1).
  static HermitianPoint center(int order);

 private:
  Eigen::MatrixXcd m_;
};

// Traceless Hermitian matrix (validated on construction); the solver's
// unconstrained coordinate on the hull interior via exp_normalize.
class TracelessHermitian {
 public:
  explicit TracelessHermitian(Eigen::MatrixXcd m);
  int order() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return m_; }

 private:
  Eigen::MatrixXcd m_;
};

struct HullClassification {
  enum class Tag { not_in_hull, boundary, interior };
  Tag tag = Tag::not_in_hull;
  int rank = 0;  // count of eigenvalues above threshold
};

double hm_inner(const HermitianPoint& a, const HermitianPoint& b);

// A = conj(z)^T z / |z|^2 for a homogeneous row vector z != 0.
HermitianPoint point_from_homogeneous(const Eigen::VectorXcd& z);

// f_P applied to the point with homogeneous coordinates z: the point of
// homogeneous coordinates zP.  P must be PSD; z in ker(P) raises
// KernelHitError.
HermitianPoint apply_projectivity(const HermitianPoint& P, const Eigen::VectorXcd& z);

// Eigenvalue classification against the PSD trace-one hull.  tol is relative
// to the largest |eigenvalue|.
HullClassification hull_classify(const HermitianPoint& a, double tol = 1e-9);

// exp(S)/tr exp(S): interior point of the hull.  Invariant under S -> S+cI;
// guarded against overflow for very large ||S||.
HermitianPoint exp_normalize(const TracelessHermitian& s);

// Rank of a PSD matrix at relative threshold tol.
int psd_rank(const Eigen::MatrixXcd& m, double tol = 1e-9);

}  // namespace eigenbound

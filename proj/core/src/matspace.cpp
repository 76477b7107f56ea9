#include "eigenbound/matspace.hpp"

#include <cmath>

namespace eigenbound {

namespace {

void check_square_order(const Eigen::MatrixXcd& m, const char* what) {
  if (m.rows() != m.cols()) throw std::invalid_argument(std::string(what) + ": matrix not square");
  if (m.rows() < 2 || m.rows() > kMaxMatrixOrder)
    throw std::invalid_argument(std::string(what) + ": order outside [2, 64]");
}

void check_hermitian(const Eigen::MatrixXcd& m, const char* what) {
  double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw std::invalid_argument(std::string(what) + ": matrix not Hermitian");
}

}  // namespace

double hm_inner(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw std::invalid_argument("hm_inner: order mismatch");
  // 2 tr(XY) for Hermitian X, Y equals twice their Frobenius inner product.
  return 2.0 * x.cwiseProduct(y.conjugate()).sum().real();
}

double hm_norm(const Eigen::MatrixXcd& x) { return std::sqrt(std::max(0.0, hm_inner(x, x))); }

HermitianPoint::HermitianPoint(Eigen::MatrixXcd m) : m_(std::move(m)) {
  check_square_order(m_, "HermitianPoint");
  check_hermitian(m_, "HermitianPoint");
  if (std::abs(m_.trace().real() - 1.0) > 1e-9 || std::abs(m_.trace().imag()) > 1e-9)
    throw std::invalid_argument("HermitianPoint: trace must be one");
  m_ = 0.5 * (m_ + m_.adjoint().eval());  // exact Hermitian symmetrization
}

HermitianPoint HermitianPoint::center(int order) {
  if (order < 2 || order > kMaxMatrixOrder)
    throw std::invalid_argument("HermitianPoint::center: order outside [2, 64]");
  return HermitianPoint(Eigen::MatrixXcd::Identity(order, order) / double(order));
}

TracelessHermitian::TracelessHermitian(Eigen::MatrixXcd m) : m_(std::move(m)) {
  check_square_order(m_, "TracelessHermitian");
  check_hermitian(m_, "TracelessHermitian");
  double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  if (std::abs(m_.trace()) > 1e-9 * scale)
    throw std::invalid_argument("TracelessHermitian: trace must vanish");
  m_ = 0.5 * (m_ + m_.adjoint().eval());
}

double hm_inner(const HermitianPoint& a, const HermitianPoint& b) {
  return hm_inner(a.matrix(), b.matrix());
}

HermitianPoint point_from_homogeneous(const Eigen::VectorXcd& z) {
  if (z.size() < 2 || z.size() > kMaxMatrixOrder)
    throw std::invalid_argument("point_from_homogeneous: order outside [2, 64]");
  double n2 = z.squaredNorm();
  if (n2 <= 0.0) throw std::invalid_argument("point_from_homogeneous: zero vector");
  // Row-vector convention: A_{jk} = conj(z_j) z_k / |z|^2.
  Eigen::MatrixXcd a = (z.conjugate() * z.transpose()) / n2;
  return HermitianPoint(std::move(a));
}

HermitianPoint apply_projectivity(const HermitianPoint& P, const Eigen::VectorXcd& z) {
  if (z.size() != P.order()) throw std::invalid_argument("apply_projectivity: order mismatch");
  if (z.squaredNorm() <= 0.0) throw std::invalid_argument("apply_projectivity: zero vector");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(P.matrix(), Eigen::EigenvaluesOnly);
  double lmax = es.eigenvalues().cwiseAbs().maxCoeff();
  if (es.eigenvalues().minCoeff() < -1e-9 * std::max(lmax, 1.0))
    throw std::invalid_argument("apply_projectivity: P not positive semidefinite");
  // z is a row vector; zP as a column is P^T z.
  Eigen::VectorXcd v = P.matrix().transpose() * z;
  double scale = z.norm() * std::max(lmax, 1e-300);
  if (v.norm() <= 1e-13 * scale)
    throw KernelHitError("apply_projectivity: point lies in the kernel of P");
  return point_from_homogeneous(v);
}

HullClassification hull_classify(const HermitianPoint& a, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a.matrix(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("hull_classify: eigensolver failed");
  const auto& ev = es.eigenvalues();
  double thresh = tol * std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
  HullClassification out;
  double lmin = ev.minCoeff();
  out.rank = static_cast<int>((ev.array() > thresh).count());
  if (lmin < -thresh)
    out.tag = HullClassification::Tag::not_in_hull;
  else if (lmin <= thresh)
    out.tag = HullClassification::Tag::boundary;
  else
    out.tag = HullClassification::Tag::interior;
  return out;
}

HermitianPoint exp_normalize(const TracelessHermitian& s) {
  if (s.matrix().norm() > 1e4)
    throw std::overflow_error("exp_normalize: ||S|| beyond overflow guard");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(s.matrix());
  if (es.info() != Eigen::Success) throw std::runtime_error("exp_normalize: eigensolver failed");
  // Shift by the top eigenvalue before exponentiating; the result is
  // invariant under S -> S + cI, so this only buys numerical headroom.
  Eigen::VectorXd lam = es.eigenvalues();
  double top = lam.maxCoeff();
  Eigen::VectorXd e = (lam.array() - top).exp();
  double tr = e.sum();
  Eigen::MatrixXcd m =
      es.eigenvectors() * (e / tr).asDiagonal() * es.eigenvectors().adjoint();
  return HermitianPoint(std::move(m));
}

int psd_rank(const Eigen::MatrixXcd& m, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  double thresh = tol * std::max(es.eigenvalues().cwiseAbs().maxCoeff(), 1e-300);
  return static_cast<int>((es.eigenvalues().array() > thresh).count());
}

}  // namespace eigenbound

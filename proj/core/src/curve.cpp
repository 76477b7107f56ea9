#include "eigenbound/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace eigenbound {

namespace {

constexpr double kRootTol = 1e-8;       // relative vanishing threshold
constexpr double kClusterTol = 1e-4;    // companion-root scatter for multiple roots

// Magnitude bound of p at w0, for relative vanishing tests.
double eval_bound(const Polynomial& p, Complex w0) {
  double b = 0.0, pw = 1.0, aw = std::abs(w0);
  for (const auto& c : p.coeffs()) {
    b += std::abs(c) * pw;
    pw *= aw;
  }
  return b;
}

bool vanishes_at(const Polynomial& p, Complex w0, double tol) {
  double bound = eval_bound(p, w0);
  if (bound == 0.0) return true;  // zero polynomial
  return std::abs(p.eval(w0)) <= tol * bound;
}

// Smallest k with p^(k)(w0) != 0 (relative test); degree+1 when p vanishes
// to all orders it has.
int valuation_at(const Polynomial& p, Complex w0, double tol) {
  Polynomial q = p;
  for (int k = 0; k <= p.degree(); ++k) {
    if (!vanishes_at(q, w0, tol)) return k;
    q = q.derivative();
  }
  return p.degree() + 1;
}

// Common roots of a family of polynomials with their joint multiplicity
// (minimum vanishing order across the family).  Identically-zero members
// impose no constraint.  Candidate locations come from the lowest-degree
// nonzero member; companion-matrix scatter for an m-fold root is ~eps^(1/m),
// so candidates are clustered before the multiplicity test.
std::vector<std::pair<Complex, int>> common_roots(const std::vector<Polynomial>& ps, double tol) {
  const Polynomial* pick = nullptr;
  for (const auto& p : ps) {
    if (p.is_zero()) continue;
    if (!pick || p.degree() < pick->degree()) pick = &p;
  }
  if (!pick || pick->degree() < 1) return {};  // a nonvanishing constant blocks common roots

  std::vector<Complex> cand = pick->roots();
  std::vector<std::pair<Complex, int>> clusters;  // (centroid accumulator, count)
  for (Complex r : cand) {
    bool merged = false;
    for (auto& cl : clusters) {
      if (std::abs(r - cl.first / double(cl.second)) < kClusterTol) {
        cl.first += r;
        cl.second += 1;
        merged = true;
        break;
      }
    }
    if (!merged) clusters.emplace_back(r, 1);
  }

  std::vector<std::pair<Complex, int>> out;
  for (const auto& cl : clusters) {
    Complex w0 = cl.first / double(cl.second);
    int m = std::numeric_limits<int>::max();
    for (const auto& p : ps) {
      if (p.is_zero()) continue;
      m = std::min(m, valuation_at(p, w0, tol));
      if (m == 0) break;
    }
    if (m >= 1 && m != std::numeric_limits<int>::max()) out.emplace_back(w0, m);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.real() != b.first.real()) return a.first.real() < b.first.real();
    return a.first.imag() < b.first.imag();
  });
  return out;
}

std::vector<Polynomial> deflate_all(std::vector<Polynomial> ps, Complex root, int times) {
  for (auto& p : ps) {
    for (int t = 0; t < times; ++t) {
      if (p.is_zero()) break;
      double rem = 0.0;
      Polynomial q = p.deflated(root, &rem);
      p = std::move(q);
    }
  }
  return ps;
}

std::vector<Polynomial> reduce_common_factors(std::vector<Polynomial> comps) {
  for (int pass = 0; pass < 4; ++pass) {
    auto roots = common_roots(comps, kRootTol);
    if (roots.empty()) break;
    for (const auto& [w0, m] : roots) comps = deflate_all(std::move(comps), w0, m);
  }
  return comps;
}

double binomial(int n, int k) {
  double v = 1.0;
  for (int i = 1; i <= k; ++i) v *= double(n - k + i) / double(i);
  return v;
}

}  // namespace

CurveChart::CurveChart(std::vector<Polynomial> components) : components_(std::move(components)) {
  if (components_.size() < 2 || components_.size() > static_cast<size_t>(kMaxMatrixOrder))
    throw std::invalid_argument("CurveChart: component count outside [2, 64]");
  degree_ = -1;
  for (const auto& p : components_) degree_ = std::max(degree_, p.degree());
  if (degree_ < 0) throw std::invalid_argument("CurveChart: all components vanish");

  derivative_.reserve(components_.size());
  for (const auto& p : components_) derivative_.push_back(p.derivative());

  for (const auto& [w0, m] : common_roots(derivative_, kRootTol))
    branches_.push_back(BranchPoint{w0, m});

  tangent_ = derivative_;
  for (const auto& bp : branches_) tangent_ = deflate_all(std::move(tangent_), bp.location, bp.order);
  tangent_derivative_.reserve(tangent_.size());
  for (const auto& p : tangent_) tangent_derivative_.push_back(p.derivative());
}

namespace {
Eigen::VectorXcd eval_family(const std::vector<Polynomial>& ps, Complex w) {
  Eigen::VectorXcd v(ps.size());
  for (size_t k = 0; k < ps.size(); ++k) v(k) = ps[k].eval(w);
  return v;
}
}  // namespace

Eigen::VectorXcd CurveChart::eval_components(Complex w) const { return eval_family(components_, w); }
Eigen::VectorXcd CurveChart::eval_derivative(Complex w) const { return eval_family(derivative_, w); }
Eigen::VectorXcd CurveChart::eval_tangent(Complex w) const { return eval_family(tangent_, w); }
Eigen::VectorXcd CurveChart::eval_tangent_derivative(Complex w) const {
  return eval_family(tangent_derivative_, w);
}

std::vector<std::pair<Complex, int>> branch_orders(const CurveChart& chart) {
  std::vector<std::pair<Complex, int>> out;
  out.reserve(chart.branch_points().size());
  for (const auto& bp : chart.branch_points()) out.emplace_back(bp.location, bp.order);
  return out;
}

CurveAtlas::CurveAtlas(std::vector<Polynomial> chart0_components, std::string name)
    : chart0_(reduce_common_factors(std::move(chart0_components))),
      chart_inf_([this] {
        std::vector<Polynomial> rev;
        rev.reserve(chart0_.components().size());
        for (const auto& p : chart0_.components()) rev.push_back(p.reversed(chart0_.degree()));
        return CurveChart(std::move(rev));
      }()),
      name_(std::move(name)) {
  if (chart0_.is_constant())
    throw std::invalid_argument("CurveAtlas: constant curve (degree zero after reduction)");

  for (const auto& bp : chart0_.branch_points())
    if (std::abs(bp.location) <= 1.0 + 1e-9) total_branching_ += bp.order;
  for (const auto& bp : chart_inf_.branch_points())
    if (std::abs(bp.location) < 1.0 - 1e-9) total_branching_ += bp.order;

  // Fullness: the component coefficient matrix has full column rank exactly
  // when the curve misses no hyperplane.
  const int n1 = static_cast<int>(chart0_.components().size());
  Eigen::MatrixXcd coef = Eigen::MatrixXcd::Zero(chart0_.degree() + 1, n1);
  for (int k = 0; k < n1; ++k) {
    const auto& c = chart0_.components()[k].coeffs();
    for (size_t i = 0; i < c.size(); ++i) coef(static_cast<int>(i), k) = c[i];
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(coef);
  double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-10 * std::max(smax, 1e-300)) ++rank;
  full_ = (rank == n1);
}

const CurveChart& CurveAtlas::chart(int id) const {
  if (id == 0) return chart0_;
  if (id == 1) return chart_inf_;
  throw std::invalid_argument("CurveAtlas::chart: id must be 0 or 1");
}

double CurveAtlas::delta() const {
  double d = degree();
  double v = 1.0 + (double(genus()) - 1.0 - 0.5 * double(total_branching_)) / d;
  if (v < -1e-12) throw std::runtime_error("CurveAtlas::delta: negative (branching exceeds 2(d-1))");
  return std::max(v, 0.0);
}

CurveAtlas make_rational_normal_curve(int n) {
  if (n < 1 || n > kMaxMatrixOrder - 1)
    throw std::invalid_argument("make_rational_normal_curve: n outside [1, 63]");
  std::vector<Polynomial> comps;
  comps.reserve(n + 1);
  for (int k = 0; k <= n; ++k)
    comps.push_back(Polynomial::monomial(k, Complex(std::sqrt(binomial(n, k)), 0.0)));
  return CurveAtlas(std::move(comps), "rational_normal_" + std::to_string(n));
}

std::vector<std::pair<std::string, CurveAtlas>> builtin_test_curves() {
  std::vector<std::pair<std::string, CurveAtlas>> out;
  out.emplace_back("line", make_rational_normal_curve(1));
  out.emplace_back("conic", make_rational_normal_curve(2));
  out.emplace_back("cubic", make_rational_normal_curve(3));
  out.emplace_back("cusp_cubic",
                   CurveAtlas({Polynomial::monomial(0), Polynomial::monomial(2),
                               Polynomial::monomial(3)},
                              "cusp_cubic"));
  {
    std::vector<Polynomial> comps;
    const auto& conic = make_rational_normal_curve(2);
    for (const auto& p : conic.chart(0).components()) comps.push_back(p.rescaled(2.0));
    out.emplace_back("asym_conic", CurveAtlas(std::move(comps), "asym_conic"));
  }
  return out;
}

HermitianPoint eval_point(const CurveChart& chart, Complex w) {
  return point_from_homogeneous(chart.eval_components(w));
}

Eigen::MatrixXcd eval_gauss(const CurveChart& chart, Complex w) {
  if (chart.is_constant()) throw std::invalid_argument("eval_gauss: constant chart");
  Eigen::VectorXcd Z = chart.eval_components(w);
  Eigen::VectorXcd H = chart.eval_tangent(w);
  double N = Z.squaredNorm();
  if (N <= 0.0) throw std::runtime_error("eval_gauss: parametrization vanishes");
  Complex r = Z.dot(H);  // sum conj(Z) H
  Eigen::VectorXcd C = H - (r / N) * Z;
  double D = C.squaredNorm();
  if (D <= 1e-28 * H.squaredNorm())
    throw std::runtime_error("eval_gauss: degenerate tangent direction");
  Eigen::MatrixXcd A = (Z.conjugate() * Z.transpose()) / N;
  Eigen::MatrixXcd Aanti = (C.conjugate() * C.transpose()) / D;
  return Aanti - A;
}

Eigen::MatrixXcd gauss_from_laplacian(const CurveChart& chart, Complex w) {
  if (chart.is_constant()) throw std::invalid_argument("gauss_from_laplacian: constant chart");
  Eigen::VectorXcd Z = chart.eval_components(w);
  Eigen::VectorXcd Zp = chart.eval_derivative(w);
  double N = Z.squaredNorm();
  double q = Zp.squaredNorm();
  Complex p = Z.dot(Zp);
  Eigen::VectorXcd Zb = Z.conjugate(), Zpb = Zp.conjugate();
  Eigen::MatrixXcd M = (Zpb * Zp.transpose()) / N
                     - std::conj(p) * (Zb * Zp.transpose()) / (N * N)
                     - p * (Zpb * Z.transpose()) / (N * N)
                     - q * (Zb * Z.transpose()) / (N * N)
                     + 2.0 * std::norm(p) * (Zb * Z.transpose()) / (N * N * N);
  double nm = hm_norm(M);
  if (!(nm > 1e-13 * (q / N)) || q == 0.0)
    throw std::domain_error("gauss_from_laplacian: branch point (second derivative degenerates)");
  return (2.0 / nm) * M;
}

double conformal_factor(const CurveChart& chart, Complex w) {
  Eigen::VectorXcd Z = chart.eval_components(w);
  Eigen::VectorXcd Zp = chart.eval_derivative(w);
  double N = Z.squaredNorm();
  if (N <= 0.0) throw std::runtime_error("conformal_factor: parametrization vanishes");
  double q = Zp.squaredNorm();
  Complex p = Z.dot(Zp);
  double v = 4.0 * (N * q - std::norm(p)) / (N * N);
  return std::max(v, 0.0);  // Cauchy-Schwarz makes it nonnegative exactly
}

void point_derivatives(const CurveChart& chart, Complex w,
                       Eigen::MatrixXcd& dAx, Eigen::MatrixXcd& dAy) {
  Eigen::VectorXcd Z = chart.eval_components(w);
  Eigen::VectorXcd Zp = chart.eval_derivative(w);
  double N = Z.squaredNorm();
  Complex pw = Z.dot(Zp);
  Eigen::VectorXcd Zb = Z.conjugate();
  Eigen::MatrixXcd dwA = (Zb * Zp.transpose()) / N - (pw / (N * N)) * (Zb * Z.transpose());
  Eigen::MatrixXcd dwAh = dwA.adjoint();
  dAx = dwA + dwAh;
  dAy = Complex(0.0, 1.0) * (dwA - dwAh);
}

void gauss_derivatives(const CurveChart& chart, Complex w,
                       Eigen::MatrixXcd& dBx, Eigen::MatrixXcd& dBy) {
  if (chart.is_constant()) throw std::invalid_argument("gauss_derivatives: constant chart");
  Eigen::VectorXcd Z = chart.eval_components(w);
  Eigen::VectorXcd Zp = chart.eval_derivative(w);
  Eigen::VectorXcd H = chart.eval_tangent(w);
  Eigen::VectorXcd Hp = chart.eval_tangent_derivative(w);
  double N = Z.squaredNorm();
  Complex pw = Z.dot(Zp);
  Complex r = Z.dot(H);
  Complex rw = Z.dot(Hp);
  Complex rwb = Zp.dot(H);

  Complex alpha = r / N;
  Complex dw_alpha = rw / N - r * pw / (N * N);
  Complex dwb_alpha = rwb / N - r * std::conj(pw) / (N * N);

  Eigen::VectorXcd C = H - alpha * Z;
  double D = C.squaredNorm();
  if (D <= 1e-28 * H.squaredNorm())
    throw std::runtime_error("gauss_derivatives: degenerate tangent direction");
  Eigen::VectorXcd dwC = Hp - dw_alpha * Z - alpha * Zp;
  Eigen::VectorXcd dwbC = -dwb_alpha * Z;
  Eigen::VectorXcd Cb = C.conjugate();
  Eigen::VectorXcd dwCb = (-std::conj(dwb_alpha)) * Z.conjugate();

  Complex dwD = dwbC.dot(C) + C.dot(dwC);  // d/dw of sum conj(C) C
  Eigen::MatrixXcd T = (Cb * C.transpose()) / D;
  Eigen::MatrixXcd dwT =
      (dwCb * C.transpose() + Cb * dwC.transpose()) / D - T * (dwD / D);

  Eigen::MatrixXcd dwA =
      (Z.conjugate() * Zp.transpose()) / N - (pw / (N * N)) * (Z.conjugate() * Z.transpose());
  Eigen::MatrixXcd dwB = dwT - dwA;
  Eigen::MatrixXcd dwBh = dwB.adjoint();
  dBx = dwB + dwBh;
  dBy = Complex(0.0, 1.0) * (dwB - dwBh);
}

CurvePointData curvature_data(const CurveChart& chart, Complex w) {
  if (chart.is_constant()) throw std::invalid_argument("curvature_data: constant chart");
  for (const auto& bp : chart.branch_points())
    if (std::abs(w - bp.location) < 1e-9)
      throw std::invalid_argument("curvature_data: branch point input");
  CurvePointData out;
  out.conformal = conformal_factor(chart, w);
  if (out.conformal <= 1e-280)
    throw std::invalid_argument("curvature_data: induced metric degenerates at input");
  out.A = eval_point(chart, w).matrix();
  out.B = eval_gauss(chart, w);
  Eigen::MatrixXcd dBx, dBy;
  gauss_derivatives(chart, w, dBx, dBy);
  double grad_b = (hm_inner(dBx, dBx) + hm_inner(dBy, dBy)) / out.conformal;
  out.sigma_sq = std::max(0.0, 0.5 * grad_b - 4.0);
  out.gauss_curvature = 1.0 - 0.5 * out.sigma_sq;
  return out;
}

}  // namespace eigenbound

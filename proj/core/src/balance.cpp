#include "eigenbound/balance.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace eigenbound {

namespace {

// Frobenius-orthonormal basis of traceless Hermitian matrices of the given
// order: real/imaginary off-diagonal pairs, then diagonal ladder matrices.
std::vector<Eigen::MatrixXcd> traceless_basis(int order) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<Eigen::MatrixXcd> basis;
  basis.reserve(static_cast<size_t>(order) * order - 1);
  for (int i = 0; i < order; ++i) {
    for (int j = i + 1; j < order; ++j) {
      Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(order, order);
      x(i, j) = inv_sqrt2;
      x(j, i) = inv_sqrt2;
      basis.push_back(x);
      Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(order, order);
      y(i, j) = Complex(0.0, -inv_sqrt2);
      y(j, i) = Complex(0.0, inv_sqrt2);
      basis.push_back(y);
    }
  }
  for (int k = 1; k < order; ++k) {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(order, order);
    double scale = 1.0 / std::sqrt(double(k) * (k + 1));
    for (int i = 0; i < k; ++i) d(i, i) = scale;
    d(k, k) = -double(k) * scale;
    basis.push_back(d);
  }
  return basis;
}

struct NodeData {
  Eigen::VectorXcd Z;  // curve components at the node
  Eigen::VectorXcd H;  // deflated tangent at the node
  double mu = 0.0;     // measure weight: flat weight * e^{2 theta} * density
};

// Measure data evaluated once per (atlas, measure, grid); Phi_a(P) for
// interior P then needs only dense linear algebra per node, because an
// invertible projectivity preserves branch locations and orders, so the
// projected tangent is P^T applied to the original deflated tangent.
struct Workspace {
  const CurveAtlas* atlas = nullptr;
  std::vector<NodeData> nodes;
  double mass = 0.0;
};

double measure_density(const MeasureSpec& measure, int chart_id, Complex w) {
  if (measure.kind == MeasureSpec::Kind::induced) return 1.0;
  if (!measure.density)
    throw std::invalid_argument("MeasureSpec: conformal_density without a density");
  double rho = measure.density(chart_id, w);
  if (!(rho > 0.0) || !std::isfinite(rho))
    throw std::invalid_argument("MeasureSpec: density must be positive and finite");
  return rho;
}

Workspace build_workspace(const CurveAtlas& atlas, const MeasureSpec& measure,
                          const QuadratureGrid& grid) {
  Workspace ws;
  ws.atlas = &atlas;
  ws.nodes.reserve(grid.nodes().size());
  std::vector<double> mass_terms;
  mass_terms.reserve(grid.nodes().size());
  for (const auto& nd : grid.nodes()) {
    const CurveChart& chart = atlas.chart(nd.chart_id);
    NodeData data;
    data.Z = chart.eval_components(nd.w);
    data.H = chart.eval_tangent(nd.w);
    data.mu = nd.weight * conformal_factor(chart, nd.w) *
              measure_density(measure, nd.chart_id, nd.w);
    mass_terms.push_back(data.mu);
    ws.nodes.push_back(std::move(data));
  }
  double mass = 0.0;
  for (size_t i = 0; i < mass_terms.size(); ++i) mass += mass_terms[i];
  ws.mass = mass;
  if (!(ws.mass > 0.0)) throw std::runtime_error("center_of_mass: measure has zero mass");
  return ws;
}

// Blocked pairwise accumulation of Hermitian node contributions.
class MatrixAccumulator {
 public:
  explicit MatrixAccumulator(int order)
      : block_(Eigen::MatrixXcd::Zero(order, order)), order_(order) {}

  void add(const Eigen::MatrixXcd& term) {
    block_ += term;
    if (++count_ == kBlock) flush();
  }

  Eigen::MatrixXcd total() {
    flush();
    while (blocks_.size() > 1) {
      std::vector<Eigen::MatrixXcd> merged;
      merged.reserve((blocks_.size() + 1) / 2);
      for (size_t i = 0; i + 1 < blocks_.size(); i += 2) merged.push_back(blocks_[i] + blocks_[i + 1]);
      if (blocks_.size() % 2 == 1) merged.push_back(blocks_.back());
      blocks_ = std::move(merged);
    }
    return blocks_.empty() ? Eigen::MatrixXcd::Zero(order_, order_) : blocks_[0];
  }

 private:
  static constexpr int kBlock = 256;
  void flush() {
    if (count_ == 0) return;
    blocks_.push_back(block_);
    block_.setZero();
    count_ = 0;
  }
  Eigen::MatrixXcd block_;
  std::vector<Eigen::MatrixXcd> blocks_;
  int count_ = 0;
  int order_ = 0;
};

// Phi_a(P) for invertible P via the cached workspace.
Eigen::MatrixXcd phi_interior(const Workspace& ws, const Eigen::MatrixXcd& P, double a) {
  const int order = static_cast<int>(P.rows());
  MatrixAccumulator acc(order);
  Eigen::MatrixXcd Pt = P.transpose();
  Eigen::VectorXcd v(order), h(order), c(order);
  Eigen::MatrixXcd term(order, order);
  for (const auto& nd : ws.nodes) {
    v.noalias() = Pt * nd.Z;
    double N = v.squaredNorm();
    term.noalias() = (v.conjugate() * v.transpose()) / N;  // A_P
    if (a != 0.0) {
      h.noalias() = Pt * nd.H;
      Complex r = v.dot(h);
      c.noalias() = h - (r / N) * v;
      double D = c.squaredNorm();
      term *= (1.0 - a);
      term.noalias() += (a / D) * (c.conjugate() * c.transpose());  // + a (A~ - A) folded in
    }
    acc.add(term * nd.mu);
  }
  return acc.total() / ws.mass;
}

// Phi_a(P) for boundary P of rank >= 2: evaluate on the reduced projected
// curve (reduction absorbs parameter values that fall into ker P).
Eigen::MatrixXcd phi_boundary(const CurveAtlas& atlas, const Workspace& ws,
                              const QuadratureGrid& grid, const Eigen::MatrixXcd& P,
                              double a) {
  std::vector<Polynomial> comps;
  const auto& orig = atlas.chart(0).components();
  const int order = static_cast<int>(orig.size());
  for (int k = 0; k < order; ++k) {
    std::vector<Complex> acc(static_cast<size_t>(atlas.degree()) + 1, Complex(0.0, 0.0));
    for (int j = 0; j < order; ++j) {
      const auto& cj = orig[j].coeffs();
      for (size_t i = 0; i < cj.size(); ++i) acc[i] += cj[i] * P(j, k);
    }
    comps.emplace_back(std::move(acc));
  }

  // Constant image (curve collapses to one point through P): defined for
  // a = 0 only.
  Eigen::MatrixXcd coef = Eigen::MatrixXcd::Zero(atlas.degree() + 1, order);
  for (int k = 0; k < order; ++k)
    for (size_t i = 0; i < comps[k].coeffs().size(); ++i)
      coef(static_cast<int>(i), k) = comps[k].coeffs()[i];
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(coef);
  double smax = svd.singularValues()(0);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-12 * std::max(smax, 1e-300)) ++rank;
  if (rank <= 1) {
    if (a != 0.0)
      throw std::domain_error(
          "center_of_mass: projected curve is constant; Gauss map undefined for a > 0");
    for (const auto& nd : ws.nodes) {
      Eigen::VectorXcd v = P.transpose() * nd.Z;
      if (v.squaredNorm() > 1e-20 * nd.Z.squaredNorm())
        return point_from_homogeneous(v).matrix();
    }
    throw std::runtime_error("center_of_mass: projected curve vanishes identically");
  }

  CurveAtlas proj(std::move(comps), atlas.name() + "_proj");
  MatrixAccumulator acc(order);
  size_t i = 0;
  for (const auto& nd : grid.nodes()) {
    const CurveChart& chart = proj.chart(nd.chart_id);
    Eigen::MatrixXcd term = eval_point(chart, nd.w).matrix();
    if (a != 0.0) term += a * eval_gauss(chart, nd.w);
    acc.add(term * ws.nodes[i++].mu);
  }
  return acc.total() / ws.mass;
}

Eigen::MatrixXcd finish_phi(Eigen::MatrixXcd phi) {
  phi = 0.5 * (phi + phi.adjoint().eval());
  double tr = phi.trace().real();
  if (std::abs(tr - 1.0) > 1e-10)
    throw std::logic_error("center_of_mass: trace drifted from 1");
  return phi;
}

}  // namespace

Eigen::MatrixXcd center_of_mass(const CurveAtlas& atlas, const MeasureSpec& measure,
                                const HermitianPoint& P, double a,
                                const QuadratureGrid& grid) {
  if (P.order() != atlas.dimension() + 1)
    throw std::invalid_argument("center_of_mass: order mismatch between P and curve");
  HullClassification cls = hull_classify(P);
  if (cls.tag == HullClassification::Tag::not_in_hull)
    throw std::invalid_argument("center_of_mass: P is not positive semidefinite");
  if (cls.rank == 1) {
    if (a != 0.0)
      throw std::domain_error("center_of_mass: rank-one P admits no continuous extension for a > 0");
    return P.matrix();
  }
  Workspace ws = build_workspace(atlas, measure, grid);
  if (cls.tag == HullClassification::Tag::interior)
    return finish_phi(phi_interior(ws, P.matrix(), a));
  return finish_phi(phi_boundary(atlas, ws, grid, P.matrix(), a));
}

BalanceResult balance(const CurveAtlas& atlas, const MeasureSpec& measure, double a,
                      double tol) {
  return balance(atlas, measure, a, tol, QuadratureGrid());
}

BalanceResult balance(const CurveAtlas& atlas, const MeasureSpec& measure, double a,
                      double tol, const QuadratureGrid& grid, const BalanceOptions& options) {
  const int n = atlas.dimension();
  if (n < 2) throw std::invalid_argument("balance: requires a curve in CP^n with n >= 2");
  if (!atlas.is_full()) throw std::invalid_argument("balance: curve must be full");
  if (a < 0.0) throw std::invalid_argument("balance: a must be nonnegative");
  if (a >= 0.5) throw std::domain_error("balance: a must satisfy a < 1/2");
  if (!(tol > 0.0)) throw std::invalid_argument("balance: tol must be positive");

  const int order = n + 1;
  const int m = order * order - 1;
  const std::vector<Eigen::MatrixXcd> basis = traceless_basis(order);
  const Eigen::MatrixXcd center = Eigen::MatrixXcd::Identity(order, order) / double(order);
  Workspace ws = build_workspace(atlas, measure, grid);

  auto compose = [&](const Eigen::VectorXd& s) {
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(order, order);
    for (int k = 0; k < m; ++k) S += s(k) * basis[k];
    return exp_normalize(TracelessHermitian(S)).matrix();
  };
  auto residual_vec = [&](const Eigen::MatrixXcd& P) {
    Eigen::MatrixXcd diff = phi_interior(ws, P, a) - center;
    Eigen::VectorXd r(m);
    for (int k = 0; k < m; ++k)
      r(k) = basis[k].cwiseProduct(diff.conjugate()).sum().real();
    return r;
  };
  auto min_eigenvalue = [](const Eigen::MatrixXcd& P) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(P, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  };

  Eigen::VectorXd s = Eigen::VectorXd::Zero(m);
  Eigen::MatrixXcd P = compose(s);
  Eigen::VectorXd r = residual_vec(P);
  const double sqrt2 = std::sqrt(2.0);
  double resid = sqrt2 * r.norm();  // Frobenius coordinates -> <,> norm

  BalanceResult result{HermitianPoint(P), resid, 0, false, {resid}};
  double lm = 1e-8;

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    if (resid < tol) {
      result.converged = true;
      break;
    }
    double h = options.fd_step * (1.0 + s.norm());
    Eigen::MatrixXd J(m, m);
    for (int k = 0; k < m; ++k) {
      Eigen::VectorXd sk = s;
      sk(k) += h;
      J.col(k) = (residual_vec(compose(sk)) - r) / h;
    }
    Eigen::MatrixXd JtJ = J.transpose() * J;
    Eigen::VectorXd Jtr = J.transpose() * r;

    bool accepted = false;
    for (int attempt = 0; attempt < 16 && !accepted; ++attempt) {
      Eigen::MatrixXd damped = JtJ;
      damped.diagonal().array() += lm;
      Eigen::VectorXd ds = damped.ldlt().solve(-Jtr);
      Eigen::VectorXd st = s + ds;
      try {
        Eigen::MatrixXcd Pt = compose(st);
        if (min_eigenvalue(Pt) < options.interior_floor) {
          lm *= 10.0;
          continue;
        }
        Eigen::VectorXd rt = residual_vec(Pt);
        if (rt.squaredNorm() < r.squaredNorm()) {
          s = st;
          P = Pt;
          r = rt;
          resid = sqrt2 * r.norm();
          lm = std::max(lm * 0.25, 1e-12);
          accepted = true;
        } else {
          lm *= 10.0;
        }
      } catch (const std::overflow_error&) {
        lm *= 10.0;
      }
    }
    if (!accepted) break;  // stalled; report best residual
    result.iterations = iter + 1;
    result.residual_history.push_back(resid);
  }
  if (resid < tol) result.converged = true;

  result.P = HermitianPoint(P);
  result.residual = resid;
  return result;
}

CurveAtlas project_curve(const CurveAtlas& atlas, const HermitianPoint& P) {
  if (P.order() != atlas.dimension() + 1)
    throw std::invalid_argument("project_curve: order mismatch between P and curve");
  if (psd_rank(P.matrix()) <= 1)
    throw std::invalid_argument("project_curve: rank of P must be at least 2");
  const auto& orig = atlas.chart(0).components();
  const int order = P.order();
  std::vector<Polynomial> comps;
  comps.reserve(orig.size());
  for (int k = 0; k < order; ++k) {
    std::vector<Complex> acc(static_cast<size_t>(atlas.degree()) + 1, Complex(0.0, 0.0));
    for (int j = 0; j < order; ++j) {
      const auto& cj = orig[j].coeffs();
      for (size_t i = 0; i < cj.size(); ++i) acc[i] += cj[i] * P.matrix()(j, k);
    }
    comps.emplace_back(std::move(acc));
  }
  return CurveAtlas(std::move(comps), atlas.name() + "_proj");
}

std::vector<Eigen::MatrixXcd> boundary_limit_experiment(const CurveAtlas& atlas, double a,
                                                        const std::vector<double>& eps_list,
                                                        const QuadratureGrid& grid) {
  const int order = atlas.dimension() + 1;
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(eps_list.size());
  for (double eps : eps_list) {
    if (!(eps > 0.0)) throw std::invalid_argument("boundary_limit_experiment: eps must be > 0");
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(order, order);
    p(0, 0) = 1.0 / (1.0 + eps);
    p(1, 1) = eps / (1.0 + eps);
    out.push_back(center_of_mass(atlas, MeasureSpec::induced(), HermitianPoint(p), a, grid));
  }
  return out;
}

}  // namespace eigenbound

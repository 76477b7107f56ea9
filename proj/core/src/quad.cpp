#include "eigenbound/quad.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace eigenbound {

namespace {

constexpr double kPi = std::numbers::pi;

// Pairwise (cascade) summation: error growth O(log n), order-stable.
template <typename T>
T pairwise_sum(std::vector<T>& terms, size_t lo, size_t hi) {
  if (hi - lo == 1) return terms[lo];
  size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(terms, lo, mid) + pairwise_sum(terms, mid, hi);
}

template <typename T>
T pairwise_sum(std::vector<T> terms) {
  if (terms.empty()) throw std::invalid_argument("pairwise_sum: empty");
  return pairwise_sum(terms, 0, terms.size());
}

double sigma_sq_at(const CurveChart& chart, Complex w, double rho) {
  Eigen::MatrixXcd dBx, dBy;
  gauss_derivatives(chart, w, dBx, dBy);
  double grad_b_flat = hm_inner(dBx, dBx) + hm_inner(dBy, dBy);
  return std::max(0.0, 0.5 * grad_b_flat / rho - 4.0);
}

}  // namespace

void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  // Golub-Welsch: eigen-decomposition of the symmetric Jacobi matrix.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    double b = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  nodes.resize(order);
  weights.resize(order);
  for (int k = 0; k < order; ++k) {
    nodes[k] = es.eigenvalues()(k);
    double v0 = es.eigenvectors()(0, k);
    weights[k] = 2.0 * v0 * v0;
  }
}

QuadratureGrid::QuadratureGrid(int radial_order, int angular_order)
    : radial_order_(radial_order), angular_order_(angular_order) {
  if (radial_order < 2 || angular_order < 4)
    throw std::invalid_argument("QuadratureGrid: orders too small");

  std::vector<double> rn, rw, tn, tw;
  gauss_legendre(radial_order, rn, rw);
  gauss_legendre(angular_order, tn, tw);

  // Irrational rotation so nodes avoid algebraic branch angles (e.g. the
  // real axis, where builtin branch locations live).
  const double offset = (std::sqrt(5.0) - 1.0) / 2.0;

  nodes_.reserve(2 * static_cast<size_t>(radial_order) * angular_order);
  for (int chart = 0; chart < 2; ++chart) {
    for (int i = 0; i < radial_order; ++i) {
      double r = 0.5 * (rn[i] + 1.0);     // [0, 1]
      double wr = 0.5 * rw[i];
      for (int j = 0; j < angular_order; ++j) {
        double t = kPi * (tn[j] + 1.0) + offset;  // [0, 2 pi) rotated
        double wt = kPi * tw[j];
        nodes_.push_back({chart, std::polar(r, t), wr * wt * r});
      }
    }
  }
}

double QuadratureGrid::flat_mass() const {
  std::vector<double> terms;
  terms.reserve(nodes_.size());
  for (const auto& nd : nodes_) terms.push_back(nd.weight);
  return pairwise_sum(std::move(terms));
}

double integrate(const CurveAtlas& atlas, const QuadratureGrid& grid,
                 const std::function<double(const CurveChart&, Complex)>& field) {
  std::vector<double> terms;
  terms.reserve(grid.nodes().size());
  for (const auto& nd : grid.nodes()) {
    const CurveChart& chart = atlas.chart(nd.chart_id);
    double rho = conformal_factor(chart, nd.w);
    terms.push_back(field(chart, nd.w) * rho * nd.weight);
  }
  return pairwise_sum(std::move(terms));
}

Eigen::MatrixXcd integrate_matrix(
    const CurveAtlas& atlas, const QuadratureGrid& grid,
    const std::function<Eigen::MatrixXcd(const CurveChart&, Complex)>& field) {
  std::vector<Eigen::MatrixXcd> terms;
  terms.reserve(grid.nodes().size());
  for (const auto& nd : grid.nodes()) {
    const CurveChart& chart = atlas.chart(nd.chart_id);
    double rho = conformal_factor(chart, nd.w);
    terms.push_back(field(chart, nd.w) * (rho * nd.weight));
  }
  return pairwise_sum(std::move(terms));
}

double curve_area(const CurveAtlas& atlas, const QuadratureGrid& grid) {
  return integrate(atlas, grid, [](const CurveChart&, Complex) { return 1.0; });
}

EnergyReport energy(const CurveAtlas& atlas, const QuadratureGrid& grid, double a) {
  EnergyReport rep;
  rep.a = a;
  rep.delta = atlas.delta();
  // |grad phi_a|^2 = (8 + 2 |sigma|^2) a^2 - 8 a + 2 pointwise.
  rep.numeric_energy = integrate(atlas, grid, [a](const CurveChart& chart, Complex w) {
    double rho = conformal_factor(chart, w);
    double s2 = sigma_sq_at(chart, w, rho);
    return (8.0 + 2.0 * s2) * a * a - 8.0 * a + 2.0;
  });
  double am1 = 2.0 * a - 1.0;
  rep.closed_form = 8.0 * kPi * atlas.degree() * (am1 * am1 + 2.0 * a * a * rep.delta);
  double denom = rep.closed_form != 0.0 ? std::abs(rep.closed_form) : 1.0;
  rep.rel_err = std::abs(rep.numeric_energy - rep.closed_form) / denom;
  return rep;
}

double sphere_radius_check(const CurveAtlas& atlas, double a, int sample_count) {
  if (sample_count < 1) throw std::invalid_argument("sphere_radius_check: sample_count >= 1");
  std::mt19937 rng(0x5eed5u);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const int n = atlas.dimension();
  const double expected = (2.0 * a - 1.0) * (2.0 * a - 1.0) + double(n - 1) / double(n + 1);
  const Eigen::MatrixXcd center =
      Eigen::MatrixXcd::Identity(n + 1, n + 1) / double(n + 1);

  double worst = 0.0;
  for (int s = 0; s < sample_count; ++s) {
    int chart_id = (s % 2 == 0) ? 0 : 1;
    const CurveChart& chart = atlas.chart(chart_id);
    Complex w;
    for (int tries = 0; tries < 256; ++tries) {
      w = std::polar(std::sqrt(unit(rng)), 2.0 * kPi * unit(rng));
      bool clear = true;
      for (const auto& bp : chart.branch_points())
        if (std::abs(w - bp.location) < 1e-3) clear = false;
      if (clear) break;
    }
    Eigen::MatrixXcd phi = eval_point(chart, w).matrix() + a * eval_gauss(chart, w) - center;
    worst = std::max(worst, std::abs(hm_inner(phi, phi) - expected));
  }
  return worst;
}

}  // namespace eigenbound

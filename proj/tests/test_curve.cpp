#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "eigenbound/curve.hpp"

using namespace eigenbound;
using Eigen::MatrixXcd;

namespace {

const Complex one(1.0, 0.0);

CurveAtlas cusp_cubic() {
  return CurveAtlas({Polynomial::monomial(0), Polynomial::monomial(2),
                     Polynomial::monomial(3)},
                    "cusp_cubic");
}

}  // namespace

TEST_CASE("rational normal curves are full, unbranched, degree n") {
  for (int n : {1, 2, 3, 5}) {
    CurveAtlas atlas = make_rational_normal_curve(n);
    CHECK(atlas.dimension() == n);
    CHECK(atlas.degree() == n);
    CHECK(atlas.genus() == 0);
    CHECK(atlas.total_branching() == 0);
    CHECK(atlas.is_full());
    CHECK(atlas.chart(0).branch_points().empty());
    CHECK(atlas.chart(1).branch_points().empty());
    CHECK(atlas.delta() == doctest::Approx(1.0 - 1.0 / n));
  }
}

TEST_CASE("cuspidal cubic has one branch point of order one") {
  CurveAtlas atlas = cusp_cubic();
  CHECK(atlas.degree() == 3);
  CHECK(atlas.dimension() == 2);
  REQUIRE(atlas.chart(0).branch_points().size() == 1);
  CHECK(std::abs(atlas.chart(0).branch_points()[0].location) < 1e-9);
  CHECK(atlas.chart(0).branch_points()[0].order == 1);
  CHECK(atlas.chart(1).branch_points().empty());
  CHECK(atlas.total_branching() == 1);
  CHECK(atlas.delta() == doctest::Approx(0.5));
}

TEST_CASE("higher-order branching is detected with its multiplicity") {
  // (1, w^3): derivative (0, 3w^2) vanishes to order 2 at w = 0 and the
  // reversed chart mirrors it at u = 0.
  CurveAtlas atlas({Polynomial({one}), Polynomial::monomial(3)}, "triple_cover");
  REQUIRE(atlas.chart(0).branch_points().size() == 1);
  CHECK(atlas.chart(0).branch_points()[0].order == 2);
  CHECK(atlas.total_branching() == 4);
  CHECK(atlas.delta() == doctest::Approx(0.0));
}

TEST_CASE("common polynomial factors are reduced away") {
  // (w, w^2) is the line parametrized with a base point; reduction gives
  // degree 1 with no branching.
  CurveAtlas atlas({Polynomial::monomial(1), Polynomial::monomial(2)}, "with_base_point");
  CHECK(atlas.degree() == 1);
  CHECK(atlas.total_branching() == 0);
}

TEST_CASE("constant and degenerate inputs are rejected") {
  CHECK_THROWS_AS(CurveAtlas({Polynomial({one}), Polynomial({2.0 * one})}, "const"),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_rational_normal_curve(0), std::invalid_argument);
  CHECK_THROWS_AS(make_rational_normal_curve(64), std::invalid_argument);
}

TEST_CASE("planar curve in larger ambient space is not full") {
  CurveAtlas atlas({Polynomial({one}), Polynomial::monomial(1), Polynomial()},
                   "planar_in_3");
  CHECK_FALSE(atlas.is_full());
  CHECK(make_rational_normal_curve(3).is_full());
}

TEST_CASE("charts agree on the gluing circle") {
  CurveAtlas atlas = cusp_cubic();
  for (double t : {0.3, 1.1, 2.9, 4.4}) {
    Complex w = std::polar(1.0, t);
    Complex u = 1.0 / w;
    auto a0 = eval_point(atlas.chart(0), w);
    auto a1 = eval_point(atlas.chart(1), u);
    CHECK(hm_norm(a0.matrix() - a1.matrix()) < 1e-12);
    MatrixXcd b0 = eval_gauss(atlas.chart(0), w);
    MatrixXcd b1 = eval_gauss(atlas.chart(1), u);
    CHECK(hm_norm(b0 - b1) < 1e-11);
  }
}

TEST_CASE("conic point and antipode at the origin") {
  CurveAtlas conic = make_rational_normal_curve(2);
  auto a = eval_point(conic.chart(0), Complex(0, 0));
  CHECK(std::abs(a.matrix()(0, 0) - one) < 1e-15);
  MatrixXcd b = eval_gauss(conic.chart(0), Complex(0, 0));
  // Tangent line at the origin is spanned by e0, e1: antipode is e1 e1^T.
  CHECK(std::abs(b(1, 1) - one) < 1e-14);
  CHECK(std::abs(b(0, 0) + one) < 1e-14);
  CHECK(std::abs(b.trace()) < 1e-14);
  CHECK(hm_inner(b, b) == doctest::Approx(4.0));
}

TEST_CASE("gauss map extends continuously through a branch point") {
  CurveAtlas atlas = cusp_cubic();
  MatrixXcd at_branch = eval_gauss(atlas.chart(0), Complex(0, 0));
  MatrixXcd nearby = eval_gauss(atlas.chart(0), Complex(1e-5, 1e-5));
  CHECK(hm_norm(at_branch - nearby) < 1e-3);
  // h = z'/w = (0, 2, 3w) at w = 0: the antipode within the tangent line.
  CHECK(std::abs(at_branch(1, 1) - one) < 1e-13);
}

TEST_CASE("conformal factor closed forms for the line and conic") {
  CurveAtlas line = make_rational_normal_curve(1);
  CurveAtlas conic = make_rational_normal_curve(2);
  for (double r : {0.0, 0.4, 0.9}) {
    Complex w = std::polar(r, 0.7);
    double s = 1.0 + r * r;
    CHECK(conformal_factor(line.chart(0), w) == doctest::Approx(4.0 / (s * s)));
    CHECK(conformal_factor(conic.chart(0), w) == doctest::Approx(8.0 / (s * s)));
  }
}

TEST_CASE("conformal factor vanishes quadratically at a cusp") {
  CurveAtlas atlas = cusp_cubic();
  double rho = conformal_factor(atlas.chart(0), Complex(1e-4, 0));
  CHECK(rho == doctest::Approx(16.0 * 1e-8).epsilon(1e-3));
}

TEST_CASE("curvature of the conic is constant one half") {
  CurveAtlas conic = make_rational_normal_curve(2);
  for (double t : {0.1, 1.3, 2.2}) {
    auto data = curvature_data(conic.chart(0), std::polar(0.5, t));
    CHECK(data.gauss_curvature == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(data.sigma_sq == doctest::Approx(1.0).epsilon(1e-10));
  }
  CurveAtlas line = make_rational_normal_curve(1);
  auto data = curvature_data(line.chart(0), Complex(0.2, 0.1));
  CHECK(data.gauss_curvature == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(data.sigma_sq == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("curvature data refuses branch points") {
  CurveAtlas atlas = cusp_cubic();
  CHECK_THROWS_AS(curvature_data(atlas.chart(0), Complex(0, 0)), std::invalid_argument);
}

TEST_CASE("laplacian route to the gauss map matches the antipode route") {
  for (const auto& [name, atlas] : builtin_test_curves()) {
    for (double t : {0.4, 1.9, 3.6}) {
      Complex w = std::polar(0.55, t);
      MatrixXcd from_laplacian = gauss_from_laplacian(atlas.chart(0), w);
      MatrixXcd direct = eval_gauss(atlas.chart(0), w);
      CHECK(hm_norm(from_laplacian - direct) < 1e-10);
    }
  }
}

TEST_CASE("closed-form point derivatives match finite differences") {
  CurveAtlas atlas = cusp_cubic();
  Complex w(0.4, -0.3);
  MatrixXcd dax, day;
  point_derivatives(atlas.chart(0), w, dax, day);
  double h = 1e-5;
  MatrixXcd fd_x = (eval_point(atlas.chart(0), w + h).matrix() -
                    eval_point(atlas.chart(0), w - h).matrix()) /
                   (2.0 * h);
  MatrixXcd fd_y = (eval_point(atlas.chart(0), w + Complex(0, h)).matrix() -
                    eval_point(atlas.chart(0), w - Complex(0, h)).matrix()) /
                   (2.0 * h);
  CHECK(hm_norm(dax - fd_x) < 1e-8);
  CHECK(hm_norm(day - fd_y) < 1e-8);
}

TEST_CASE("closed-form gauss derivatives match finite differences") {
  CurveAtlas atlas = make_rational_normal_curve(3);
  Complex w(0.25, 0.45);
  MatrixXcd dbx, dby;
  gauss_derivatives(atlas.chart(0), w, dbx, dby);
  double h = 1e-5;
  MatrixXcd fd_x =
      (eval_gauss(atlas.chart(0), w + h) - eval_gauss(atlas.chart(0), w - h)) / (2.0 * h);
  MatrixXcd fd_y = (eval_gauss(atlas.chart(0), w + Complex(0, h)) -
                    eval_gauss(atlas.chart(0), w - Complex(0, h))) /
                   (2.0 * h);
  CHECK(hm_norm(dbx - fd_x) < 1e-8);
  CHECK(hm_norm(dby - fd_y) < 1e-8);
}

TEST_CASE("builtin curve list carries the expected shapes") {
  auto curves = builtin_test_curves();
  REQUIRE(curves.size() == 5);
  CHECK(curves[0].first == "line");
  CHECK(curves[1].first == "conic");
  CHECK(curves[2].first == "cubic");
  CHECK(curves[3].first == "cusp_cubic");
  CHECK(curves[4].first == "asym_conic");
  CHECK(curves[4].second.degree() == 2);
  CHECK(curves[4].second.total_branching() == 0);
  // The reparametrized conic is the same projective curve at a moved point.
  auto round = eval_point(curves[1].second.chart(0), Complex(0.6, 0));
  auto stretched = eval_point(curves[4].second.chart(0), Complex(0.3, 0));
  CHECK(hm_norm(round.matrix() - stretched.matrix()) < 1e-13);
}

TEST_CASE("branch_orders matches the chart's branch list") {
  CurveAtlas atlas = cusp_cubic();
  auto orders = branch_orders(atlas.chart(0));
  REQUIRE(orders.size() == 1);
  CHECK(orders[0].second == 1);
}

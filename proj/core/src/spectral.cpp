#include "eigenbound/spectral.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>

#include "eigenbound/bounds.hpp"
#include "eigenbound/quad.hpp"

namespace eigenbound {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDensityFloor = 1e-14;

int mesh_dim(const TriangleMesh& mesh) {
  int dim = static_cast<int>(mesh.vertices.cols());
  if (dim != 2 && dim != 3) throw std::invalid_argument("mesh: vertices must be 2D or 3D");
  return dim;
}

// Corner positions of triangle t as 3D vectors (2D meshes get z = 0).
void triangle_corners(const TriangleMesh& mesh, int t, Eigen::Vector3d corners[3]) {
  const int dim = static_cast<int>(mesh.vertices.cols());
  for (int k = 0; k < 3; ++k) {
    corners[k].setZero();
    if (mesh.corner_coords.size() > 0) {
      for (int c = 0; c < dim; ++c) corners[k](c) = mesh.corner_coords(t, k * dim + c);
    } else {
      int v = mesh.triangles(t, k);
      for (int c = 0; c < dim; ++c) corners[k](c) = mesh.vertices(v, c);
    }
  }
}

double vertex_density(const TriangleMesh& mesh, int v) {
  if (mesh.density.size() == 0) return 1.0;
  return std::max(mesh.density(v), kDensityFloor);
}

}  // namespace

void validate_mesh(const TriangleMesh& mesh) {
  mesh_dim(mesh);
  const int nv = static_cast<int>(mesh.vertices.rows());
  const int nt = static_cast<int>(mesh.triangles.rows());
  if (nv < 3 || nt < 2) throw std::invalid_argument("mesh: too small");
  if (mesh.density.size() != 0 && mesh.density.size() != nv)
    throw std::invalid_argument("mesh: density size mismatch");
  if (mesh.corner_coords.size() != 0 &&
      (mesh.corner_coords.rows() != nt ||
       mesh.corner_coords.cols() != 3 * mesh.vertices.cols()))
    throw std::invalid_argument("mesh: corner_coords size mismatch");

  std::map<std::pair<int, int>, int> directed;
  for (int t = 0; t < nt; ++t) {
    int idx[3] = {mesh.triangles(t, 0), mesh.triangles(t, 1), mesh.triangles(t, 2)};
    for (int k = 0; k < 3; ++k) {
      if (idx[k] < 0 || idx[k] >= nv) throw std::invalid_argument("mesh: vertex index range");
      if (idx[k] == idx[(k + 1) % 3]) throw std::invalid_argument("mesh: degenerate triangle");
      directed[{idx[k], idx[(k + 1) % 3]}] += 1;
    }
    Eigen::Vector3d corners[3];
    triangle_corners(mesh, t, corners);
    double area = 0.5 * ((corners[1] - corners[0]).cross(corners[2] - corners[0])).norm();
    double longest = std::max({(corners[1] - corners[0]).norm(), (corners[2] - corners[1]).norm(),
                               (corners[0] - corners[2]).norm()});
    if (!(area > 1e-12 * longest * longest))
      throw std::invalid_argument("mesh: degenerate (near-zero area) triangle");
  }
  for (const auto& [edge, count] : directed) {
    if (count != 1)
      throw std::invalid_argument("mesh: directed edge repeated (orientation broken)");
    if (directed.find({edge.second, edge.first}) == directed.end())
      throw std::invalid_argument("mesh: boundary edge found (mesh not closed)");
  }
}

TriangleMesh build_icosphere(int level) {
  if (level < 0 || level > 7) throw std::invalid_argument("build_icosphere: level in [0, 7]");

  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Eigen::Vector3d> verts = {
      {-1, phi, 0}, {1, phi, 0},   {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi},   {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1},   {-phi, 0, -1}, {-phi, 0, 1}};
  for (auto& v : verts) v.normalize();
  std::vector<std::array<int, 3>> faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};

  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      Eigen::Vector3d m = (verts[a] + verts[b]).normalized();
      verts.push_back(m);
      int idx = static_cast<int>(verts.size()) - 1;
      midpoint[key] = idx;
      return idx;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      int a = mid(f[0], f[1]), b = mid(f[1], f[2]), c = mid(f[2], f[0]);
      next.push_back({f[0], a, c});
      next.push_back({f[1], b, a});
      next.push_back({f[2], c, b});
      next.push_back({a, b, c});
    }
    faces = std::move(next);
  }

  TriangleMesh mesh;
  mesh.vertices.resize(static_cast<int>(verts.size()), 3);
  for (size_t i = 0; i < verts.size(); ++i) mesh.vertices.row(static_cast<int>(i)) = verts[i];
  mesh.triangles.resize(static_cast<int>(faces.size()), 3);
  for (size_t i = 0; i < faces.size(); ++i)
    mesh.triangles.row(static_cast<int>(i)) << faces[i][0], faces[i][1], faces[i][2];
  return mesh;
}

TriangleMesh build_flat_torus(const Eigen::Vector2d& b1, const Eigen::Vector2d& b2, int grid) {
  if (grid < 8) throw std::invalid_argument("build_flat_torus: grid >= 8");
  double det = b1.x() * b2.y() - b1.y() * b2.x();
  if (std::abs(det) < 1e-12 * std::max(b1.norm() * b2.norm(), 1e-300))
    throw std::invalid_argument("build_flat_torus: basis degenerate");

  const int m = grid;
  TriangleMesh mesh;
  mesh.vertices.resize(m * m, 2);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      mesh.vertices.row(i * m + j) = (double(i) / m) * b1 + (double(j) / m) * b2;

  mesh.triangles.resize(2 * m * m, 3);
  mesh.corner_coords.resize(2 * m * m, 6);
  auto vid = [m](int i, int j) { return ((i % m + m) % m) * m + ((j % m + m) % m); };
  auto pos = [&](int i, int j) -> Eigen::Vector2d {
    return (double(i) / m) * b1 + (double(j) / m) * b2;
  };
  int t = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      auto emit = [&](int i0, int j0, int i1, int j1, int i2, int j2) {
        mesh.triangles.row(t) << vid(i0, j0), vid(i1, j1), vid(i2, j2);
        mesh.corner_coords.row(t) << pos(i0, j0).transpose(), pos(i1, j1).transpose(),
            pos(i2, j2).transpose();
        ++t;
      };
      emit(i, j, i + 1, j, i + 1, j + 1);
      emit(i, j, i + 1, j + 1, i, j + 1);
    }
  }
  return mesh;
}

SpectrumReport lambda1_area(const TriangleMesh& mesh) {
  validate_mesh(mesh);
  const int nv = static_cast<int>(mesh.vertices.rows());
  const int nt = static_cast<int>(mesh.triangles.rows());

  // Cotangent stiffness (conformally invariant: no density) and lumped
  // barycentric mass (carries the density).
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<size_t>(nt) * 12);
  Eigen::VectorXd mass = Eigen::VectorXd::Zero(nv);
  for (int t = 0; t < nt; ++t) {
    Eigen::Vector3d c[3];
    triangle_corners(mesh, t, c);
    int idx[3] = {mesh.triangles(t, 0), mesh.triangles(t, 1), mesh.triangles(t, 2)};
    double area = 0.5 * ((c[1] - c[0]).cross(c[2] - c[0])).norm();
    for (int k = 0; k < 3; ++k) {
      int i = (k + 1) % 3, j = (k + 2) % 3;
      Eigen::Vector3d e1 = c[i] - c[k], e2 = c[j] - c[k];
      double cot = e1.dot(e2) / (2.0 * area);
      double w = 0.5 * cot;
      trips.emplace_back(idx[i], idx[i], w);
      trips.emplace_back(idx[j], idx[j], w);
      trips.emplace_back(idx[i], idx[j], -w);
      trips.emplace_back(idx[j], idx[i], -w);
      mass(idx[k]) += area / 3.0 * vertex_density(mesh, idx[k]);
    }
  }
  Eigen::SparseMatrix<double> K(nv, nv);
  K.setFromTriplets(trips.begin(), trips.end());

  double total_mass = mass.sum();
  if (!(total_mass > 0.0)) throw std::runtime_error("lambda1_area: nonpositive total mass");

  // Shift-inverted block iteration with Rayleigh-Ritz extraction; constants
  // are removed in the M-inner product.
  const int block = std::min(8, nv - 1);
  double scale = K.diagonal().sum() / total_mass;
  double sigma = std::max(1e-10 * scale, 1e-300);
  Eigen::SparseMatrix<double> shifted = K;
  for (int v = 0; v < nv; ++v) shifted.coeffRef(v, v) += sigma * mass(v);
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(shifted);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("lambda1_area: factorization failed");

  std::mt19937 rng(0x1c05au);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd X(nv, block);
  for (int j = 0; j < block; ++j)
    for (int i = 0; i < nv; ++i) X(i, j) = gauss(rng);

  auto deflate = [&](Eigen::MatrixXd& Y) {
    for (int j = 0; j < Y.cols(); ++j) {
      double mean = mass.dot(Y.col(j)) / total_mass;
      Y.col(j).array() -= mean;
    }
  };
  auto m_orthonormalize = [&](Eigen::MatrixXd& Y) {
    for (int j = 0; j < Y.cols(); ++j) {
      for (int p = 0; p < j; ++p) {
        double proj = (Y.col(p).array() * mass.array() * Y.col(j).array()).sum();
        Y.col(j) -= proj * Y.col(p);
      }
      double nrm = std::sqrt((Y.col(j).array() * mass.array() * Y.col(j).array()).sum());
      if (nrm > 1e-300) Y.col(j) /= nrm;
    }
  };

  deflate(X);
  Eigen::VectorXd ritz = Eigen::VectorXd::Zero(block);
  double last = -1.0;
  for (int iter = 0; iter < 400; ++iter) {
    Eigen::MatrixXd Y(nv, block);
    for (int j = 0; j < block; ++j)
      Y.col(j) = solver.solve((mass.array() * X.col(j).array()).matrix());
    deflate(Y);
    m_orthonormalize(Y);

    Eigen::MatrixXd A(block, block), B(block, block);
    Eigen::MatrixXd KY = K * Y;
    for (int p = 0; p < block; ++p)
      for (int q = 0; q < block; ++q) {
        A(p, q) = Y.col(p).dot(KY.col(q));
        B(p, q) = (Y.col(p).array() * mass.array() * Y.col(q).array()).sum();
      }
    A = 0.5 * (A + A.transpose()).eval();
    B = 0.5 * (B + B.transpose()).eval();
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(A, B);
    if (ges.info() != Eigen::Success)
      throw std::runtime_error("lambda1_area: Rayleigh-Ritz extraction failed");
    ritz = ges.eigenvalues();
    X = Y * ges.eigenvectors();
    // Normalize columns to keep the iteration well scaled.
    for (int j = 0; j < block; ++j) {
      double nrm = X.col(j).norm();
      if (nrm > 0.0) X.col(j) /= nrm;
    }
    if (iter >= 3 && std::abs(ritz(0) - last) <= 1e-12 * std::max(ritz(0), 1e-30)) break;
    last = ritz(0);
  }

  SpectrumReport rep;
  rep.lambda1 = ritz(0);
  rep.area = total_mass;
  rep.product = rep.lambda1 * rep.area;
  rep.mesh_size = nv;
  int keep = std::min<int>(6, block);
  rep.low_eigenvalues.assign(ritz.data(), ritz.data() + keep);
  if (!(rep.lambda1 > 0.0)) throw std::runtime_error("lambda1_area: first eigenvalue not positive");
  return rep;
}

CurveBoundReport verify_bound_on_curve(const CurveAtlas& atlas, double a, int mesh_level) {
  if (a < 0.0 || a > 0.5)
    throw std::invalid_argument("verify_bound_on_curve: a in [0, 1/2]");

  TriangleMesh mesh = build_icosphere(mesh_level);
  const int nv = static_cast<int>(mesh.vertices.rows());
  mesh.density.resize(nv);
  for (int v = 0; v < nv; ++v) {
    double x = mesh.vertices(v, 0), y = mesh.vertices(v, 1), z = mesh.vertices(v, 2);
    int chart_id;
    Complex w;
    if (z <= 0.0) {
      chart_id = 0;
      w = Complex(x, y) / (1.0 - z);
    } else {
      chart_id = 1;
      w = Complex(x, -y) / (1.0 + z);
    }
    double rho = conformal_factor(atlas.chart(chart_id), w);
    double r2 = std::norm(w);
    mesh.density(v) = std::max(rho * (1.0 + r2) * (1.0 + r2) / 4.0, kDensityFloor);
  }

  SpectrumReport spec = lambda1_area(mesh);

  CurveBoundReport rep;
  rep.n = atlas.dimension();
  rep.d = atlas.degree();
  rep.delta = atlas.delta();
  rep.a = a;
  rep.lambda1 = spec.lambda1;
  rep.area = spec.area;
  rep.product = spec.product;
  rep.margin = 0.02;

  if (rep.n >= 2) {
    rep.bound_at_a = bound_F(rep.n, rep.d, rep.delta, a);
    auto [best_a, best] = minimize_F(rep.n, rep.d, rep.delta);
    rep.best_a = best_a;
    rep.best_bound = best;
  } else {
    // In a projective line the test-map family reduces to radius-(2a-1)^2
    // spheres and the bound is 8 pi d at every a.
    rep.bound_at_a = 8.0 * kPi * rep.d;
    rep.best_bound = rep.bound_at_a;
    rep.best_a = a;
  }

  QuadratureGrid grid;
  double c = double(rep.n - 1) / double(rep.n + 1);
  double denom = (2.0 * a - 1.0) * (2.0 * a - 1.0) + c;
  rep.rayleigh_quotient = denom > 1e-15
                              ? energy(atlas, grid, a).numeric_energy / denom
                              : std::numeric_limits<double>::quiet_NaN();
  rep.inequality_ok = rep.product <= rep.best_bound * (1.0 + rep.margin);
  return rep;
}

}  // namespace eigenbound

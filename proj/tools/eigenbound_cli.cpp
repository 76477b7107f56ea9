// eigenbound: command-line surface over the library modules.
//
// Subcommands
//   bounds        genus table of eigenvalue bounds (CSV or JSON)
//   verify-curve  identity report for a curve description file
//   balance       solve the center-of-mass equation for a projectivity
//   spectral      discrete lambda_1 * Area on reference surfaces or a curve
//   asymptotic    large-genus limit of the bound per unit genus
//
// Exit status: 0 success, 1 verification failure, 2 usage or input error.
// Output is deterministic for a fixed flag set (fixed seeds and offsets).

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eigenbound/balance.hpp"
#include "eigenbound/bounds.hpp"
#include "eigenbound/curve.hpp"
#include "eigenbound/curve_io.hpp"
#include "eigenbound/matspace.hpp"
#include "eigenbound/quad.hpp"
#include "eigenbound/spectral.hpp"

namespace {

using eigenbound::Complex;
using eigenbound::CurveAtlas;
using nlohmann::json;

constexpr double kPi = std::numbers::pi;

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void emit(const std::string& output_path, const std::string& text) {
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path);
  if (!out) throw std::invalid_argument("cannot open output file " + output_path);
  out << text;
}

// ---------------------------------------------------------------------------
// bounds

struct BoundsConfig {
  long long g_min = 3;
  long long g_max = 100;
  long long n_max = 0;
  long long d_span = 50;
  std::string format = "csv";
  std::string output;
};

int run_bounds(const BoundsConfig& cfg) {
  if (cfg.g_min < 3 || cfg.g_max < cfg.g_min)
    throw std::invalid_argument("bounds: need 3 <= g-min <= g-max");

  std::vector<eigenbound::BoundResult> rows;
  std::vector<long long> genera;
  for (long long g = cfg.g_min; g <= cfg.g_max; ++g) {
    rows.push_back(eigenbound::lambda1_bound(g, cfg.n_max, cfg.d_span));
    genera.push_back(g);
  }

  std::ostringstream os;
  if (cfg.format == "csv") {
    os << "# eigenbound bounds v1\n";
    os << "# ratio_to_g = bound / (pi * g); bound_over_pi = bound / pi;"
          " yang_yau_over_pi = floor((g+3)/2) * 8\n";
    os << "g,bound_over_pi,a_star,n_star,d_star,yang_yau_over_pi,ratio_to_g\n";
    for (size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      os << genera[i] << ',' << num(r.value_over_pi) << ',' << num(r.a_star) << ','
         << r.n_star << ',' << r.d_star << ',' << num(r.baseline_yy / kPi) << ','
         << num(r.value / (kPi * static_cast<double>(genera[i]))) << '\n';
    }
  } else {
    json doc;
    doc["schema"] = 1;
    doc["command"] = "bounds";
    json jrows = json::array();
    for (size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      json row;
      row["g"] = genera[i];
      row["bound"] = r.value;
      row["bound_over_pi"] = r.value_over_pi;
      row["a_star"] = r.a_star;
      row["n_star"] = r.n_star;
      row["d_star"] = r.d_star;
      row["yang_yau_over_pi"] = r.baseline_yy / kPi;
      row["ratio_to_g"] = r.value / (kPi * static_cast<double>(genera[i]));
      row["dominates_yang_yau"] = r.dominates_baseline;
      if (r.exact.valid) row["exact"] = r.exact.text;
      jrows.push_back(std::move(row));
    }
    doc["rows"] = std::move(jrows);
    os << doc.dump(2) << '\n';
  }
  emit(cfg.output, os.str());
  return 0;
}

// ---------------------------------------------------------------------------
// verify-curve

struct VerifyConfig {
  std::string curve_path;
  int radial_order = 64;
  int angular_order = 128;
  std::string output;
};

struct CheckLine {
  std::string name;
  double measured = 0.0;
  double expected = 0.0;
  double err = 0.0;
  double tol = 0.0;
  bool pass = false;
};

CheckLine rel_check(const std::string& name, double measured, double expected, double tol,
                    double zero_scale) {
  CheckLine c;
  c.name = name;
  c.measured = measured;
  c.expected = expected;
  double denom = std::abs(expected) > 1e-12 ? std::abs(expected) : zero_scale;
  c.err = std::abs(measured - expected) / denom;
  c.tol = tol;
  c.pass = c.err <= tol;
  return c;
}

CheckLine abs_check(const std::string& name, double measured, double tol) {
  CheckLine c;
  c.name = name;
  c.measured = measured;
  c.expected = 0.0;
  c.err = std::abs(measured);
  c.tol = tol;
  c.pass = c.err <= tol;
  return c;
}

// Deterministic unbranched sample points in the chart-0 disk.
std::vector<Complex> sample_points(const CurveAtlas& atlas, int count) {
  std::mt19937 rng(0xc0ffeeu);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const auto& branches = atlas.chart(0).branch_points();
  std::vector<Complex> pts;
  while (static_cast<int>(pts.size()) < count) {
    double r = 0.15 + 0.75 * std::sqrt(unif(rng));
    double t = 2.0 * kPi * unif(rng);
    Complex w = std::polar(r, t);
    bool clear = true;
    for (const auto& b : branches)
      if (std::abs(w - b.location) < 0.2) clear = false;
    if (clear) pts.push_back(w);
  }
  return pts;
}

int run_verify_curve(const VerifyConfig& cfg) {
  CurveAtlas atlas = eigenbound::load_curve(cfg.curve_path);
  eigenbound::QuadratureGrid grid(cfg.radial_order, cfg.angular_order);

  const int n = atlas.dimension();
  const int d = atlas.degree();
  const int b = atlas.total_branching();
  const int g = atlas.genus();
  const double area_scale = 4.0 * kPi * d;

  std::vector<CheckLine> checks;

  double area = eigenbound::curve_area(atlas, grid);
  checks.push_back(rel_check("area_equals_4_pi_d", area, area_scale, 1e-5, area_scale));

  double total_k = eigenbound::integrate(
      atlas, grid, [](const eigenbound::CurveChart& chart, Complex w) {
        return eigenbound::curvature_data(chart, w).gauss_curvature;
      });
  checks.push_back(rel_check("gauss_bonnet", total_k, 2.0 * kPi * (2 - 2 * g + b), 1e-5,
                             area_scale));

  double total_sigma = eigenbound::integrate(
      atlas, grid, [](const eigenbound::CurveChart& chart, Complex w) {
        return eigenbound::curvature_data(chart, w).sigma_sq;
      });
  checks.push_back(rel_check("sigma_sq_integral", total_sigma,
                             8.0 * kPi * (g + d - 1 - 0.5 * b), 1e-5, area_scale));

  for (double a : {0.0, 0.1, 0.25, 0.49, 0.5}) {
    auto rep = eigenbound::energy(atlas, grid, a);
    checks.push_back(rel_check("energy_a=" + num(a), rep.numeric_energy, rep.closed_form,
                               1e-6, area_scale));
  }

  for (double a : {0.0, 0.25, 0.49})
    checks.push_back(abs_check("sphere_radius_a=" + num(a),
                               eigenbound::sphere_radius_check(atlas, a, 100), 1e-8));

  // Pointwise identities of the matrix model at unbranched samples: norms and
  // pairings of I, A, B, and the Laplacian route to the Gauss map.
  {
    auto pts = sample_points(atlas, 50);
    const auto& chart = atlas.chart(0);
    Eigen::MatrixXcd id_mat = Eigen::MatrixXcd::Identity(n + 1, n + 1);
    double worst_table = 0.0;
    double worst_laplace = 0.0;
    for (Complex w : pts) {
      auto data = eigenbound::curvature_data(chart, w);
      const auto& A = data.A;
      const auto& B = data.B;
      auto pair_err = [&](const Eigen::MatrixXcd& X, const Eigen::MatrixXcd& Y,
                          double expected) {
        return std::abs(eigenbound::hm_inner(X, Y) - expected);
      };
      worst_table = std::max({worst_table,
                              pair_err(id_mat, id_mat, 2.0 * (n + 1)),
                              pair_err(A, id_mat, 2.0),
                              pair_err(A, A, 2.0),
                              pair_err(B, id_mat, 0.0),
                              pair_err(B, A, -2.0),
                              pair_err(B, B, 4.0)});
      Eigen::MatrixXcd from_laplacian = eigenbound::gauss_from_laplacian(chart, w);
      worst_laplace =
          std::max(worst_laplace, eigenbound::hm_norm(from_laplacian - B));
    }
    checks.push_back(abs_check("pointwise_pairing_table", worst_table, 1e-7));
    checks.push_back(abs_check("gauss_map_is_laplacian", worst_laplace, 1e-7));
  }

  std::ostringstream os;
  os << "curve " << (atlas.name().empty() ? cfg.curve_path : atlas.name()) << ": n=" << n
     << " d=" << d << " b=" << b << " delta=" << num(atlas.delta()) << '\n';
  bool all_pass = true;
  for (const auto& c : checks) {
    all_pass = all_pass && c.pass;
    os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": measured " << num(c.measured)
       << " expected " << num(c.expected) << " (err " << num(c.err) << ", tol "
       << num(c.tol) << ")\n";
  }
  os << (all_pass ? "ALL CHECKS PASS\n" : "CHECK FAILURES PRESENT\n");
  emit(cfg.output, os.str());
  return all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// balance

struct BalanceConfig {
  std::string curve_path;
  double a = 0.0;
  double tol = 1e-8;
  int radial_order = 64;
  int angular_order = 128;
  int max_iter = 500;
  std::string output;
};

int run_balance(const BalanceConfig& cfg) {
  CurveAtlas atlas = eigenbound::load_curve(cfg.curve_path);
  eigenbound::QuadratureGrid grid(cfg.radial_order, cfg.angular_order);
  eigenbound::BalanceOptions options;
  options.tol = cfg.tol;
  options.max_iterations = cfg.max_iter;
  auto result = eigenbound::balance(atlas, eigenbound::MeasureSpec::induced(), cfg.a,
                                    cfg.tol, grid, options);

  json doc;
  doc["schema"] = 1;
  doc["command"] = "balance";
  doc["curve"] = atlas.name().empty() ? cfg.curve_path : atlas.name();
  doc["a"] = cfg.a;
  doc["tol"] = cfg.tol;
  doc["converged"] = result.converged;
  doc["iterations"] = result.iterations;
  doc["residual"] = result.residual;
  json p_rows = json::array();
  const auto& P = result.P.matrix();
  for (Eigen::Index i = 0; i < P.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < P.cols(); ++j)
      row.push_back({P(i, j).real(), P(i, j).imag()});
    p_rows.push_back(std::move(row));
  }
  doc["P"] = std::move(p_rows);
  emit(cfg.output, doc.dump(2) + "\n");
  return result.converged ? 0 : 1;
}

// ---------------------------------------------------------------------------
// spectral

struct SpectralConfig {
  int level = 5;
  int grid = 64;
  std::string basis = "1,0,0.5,0.8660254037844386";
  std::string curve_path;
  double a = 0.2;
  std::string output;
};

json spectrum_json(const eigenbound::SpectrumReport& rep) {
  json doc;
  doc["lambda1"] = rep.lambda1;
  doc["area"] = rep.area;
  doc["product"] = rep.product;
  doc["product_over_pi"] = rep.product / kPi;
  doc["mesh_size"] = rep.mesh_size;
  doc["low_eigenvalues"] = rep.low_eigenvalues;
  return doc;
}

int run_spectral_sphere(const SpectralConfig& cfg) {
  auto rep = eigenbound::lambda1_area(eigenbound::build_icosphere(cfg.level));
  json doc = spectrum_json(rep);
  doc["schema"] = 1;
  doc["command"] = "spectral";
  doc["surface"] = "sphere";
  doc["level"] = cfg.level;
  emit(cfg.output, doc.dump(2) + "\n");
  return 0;
}

int run_spectral_torus(const SpectralConfig& cfg) {
  std::vector<double> vals;
  std::stringstream ss(cfg.basis);
  std::string item;
  while (std::getline(ss, item, ',')) vals.push_back(std::stod(item));
  if (vals.size() != 4)
    throw std::invalid_argument("spectral torus: --basis needs b1x,b1y,b2x,b2y");
  auto rep = eigenbound::lambda1_area(eigenbound::build_flat_torus(
      Eigen::Vector2d(vals[0], vals[1]), Eigen::Vector2d(vals[2], vals[3]), cfg.grid));
  json doc = spectrum_json(rep);
  doc["schema"] = 1;
  doc["command"] = "spectral";
  doc["surface"] = "torus";
  doc["basis"] = vals;
  doc["grid"] = cfg.grid;
  emit(cfg.output, doc.dump(2) + "\n");
  return 0;
}

int run_spectral_curve(const SpectralConfig& cfg) {
  CurveAtlas atlas = eigenbound::load_curve(cfg.curve_path);
  auto rep = eigenbound::verify_bound_on_curve(atlas, cfg.a, cfg.level);
  json doc;
  doc["schema"] = 1;
  doc["command"] = "spectral";
  doc["surface"] = "curve";
  doc["curve"] = atlas.name().empty() ? cfg.curve_path : atlas.name();
  doc["level"] = cfg.level;
  doc["n"] = rep.n;
  doc["d"] = rep.d;
  doc["delta"] = rep.delta;
  doc["a"] = rep.a;
  doc["lambda1"] = rep.lambda1;
  doc["area"] = rep.area;
  doc["product"] = rep.product;
  doc["product_over_pi"] = rep.product / kPi;
  doc["bound_at_a"] = rep.bound_at_a;
  doc["best_bound"] = rep.best_bound;
  doc["best_a"] = rep.best_a;
  doc["rayleigh_quotient"] = rep.rayleigh_quotient;
  doc["margin"] = rep.margin;
  doc["inequality_ok"] = rep.inequality_ok;
  emit(cfg.output, doc.dump(2) + "\n");
  return rep.inequality_ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// asymptotic

int run_asymptotic(const std::string& output) {
  auto [a_min, value] = eigenbound::minimize_G();
  json doc;
  doc["schema"] = 1;
  doc["command"] = "asymptotic";
  doc["a_min"] = a_min;
  doc["value"] = value;
  doc["limit_over_pi"] = value / kPi;
  doc["closed_form"] = "4*(3 - sqrt(5))*pi per unit genus";
  emit(output, doc.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"eigenvalue bounds for complex curves in projective space"};
  app.require_subcommand(1);

  std::function<int()> runner;

  BoundsConfig bounds_cfg;
  auto* bounds = app.add_subcommand("bounds", "genus table of eigenvalue bounds");
  bounds->add_option("--g-min", bounds_cfg.g_min, "first genus (>= 3)");
  bounds->add_option("--g-max", bounds_cfg.g_max, "last genus");
  bounds->add_option("--n-max", bounds_cfg.n_max, "cap on ambient dimension (0 = auto)");
  bounds->add_option("--d-span", bounds_cfg.d_span, "degree scan span above d(g,n)");
  bounds->add_option("--format", bounds_cfg.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  bounds->add_option("-o,--output", bounds_cfg.output, "output file (default stdout)");
  bounds->callback([&]() { runner = [&]() { return run_bounds(bounds_cfg); }; });

  VerifyConfig verify_cfg;
  auto* verify = app.add_subcommand("verify-curve", "identity report for a curve file");
  verify->add_option("--curve", verify_cfg.curve_path, "curve JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  verify->add_option("--radial-order", verify_cfg.radial_order, "radial quadrature order");
  verify->add_option("--angular-order", verify_cfg.angular_order,
                     "angular quadrature order");
  verify->add_option("-o,--output", verify_cfg.output, "output file (default stdout)");
  verify->callback([&]() { runner = [&]() { return run_verify_curve(verify_cfg); }; });

  BalanceConfig balance_cfg;
  auto* bal = app.add_subcommand("balance", "balance the center of mass by a projectivity");
  bal->add_option("--curve", balance_cfg.curve_path, "curve JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  bal->add_option("--a", balance_cfg.a, "test-map parameter in [0, 1/2)");
  bal->add_option("--tol", balance_cfg.tol, "residual tolerance")
      ->check(CLI::PositiveNumber);
  bal->add_option("--max-iter", balance_cfg.max_iter, "iteration cap")
      ->check(CLI::PositiveNumber);
  bal->add_option("--radial-order", balance_cfg.radial_order, "radial quadrature order");
  bal->add_option("--angular-order", balance_cfg.angular_order,
                  "angular quadrature order");
  bal->add_option("-o,--output", balance_cfg.output, "output file (default stdout)");
  bal->callback([&]() { runner = [&]() { return run_balance(balance_cfg); }; });

  SpectralConfig spectral_cfg;
  auto* spectral = app.add_subcommand("spectral", "discrete lambda_1 * Area");
  spectral->require_subcommand(1);
  auto* sphere = spectral->add_subcommand("sphere", "icosphere reference value");
  sphere->add_option("--level", spectral_cfg.level, "subdivision level")
      ->check(CLI::Range(0, 7));
  sphere->add_option("-o,--output", spectral_cfg.output, "output file (default stdout)");
  sphere->callback([&]() { runner = [&]() { return run_spectral_sphere(spectral_cfg); }; });
  auto* torus = spectral->add_subcommand("torus", "flat torus reference value");
  torus->add_option("--basis", spectral_cfg.basis, "lattice basis b1x,b1y,b2x,b2y");
  torus->add_option("--grid", spectral_cfg.grid, "grid subdivisions per direction")
      ->check(CLI::Range(8, 512));
  torus->add_option("-o,--output", spectral_cfg.output, "output file (default stdout)");
  torus->callback([&]() { runner = [&]() { return run_spectral_torus(spectral_cfg); }; });
  auto* curve = spectral->add_subcommand("curve", "induced metric of a curve file");
  curve->add_option("--curve", spectral_cfg.curve_path, "curve JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  curve->add_option("--a", spectral_cfg.a, "test-map parameter in [0, 1/2]");
  curve->add_option("--level", spectral_cfg.level, "mesh subdivision level")
      ->check(CLI::Range(0, 7));
  curve->add_option("-o,--output", spectral_cfg.output, "output file (default stdout)");
  curve->callback([&]() { runner = [&]() { return run_spectral_curve(spectral_cfg); }; });

  std::string asymptotic_output;
  auto* asym = app.add_subcommand("asymptotic", "large-genus limit per unit genus");
  asym->add_option("-o,--output", asymptotic_output, "output file (default stdout)");
  asym->callback([&]() { runner = [&]() { return run_asymptotic(asymptotic_output); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (!runner) {
    std::cerr << "no subcommand selected\n";
    return 2;
  }
  try {
    return runner();
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

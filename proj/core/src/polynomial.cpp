#include "eigenbound/polynomial.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eigenbound {

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  drop_exact_zero_tail();
}

Polynomial Polynomial::monomial(int power, Complex scale) {
  if (power < 0) throw std::invalid_argument("monomial: negative power");
  std::vector<Complex> c(static_cast<size_t>(power) + 1, Complex(0.0, 0.0));
  c.back() = scale;
  return Polynomial(std::move(c));
}

void Polynomial::drop_exact_zero_tail() {
  while (!coeffs_.empty() && coeffs_.back() == Complex(0.0, 0.0)) coeffs_.pop_back();
}

double Polynomial::coeff_scale() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Complex Polynomial::eval(Complex w) const {
  Complex acc(0.0, 0.0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * w + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial();
  std::vector<Complex> d(coeffs_.size() - 1);
  for (size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * double(k);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::reversed(int target_degree) const {
  if (target_degree < degree())
    throw std::invalid_argument("reversed: target degree below polynomial degree");
  std::vector<Complex> r(static_cast<size_t>(target_degree) + 1, Complex(0.0, 0.0));
  for (size_t k = 0; k < coeffs_.size(); ++k) r[target_degree - k] = coeffs_[k];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::rescaled(Complex scale) const {
  std::vector<Complex> c = coeffs_;
  Complex pw(1.0, 0.0);
  for (size_t k = 0; k < c.size(); ++k) {
    c[k] *= pw;
    pw *= scale;
  }
  return Polynomial(std::move(c));
}

Polynomial Polynomial::deflated(Complex root, double* remainder) const {
  if (coeffs_.empty()) {
    if (remainder) *remainder = 0.0;
    return Polynomial();
  }
  std::vector<Complex> q(coeffs_.size() > 1 ? coeffs_.size() - 1 : 0);
  Complex carry(0.0, 0.0);
  for (size_t k = coeffs_.size(); k-- > 0;) {
    Complex v = coeffs_[k] + carry * root;
    if (k == 0) {
      if (remainder) *remainder = std::abs(v);
    } else {
      q[k - 1] = v;
      carry = v;
    }
  }
  return Polynomial(std::move(q));
}

std::vector<Complex> Polynomial::roots() const {
  int n = degree();
  if (n <= 0) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  Complex lead = coeffs_.back();
  for (int i = 1; i < n; ++i) companion(i, i - 1) = Complex(1.0, 0.0);
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -coeffs_[i] / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("polynomial root finding failed to converge");
  std::vector<Complex> out(n);
  for (int i = 0; i < n; ++i) out[i] = solver.eigenvalues()(i);
  return out;
}

Polynomial Polynomial::scaled(Complex s) const {
  std::vector<Complex> c = coeffs_;
  for (auto& v : c) v *= s;
  return Polynomial(std::move(c));
}

void Polynomial::trim(double rel_tol) {
  double scale = coeff_scale();
  if (scale == 0.0) return;
  while (!coeffs_.empty() && std::abs(coeffs_.back()) <= rel_tol * scale) coeffs_.pop_back();
}

}  // namespace eigenbound

#pragma once

#include <complex>
#include <vector>

namespace eigenbound {

using Complex = std::complex<double>;

// Dense univariate polynomial over C, coefficients in ascending powers.
// Coefficient lists are kept verbatim except for exact trailing zeros;
// tolerance-based trimming is always an explicit call.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Complex> coeffs);

  static Polynomial monomial(int power, Complex scale = Complex(1.0, 0.0));

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  double coeff_scale() const;  // max |c_k|, 0 for the zero polynomial

  Complex eval(Complex w) const;  // Horner
  Polynomial derivative() const;

  // w^target_degree * p(1/w); requires target_degree >= degree().
  Polynomial reversed(int target_degree) const;

  // Composition with a linear reparametrization: p(scale * w).
  Polynomial rescaled(Complex scale) const;

  // Quotient of synthetic division by (w - root). |remainder| is returned
  // through *remainder when non-null; the caller decides whether a large
  // remainder invalidates the deflation.
  Polynomial deflated(Complex root, double* remainder = nullptr) const;

  // All complex roots via the companion matrix (empty for degree <= 0).
  std::vector<Complex> roots() const;

  Polynomial scaled(Complex s) const;
  void trim(double rel_tol);

 private:
  std::vector<Complex> coeffs_;
  void drop_exact_zero_tail();
};

}  // namespace eigenbound

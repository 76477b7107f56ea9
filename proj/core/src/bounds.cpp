#include "eigenbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace eigenbound {

namespace {

constexpr double kPi = std::numbers::pi;

// ---- checked integer rationals for the exact-pi tags ----------------------

struct Overflow {};

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
  return r;
}
long long checked_sub(long long a, long long b) {
  long long r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}

struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d = 1) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw Overflow{};
    if (den < 0) {
      num = checked_sub(0, num);
      den = checked_sub(0, den);
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  double value() const { return double(num) / double(den); }
};

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(checked_add(checked_mul(a.num, b.den), checked_mul(b.num, a.den)),
                  checked_mul(a.den, b.den));
}
Rational operator-(const Rational& a, const Rational& b) {
  return Rational(checked_sub(checked_mul(a.num, b.den), checked_mul(b.num, a.den)),
                  checked_mul(a.den, b.den));
}
Rational operator*(const Rational& a, const Rational& b) {
  return Rational(checked_mul(a.num, b.num), checked_mul(a.den, b.den));
}
Rational operator/(const Rational& a, const Rational& b) {
  if (b.num == 0) throw Overflow{};
  return Rational(checked_mul(a.num, b.den), checked_mul(a.den, b.num));
}

// Element x + y sqrt(D) of a real quadratic field.
struct QuadExt {
  Rational x, y;
  long long D = 1;

  double value() const { return x.value() + y.value() * std::sqrt(double(D)); }
};

QuadExt qe(Rational x, Rational y, long long D) { return {x, y, D}; }
QuadExt operator+(const QuadExt& a, const QuadExt& b) { return {a.x + b.x, a.y + b.y, a.D}; }
QuadExt operator-(const QuadExt& a, const QuadExt& b) { return {a.x - b.x, a.y - b.y, a.D}; }
QuadExt operator*(const QuadExt& a, const QuadExt& b) {
  return {a.x * b.x + Rational(a.D) * (a.y * b.y), a.x * b.y + a.y * b.x, a.D};
}
QuadExt inverse(const QuadExt& a) {
  Rational nrm = a.x * a.x - Rational(a.D) * (a.y * a.y);
  if (nrm.num == 0) throw Overflow{};
  return {a.x / nrm, (Rational(0) - a.y) / nrm, a.D};
}

// disc = s^2 * D with D squarefree (within trial-division reach).
void split_square(long long disc, long long& s, long long& D) {
  s = 1;
  D = disc;
  for (long long f = 2; f <= 1000000 && f * f <= D; ++f) {
    while (D % (f * f) == 0) {
      D /= f * f;
      s = checked_mul(s, f);
    }
  }
  long long r = static_cast<long long>(std::llround(std::sqrt(double(D))));
  for (long long c = std::max(0LL, r - 2); c <= r + 2; ++c) {
    if (c > 1 && c * c == D) {
      s = checked_mul(s, c);
      D = 1;
      break;
    }
  }
}

std::string format_pi_form(long long u, long long v, long long D, long long den) {
  std::ostringstream os;
  auto tail = [&] {
    if (den != 1) os << "/" << den;
    os << " * pi";
  };
  if (v == 0) {
    os << u;
    tail();
    return os.str();
  }
  os << "(" << u << (v < 0 ? " - " : " + ") << (v < 0 ? -v : v) << "*sqrt(" << D << "))";
  tail();
  return os.str();
}

double golden_section(double lo, double hi, double tol, const std::function<double(double)>& f) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

int worker_count(long long jobs) {
  unsigned hw = std::thread::hardware_concurrency();
  long long t = hw ? hw : 1;
  if (const char* env = std::getenv("EIGENBOUND_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) t = std::min<long long>(t, v);
  }
  return static_cast<int>(std::clamp<long long>(std::min(t, jobs), 1, 256));
}

long long isqrt_floor(long long x) {
  long long r = static_cast<long long>(std::floor(std::sqrt(double(x))));
  while ((r + 1) * (r + 1) <= x) ++r;
  while (r * r > x) --r;
  return r;
}

}  // namespace

double bound_F(int n, int d, double delta, double a) {
  if (n < 2) throw std::invalid_argument("bound_F: requires n >= 2");
  if (d < 1) throw std::invalid_argument("bound_F: requires d >= 1");
  double c = double(n - 1) / double(n + 1);
  double q = (2.0 * a - 1.0) * (2.0 * a - 1.0);
  return 8.0 * kPi * d * (1.0 + (2.0 * delta * a * a - c) / (q + c));
}

std::pair<double, double> minimize_F(int n, int d, double delta) {
  if (n < 2) throw std::invalid_argument("minimize_F: requires n >= 2");
  if (delta < 0.0) throw std::invalid_argument("minimize_F: requires delta >= 0");
  if (delta == 0.0) return {0.5, bound_F(n, d, delta, 0.5)};

  // F'(a) = 0  <=>  2 delta a^2 - (delta (1+c) + 2c) a + c = 0; the smaller
  // root lies in (0, 1/2) for delta > 0.
  double c = double(n - 1) / double(n + 1);
  double beta = delta * (1.0 + c) + 2.0 * c;
  double disc = beta * beta - 8.0 * delta * c;
  double a_min = (beta - std::sqrt(disc)) / (4.0 * delta);

  // Golden section shrinks its bracket to 1e-12, but roundoff flattens F
  // near the minimum over a width ~sqrt(eps); 1e-7 still catches any
  // algebra slip in the quadratic.
  double a_gs = golden_section(0.0, 0.5, 1e-12,
                               [&](double a) { return bound_F(n, d, delta, a); });
  if (std::abs(a_gs - a_min) > 1e-7)
    throw std::logic_error("minimize_F: analytic root and golden section disagree");
  return {a_min, bound_F(n, d, delta, a_min)};
}

ExactPiForm minimize_F_exact(int n, int d, long long delta_num, long long delta_den) {
  ExactPiForm form;
  if (n < 2 || d < 1 || delta_den <= 0 || delta_num < 0) return form;
  try {
    Rational delta(delta_num, delta_den);
    Rational c(n - 1, n + 1);
    if (delta.num == 0) return form;  // boundary minimum, value exactly 0

    // Integer quadratic A a^2 + B a + C from 2 delta a^2 - (delta(1+c)+2c) a + c.
    Rational A2 = Rational(2) * delta;
    Rational B2 = Rational(0) - (delta * (Rational(1) + c) + Rational(2) * c);
    Rational C2 = c;
    long long den_all = checked_mul(checked_mul(A2.den, B2.den), C2.den);
    long long A = checked_mul(A2.num, den_all / A2.den);
    long long B = checked_mul(B2.num, den_all / B2.den);
    long long C = checked_mul(C2.num, den_all / C2.den);
    long long g = std::gcd(std::gcd(std::llabs(A), std::llabs(B)), std::llabs(C));
    if (g > 1) {
      A /= g;
      B /= g;
      C /= g;
    }
    long long disc = checked_sub(checked_mul(B, B), checked_mul(4, checked_mul(A, C)));
    if (disc < 0) return form;
    long long s, D;
    split_square(disc, s, D);

    // a* = (-B - s sqrt(D)) / (2A)
    QuadExt a_star = qe(Rational(-B, 2 * A), Rational(-s, 2 * A), D);
    QuadExt cq = qe(c, Rational(0), D);
    QuadExt dq = qe(delta, Rational(0), D);
    QuadExt one = qe(Rational(1), Rational(0), D);
    QuadExt two = qe(Rational(2), Rational(0), D);
    QuadExt twoa = two * a_star - one;
    QuadExt num = two * dq * a_star * a_star - cq;
    QuadExt denom = twoa * twoa + cq;
    QuadExt val = one + num * inverse(denom);  // F / (8 pi d)
    QuadExt total = qe(Rational(8LL * d), Rational(0), D) * val;

    long long cd = checked_mul(total.x.den, total.y.den);
    form.u = checked_mul(total.x.num, cd / total.x.den);
    form.v = checked_mul(total.y.num, cd / total.y.den);
    form.disc = D;
    form.den = cd;
    if (D == 1) {
      form.u = checked_add(form.u, form.v);
      form.v = 0;
    }
    long long gg = std::gcd(std::gcd(std::llabs(form.u), std::llabs(form.v)), form.den);
    if (gg > 1) {
      form.u /= gg;
      form.v /= gg;
      form.den /= gg;
    }
    form.text = format_pi_form(form.u, form.v, form.disc, form.den);

    double tagged = (double(form.u) + double(form.v) * std::sqrt(double(form.disc))) /
                    double(form.den) * kPi;
    double direct = minimize_F(n, d, double(delta_num) / double(delta_den)).second;
    form.valid = std::abs(tagged - direct) <= 1e-12 * std::max(std::abs(direct), 1.0);
  } catch (const Overflow&) {
    form = ExactPiForm{};
  }
  return form;
}

long long brill_noether_degree(long long g, long long n) {
  if (g < 0 || n < 1) throw std::invalid_argument("brill_noether_degree: g >= 0, n >= 1");
  return ((g + 1) * n) / (n + 1) + n;
}

long long brill_noether_rho(long long g, long long d, long long n) {
  return g - (n + 1) * (g - d + n);
}

double yang_yau_bound(long long g) {
  if (g < 0) throw std::invalid_argument("yang_yau_bound: g >= 0");
  return double((g + 3) / 2) * 8.0 * kPi;
}

namespace {

struct ScanBest {
  double value = std::numeric_limits<double>::infinity();
  long long n = 0, d = 0;
  double a = 0.0;

  bool better_than(const ScanBest& other) const {
    if (value != other.value) return value < other.value;
    if (n != other.n) return n < other.n;
    return d < other.d;
  }
};

ScanBest scan_range(long long g, long long n_lo, long long n_hi, long long d_span) {
  ScanBest best;
  for (long long n = n_lo; n <= n_hi; ++n) {
    long long d0 = brill_noether_degree(g, n);
    for (long long d = d0; d <= d0 + d_span; ++d) {
      double delta = 1.0 + double(g - 1) / double(d);
      auto [a_min, value] = minimize_F(static_cast<int>(n), static_cast<int>(d), delta);
      ScanBest cand{value, n, d, a_min};
      if (cand.better_than(best)) best = cand;
    }
  }
  return best;
}

}  // namespace

BoundResult lambda1_bound(long long g, long long n_max, long long d_span) {
  if (g < 3) throw std::invalid_argument("lambda1_bound: requires g >= 3");
  if (n_max == 0) n_max = isqrt_floor(g + 1) + 10;
  if (n_max < 3) throw std::invalid_argument("lambda1_bound: requires n_max >= 3");
  if (d_span < 0) throw std::invalid_argument("lambda1_bound: requires d_span >= 0");

  const long long jobs = n_max - 3 + 1;
  const int workers = worker_count(jobs);
  std::vector<ScanBest> partial(workers);
  if (workers == 1) {
    partial[0] = scan_range(g, 3, n_max, d_span);
  } else {
    std::vector<std::thread> pool;
    long long chunk = (jobs + workers - 1) / workers;
    for (int t = 0; t < workers; ++t) {
      long long lo = 3 + t * chunk;
      long long hi = std::min(n_max, lo + chunk - 1);
      pool.emplace_back([&partial, t, g, lo, hi, d_span] {
        if (lo <= hi) partial[t] = scan_range(g, lo, hi, d_span);
      });
    }
    for (auto& th : pool) th.join();
  }
  ScanBest best;
  for (const auto& p : partial)
    if (p.n != 0 && p.better_than(best)) best = p;

  BoundResult result;
  result.value = best.value;
  result.value_over_pi = best.value / kPi;
  result.a_star = best.a;
  result.n_star = best.n;
  result.d_star = best.d;
  result.baseline_yy = yang_yau_bound(g);
  result.dominates_baseline = result.value <= result.baseline_yy;
  result.exact = minimize_F_exact(static_cast<int>(best.n), static_cast<int>(best.d),
                                  best.d + g - 1, best.d);
  return result;
}

BoundResult bound_for_embedding(long long g, long long n, long long d, long long b) {
  if (n < 2) throw std::invalid_argument("bound_for_embedding: requires n >= 2");
  if (d < 1) throw std::invalid_argument("bound_for_embedding: requires d >= 1");
  if (b < 0 || b % 2 != 0)
    throw std::invalid_argument("bound_for_embedding: branching must be even and >= 0");
  double delta = 1.0 + (double(g - 1) - 0.5 * double(b)) / double(d);
  if (delta < 0.0) throw std::invalid_argument("bound_for_embedding: negative delta");

  auto [a_min, value] = minimize_F(static_cast<int>(n), static_cast<int>(d), delta);
  BoundResult result;
  result.value = value;
  result.value_over_pi = value / kPi;
  result.a_star = a_min;
  result.n_star = n;
  result.d_star = d;
  result.baseline_yy = yang_yau_bound(std::max<long long>(g, 0));
  result.dominates_baseline = result.value <= result.baseline_yy;
  long long num2 = 2 * (d + g - 1) - b;  // delta = num2 / (2 d)
  if (num2 >= 0) result.exact = minimize_F_exact(static_cast<int>(n), static_cast<int>(d), num2, 2 * d);
  return result;
}

double asymptotic_G(double a) {
  double q = (2.0 * a - 1.0) * (2.0 * a - 1.0);
  return 8.0 * kPi * (1.0 + (4.0 * a * a - 1.0) / (q + 1.0));
}

std::pair<double, double> minimize_G() {
  double a_min = (3.0 - std::sqrt(5.0)) / 4.0;
  double value = 4.0 * (3.0 - std::sqrt(5.0)) * kPi;
  // G is F with c = 1, delta = 2, d = 1, so G'(a) = 0 is 4a^2 - 6a + 1 = 0;
  // the numeric root of that quadratic must land on the closed form.
  double a_quad = (6.0 - std::sqrt(20.0)) / 8.0;
  if (std::abs(a_quad - a_min) > 1e-12)
    throw std::logic_error("minimize_G: derivative root drifted from the closed form");
  double a_gs = golden_section(0.0, 0.5, 1e-12, asymptotic_G);
  if (std::abs(a_gs - a_min) > 1e-7)
    throw std::logic_error("minimize_G: closed form and golden section disagree");
  return {a_min, value};
}

std::vector<AsymptoticRow> asymptotic_convergence_table(const std::vector<long long>& g_list) {
  std::vector<AsymptoticRow> rows;
  rows.reserve(g_list.size());
  for (long long g : g_list) {
    if (g < 3) throw std::invalid_argument("asymptotic_convergence_table: entries must be >= 3");
    long long n = isqrt_floor(g + 1);
    long long d = g + 1;
    double delta = 1.0 + double(g - 1) / double(d);
    double value = minimize_F(static_cast<int>(n), static_cast<int>(d), delta).second;
    rows.push_back({g, value, value / double(g), value / (double(g) * kPi)});
  }
  return rows;
}

}  // namespace eigenbound

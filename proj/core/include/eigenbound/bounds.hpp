#pragma once

#include <string>
#include <utility>
#include <vector>

namespace eigenbound {

// Exact multiple of pi: value = (u + v*sqrt(disc))/den * pi, reported
// alongside the floating-point value when the minimizer matches the closed
// root of the derivative quadratic.  valid == false when no exact form was
// established (e.g. integer overflow in the exact arithmetic).
struct ExactPiForm {
  bool valid = false;
  long long u = 0;
  long long v = 0;
  long long disc = 0;
  long long den = 1;
  std::string text;
};

// F(n, d, delta, a) = 8 pi d (1 + (2 a^2 delta - c) / ((2a-1)^2 + c)) with
// c = (n-1)/(n+1); requires n >= 2 so the denominator stays positive.
double bound_F(int n, int d, double delta, double a);

// Global minimum of F over a: the root of the derivative quadratic
// 2 delta a^2 - (delta(1+c) + 2c) a + c inside (0, 1/2), cross-checked by
// golden section.  For delta = 0 the infimum sits at the boundary a = 1/2
// (where F vanishes); the boundary pair is returned.
std::pair<double, double> minimize_F(int n, int d, double delta);

// Exact-arithmetic companion of minimize_F for rational delta = num/den.
ExactPiForm minimize_F_exact(int n, int d, long long delta_num, long long delta_den);

// d(g, n) = floor((g+1) n / (n+1)) + n, the least Brill-Noether degree, and
// rho(g, d, n) = g - (n+1)(g - d + n) >= 0 at and above it.
long long brill_noether_degree(long long g, long long n);
long long brill_noether_rho(long long g, long long d, long long n);

// floor((g+3)/2) * 8 pi.
double yang_yau_bound(long long g);

struct BoundResult {
  double value = 0.0;
  double value_over_pi = 0.0;
  double a_star = 0.0;
  long long n_star = 0;
  long long d_star = 0;
  double baseline_yy = 0.0;
  bool dominates_baseline = false;
  ExactPiForm exact;
};

// Scan n in [3, n_max], d in [d(g,n), d(g,n)+d_span] of minimize_F with
// delta = 1 + (g-1)/d (unbranched embeddings); deterministic merge with
// lexicographic (value, n, d) tie-breaking, parallel over n (worker count
// capped by EIGENBOUND_THREADS).  n_max = 0 selects floor(sqrt(g+1)) + 10.
BoundResult lambda1_bound(long long g, long long n_max = 0, long long d_span = 50);

// Forced-(n, d) mode: the bound for one embedding family, with branching b.
BoundResult bound_for_embedding(long long g, long long n, long long d, long long b = 0);

// Asymptotic profile G(a) = 8 pi (1 + (4a^2 - 1)/((2a-1)^2 + 1)) and its
// exact minimum ((3 - sqrt 5)/4, 4 (3 - sqrt 5) pi).
double asymptotic_G(double a);
std::pair<double, double> minimize_G();

struct AsymptoticRow {
  long long g = 0;
  double bound = 0.0;
  double ratio = 0.0;          // bound / g
  double ratio_over_pi = 0.0;  // bound / (pi g)
};

// Rows along the schedule d = g + 1, n = floor(sqrt(g+1)); the ratio column
// decreases toward 4 (3 - sqrt 5) pi.
std::vector<AsymptoticRow> asymptotic_convergence_table(const std::vector<long long>& g_list);

}  // namespace eigenbound

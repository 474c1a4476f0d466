#pragma once

#include <span>
#include <vector>

namespace spinorbit::specfun {

inline constexpr int kLaguerreMaxDegree = 500;

/// Associated Laguerre polynomial L_n^alpha(x) by upward three-term
/// recurrence in n. Requires 0 <= n <= 500, alpha >= 0, finite x.
double laguerre(int n, double alpha, double x);

/// ln Gamma(x) for x > 0 (Lanczos, g = 7). Thread-safe, unlike std::lgamma.
double log_gamma(double x);

/// Unnormalized sinc, sin(x)/x, with sinc(0) = 1 and 1 - x^2/6 for |x| < 1e-4.
double sinc(double x);

inline constexpr double kDawsonMaxArgument = 50.0;
inline constexpr double kDawsonSwitchover = 4.0;

/// Dawson's integral F(x) = exp(-x^2) * int_0^x exp(t^2) dt for |x| <= 50.
///
/// |x| < 4 sums the positive Maclaurin series of int_0^x exp(t^2) dt and
/// multiplies by exp(-x^2); |x| >= 4 evaluates the continued fraction
///   F(x) = x / (1 + 2x^2 - 4x^2 / (3 + 2x^2 - 8x^2 / (5 + 2x^2 - ...)))
/// at fixed depth. Both branches agree to < 1e-15 on [3.5, 4.5]. Beyond the
/// cap F(x) ~ 1/(2x).
double dawson(double x);

namespace detail {
double dawson_series(double x);
double dawson_continued_fraction(double x);
}  // namespace detail

inline constexpr int kMinQuadratureOrder = 8;
inline constexpr int kMaxQuadratureOrder = 512;
inline constexpr int kDefaultQuadratureOrder = 128;

/// Immutable quadrature rule for integrals over [0, inf):
///   int_0^inf f(xi) dxi  ~=  sum_i weights[i] * f(nodes[i]).
class QuadratureRule {
 public:
  /// Validates the invariants: equal lengths, nodes strictly increasing and
  /// positive, weights positive.
  QuadratureRule(std::vector<double> nodes, std::vector<double> weights);

  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  int order() const { return static_cast<int>(nodes_.size()); }

  /// Largest k such that int p(xi) exp(-xi^2) dxi is exact for deg p <= k.
  int exact_degree() const { return 2 * order() - 1; }

  template <class F>
  double integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) sum += weights_[i] * f(nodes_[i]);
    return sum;
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Gauss rule for the half-line weight exp(-xi^2), re-expressed as a
/// unit-weight rule. `order` nodes integrate p(xi) exp(-xi^2) exactly for
/// polynomials p of degree <= 2*order - 1. Requires 8 <= order <= 512.
QuadratureRule radial_quadrature(int order = kDefaultQuadratureOrder);

}  // namespace spinorbit::specfun

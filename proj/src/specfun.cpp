#include "spinorbit/specfun.hpp"

#include <array>
#include <cmath>
#include <string>

#include "spinorbit/constants.hpp"
#include "spinorbit/errors.hpp"

namespace spinorbit::specfun {

double laguerre(int n, double alpha, double x) {
  if (n < 0 || n > kLaguerreMaxDegree)
    throw ParameterError("laguerre: degree " + std::to_string(n) + " outside [0, 500]");
  if (!(alpha >= 0.0)) throw ParameterError("laguerre: alpha must be >= 0");
  if (!std::isfinite(x)) throw ParameterError("laguerre: x must be finite");

  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + alpha - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw ParameterError("log_gamma: argument must be positive and finite");

  static constexpr std::array<double, 9> kCoeff = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  static constexpr double kG = 7.0;

  if (x < 0.5) {
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
    return std::log(kPi / std::sin(kPi * x)) - log_gamma(1.0 - x);
  }
  const double z = x - 1.0;
  double a = kCoeff[0];
  for (std::size_t i = 1; i < kCoeff.size(); ++i) a += kCoeff[i] / (z + static_cast<double>(i));
  const double t = z + kG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

namespace detail {

double dawson_series(double x) {
  // int_0^x exp(t^2) dt = sum_k x^(2k+1) / (k! (2k+1)); every term is positive.
  const double x2 = x * x;
  double power = x;  // x^(2k+1) / k!
  double sum = x;
  for (int k = 1; k < 400; ++k) {
    power *= x2 / k;
    const double term = power / (2.0 * k + 1.0);
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return std::exp(-x2) * sum;
}

double dawson_continued_fraction(double x) {
  constexpr int kDepth = 100;
  const double x2 = x * x;
  double tail = 0.0;
  for (int k = kDepth; k >= 1; --k) tail = 4.0 * k * x2 / ((2.0 * k + 1.0) + 2.0 * x2 - tail);
  return x / (1.0 + 2.0 * x2 - tail);
}

}  // namespace detail

double dawson(double x) {
  if (!std::isfinite(x) || std::abs(x) > kDawsonMaxArgument)
    throw ParameterError("dawson: |x| exceeds 50 (use the limit 1/(2x))");
  const double ax = std::abs(x);
  const double value =
      ax < kDawsonSwitchover ? detail::dawson_series(ax) : detail::dawson_continued_fraction(ax);
  return x < 0.0 ? -value : value;
}

}  // namespace spinorbit::specfun

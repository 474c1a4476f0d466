#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "spinorbit/constants.hpp"
#include "spinorbit/errors.hpp"
#include "spinorbit/specfun.hpp"

namespace spinorbit::specfun {

QuadratureRule::QuadratureRule(std::vector<double> nodes, std::vector<double> weights)
    : nodes_(std::move(nodes)), weights_(std::move(weights)) {
  if (nodes_.size() != weights_.size() || nodes_.empty())
    throw ParameterError("QuadratureRule: nodes and weights must be non-empty and of equal length");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!(nodes_[i] > 0.0) || !(weights_[i] > 0.0) || !std::isfinite(weights_[i]))
      throw ParameterError("QuadratureRule: nodes and weights must be positive");
    if (i > 0 && !(nodes_[i] > nodes_[i - 1]))
      throw ParameterError("QuadratureRule: nodes must be strictly increasing");
  }
}

namespace {

// Gauss-Legendre nodes/weights on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  std::vector<double> x(n), w(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

struct Recurrence {
  std::vector<double> alpha;  // alpha_0 .. alpha_{N-1}
  std::vector<double> beta;   // beta_0 = mu_0, beta_1 .. beta_N
};

// Discretized Stieltjes procedure for dmu = exp(-x^2) dx on [0, inf).
// The measure is replaced by composite Gauss-Legendre on [0, L] with L past
// the turning point of the degree-N orthonormal functions; the vector form
// below is Lanczos on diag(x) started from sqrt(w). High-degree vectors live
// where exp(-x^2) underflows, so every point carries its own binary exponent:
// the true component is ldexp(mantissa, exponent).
Recurrence half_line_recurrence(int n) {
  const double length = std::sqrt(4.0 * n + 2.0) + 8.0;
  constexpr double kPanel = 0.125;
  constexpr int kPointsPerPanel = 40;
  const int panels = static_cast<int>(std::ceil(length / kPanel));
  const auto [gx, gw] = gauss_legendre(kPointsPerPanel);

  std::vector<double> x, log_s;
  x.reserve(static_cast<std::size_t>(panels) * kPointsPerPanel);
  log_s.reserve(x.capacity());
  double mu0 = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = p * kPanel;
    for (int i = 0; i < kPointsPerPanel; ++i) {
      const double xi = a + 0.5 * kPanel * (gx[i] + 1.0);
      const double log_w = std::log(0.5 * kPanel * gw[i]) - xi * xi;
      x.push_back(xi);
      log_s.push_back(0.5 * log_w);
      mu0 += std::exp(log_w);
    }
  }

  const std::size_t m = x.size();
  std::vector<double> q(m), q_prev(m, 0.0);
  std::vector<int> expo(m);
  const double log_norm0 = 0.5 * std::log(mu0);
  for (std::size_t j = 0; j < m; ++j) {
    const double l2 = (log_s[j] - log_norm0) / std::log(2.0);
    expo[j] = static_cast<int>(std::floor(l2));
    q[j] = std::exp2(l2 - expo[j]);
  }

  Recurrence rec;
  rec.alpha.resize(n);
  rec.beta.resize(n + 1);
  rec.beta[0] = mu0;
  double b_prev = 0.0;
  std::vector<double> v(m);
  for (int k = 0; k < n; ++k) {
    double a = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double qj = std::ldexp(q[j], expo[j]);
      a += x[j] * qj * qj;
    }
    double nrm2 = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      v[j] = (x[j] - a) * q[j] - b_prev * q_prev[j];
      const double vj = std::ldexp(v[j], expo[j]);
      nrm2 += vj * vj;
    }
    const double nrm = std::sqrt(nrm2);
    rec.alpha[k] = a;
    rec.beta[k + 1] = nrm2;
    for (std::size_t j = 0; j < m; ++j) {
      q_prev[j] = q[j];
      q[j] = v[j] / nrm;
      if (std::abs(q[j]) > 1e100 || std::abs(q_prev[j]) > 1e100) {
        q[j] = std::ldexp(q[j], -300);
        q_prev[j] = std::ldexp(q_prev[j], -300);
        expo[j] += 300;
      }
    }
    b_prev = nrm;
  }
  return rec;
}

constexpr double kRescaleAbove = 1e150;

// Orthonormal polynomial chain at x; returns p_N/p_N' for Newton polishing
// and ln(sum_{k<N} p_k(x)^2) for the Christoffel weight.
struct ChainValues {
  double newton_step;
  double log_christoffel_sum;
};

ChainValues orthonormal_chain(const Recurrence& rec, double x) {
  const int n = static_cast<int>(rec.alpha.size());
  double p_prev = 0.0, p = 1.0 / std::sqrt(rec.beta[0]);
  double d_prev = 0.0, d = 0.0;
  double sum = 0.0;
  double log_scale = 0.0;  // true values are exp(log_scale) * stored
  for (int k = 0; k < n; ++k) {
    sum += p * p;
    const double bk = k > 0 ? std::sqrt(rec.beta[k]) : 0.0;
    const double bk1 = std::sqrt(rec.beta[k + 1]);
    const double p_next = ((x - rec.alpha[k]) * p - bk * p_prev) / bk1;
    const double d_next = ((x - rec.alpha[k]) * d + p - bk * d_prev) / bk1;
    p_prev = p;
    p = p_next;
    d_prev = d;
    d = d_next;
    if (std::abs(p) > kRescaleAbove || std::abs(d) > kRescaleAbove) {
      const double f = 1.0 / kRescaleAbove;
      p *= f;
      p_prev *= f;
      d *= f;
      d_prev *= f;
      sum *= f * f;
      log_scale += std::log(kRescaleAbove);
    }
  }
  return {p / d, std::log(sum) + 2.0 * log_scale};
}

}  // namespace

QuadratureRule radial_quadrature(int order) {
  if (order < kMinQuadratureOrder || order > kMaxQuadratureOrder)
    throw ParameterError("radial_quadrature: order " + std::to_string(order) + " outside [8, 512]");

  const Recurrence rec = half_line_recurrence(order);
  Eigen::VectorXd diag(order), sub(order - 1);
  for (int k = 0; k < order; ++k) diag[k] = rec.alpha[k];
  for (int k = 1; k < order; ++k) sub[k - 1] = std::sqrt(rec.beta[k]);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("radial_quadrature: Jacobi eigensolver failed");

  std::vector<double> nodes(order), weights(order);
  for (int i = 0; i < order; ++i) {
    double x = solver.eigenvalues()[i];
    for (int it = 0; it < 2; ++it) x -= orthonormal_chain(rec, x).newton_step;
    const ChainValues cv = orthonormal_chain(rec, x);
    nodes[i] = x;
    weights[i] = std::exp(x * x - cv.log_christoffel_sum);
  }
  return QuadratureRule(std::move(nodes), std::move(weights));
}

}  // namespace spinorbit::specfun

#include <doctest.h>

#include <cmath>
#include <random>

#include "spinorbit/basis.hpp"
#include "spinorbit/errors.hpp"

using namespace spinorbit;
namespace sf = spinorbit::specfun;

namespace {

// Direct evaluation of the normalized profile with factorials.
double radial_direct(int n, int ell, double xi) {
  const int a = std::abs(ell);
  const double norm = std::sqrt(std::tgamma(n + 1.0) / (M_PI * std::tgamma(n + a + 1.0)));
  return norm * std::pow(xi, a) * std::exp(-xi * xi / 2) * sf::laguerre(n, a, xi * xi);
}

}  // namespace

TEST_CASE("mode_radial matches the factorial form") {
  for (int n = 0; n <= 10; ++n)
    for (int ell = -5; ell <= 5; ++ell)
      for (double xi : {0.0, 0.1, 0.7, 1.5, 3.0, 5.5})
        CHECK(mode_radial(n, ell, xi) == doctest::Approx(radial_direct(n, ell, xi)).epsilon(1e-12).scale(1e-300));
  CHECK(mode_radial(0, 0, 0.0) == doctest::Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-15));
  CHECK(mode_radial(3, 2, 0.0) == 0.0);
}

TEST_CASE("mode_radial depends on |ell| only") {
  for (double xi : {0.2, 1.1, 2.9}) CHECK(mode_radial(4, -3, xi) == mode_radial(4, 3, xi));
}

TEST_CASE("orthonormality for n_r <= 12, |ell| <= 6") {
  const auto rule = sf::radial_quadrature(128);
  double worst = 0.0;
  for (int ell = -6; ell <= 6; ++ell)
    for (int a = 0; a <= 12; ++a)
      for (int b = 0; b <= 12; ++b) {
        const Complex ip = inner_product({a, ell, Spin::up}, {b, ell, Spin::up}, rule);
        worst = std::max(worst, std::abs(ip - (a == b ? 1.0 : 0.0)));
      }
  CHECK(worst < 1e-10);
}

TEST_CASE("different ell or spin are exactly orthogonal") {
  const auto rule = sf::radial_quadrature(32);
  CHECK(inner_product({0, 0, Spin::up}, {0, 1, Spin::up}, rule) == Complex{0.0, 0.0});
  CHECK(inner_product({2, 1, Spin::up}, {2, 1, Spin::down}, rule) == Complex{0.0, 0.0});
}

TEST_CASE("high radial orders stay normalized") {
  const auto rule = sf::radial_quadrature(512);
  for (int n : {100, 200, 250}) {
    const Eigen::MatrixXd t = radial_table(n, 3, rule);
    const Eigen::VectorXd m = overlap_measure(rule);
    const double norm = (t.row(n).array().square() * m.transpose().array()).sum();
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(t.allFinite());
  }
  CHECK(std::isfinite(mode_radial(500, 40, 45.0)));
}

TEST_CASE("radial_table rows equal mode_radial") {
  const auto rule = sf::radial_quadrature(16);
  const Eigen::MatrixXd t = radial_table(6, -2, rule);
  for (int n = 0; n <= 6; ++n)
    for (int i = 0; i < rule.order(); ++i) CHECK(t(n, i) == doctest::Approx(mode_radial(n, 2, rule.nodes()[i])));
}

TEST_CASE("SpinOrbitState pruning and bookkeeping") {
  SpinOrbitState::CoefficientMap c{{{0, 0, Spin::up}, {0.6, 0.0}},
                                   {{1, 1, Spin::down}, {0.0, 0.8}},
                                   {{2, 0, Spin::up}, {1e-15, 0.0}}};
  const SpinOrbitState s(c, 100e-9, 1e-3);
  CHECK(s.size() == 2);
  CHECK(s.captured_probability() == doctest::Approx(1.0));
  CHECK(s.pruned_probability() == doctest::Approx(1e-30));
  CHECK(s.tail_estimate() == 1e-3);
  CHECK(s.spin_probability(Spin::up) == doctest::Approx(0.36));
  CHECK(s.spin_probability(Spin::down) == doctest::Approx(0.64));
  CHECK(s.amplitude({1, 1, Spin::down}) == Complex{0.0, 0.8});
  CHECK(s.amplitude({5, 5, Spin::down}) == Complex{0.0, 0.0});
  CHECK(state_norm(s) == doctest::Approx(1.0));
  CHECK_THROWS_AS(SpinOrbitState({{{-1, 0, Spin::up}, 1.0}}, 1e-7), ParameterError);
  CHECK_THROWS_AS(SpinOrbitState({}, 0.0), ParameterError);
}

TEST_CASE("geometry and energy") {
  const PhysicalConstants k;
  const WavepacketGeometry g(100e-9, k);
  CHECK(g.omega_perp() == doctest::Approx(std::sqrt(k.hbar / (2 * k.mass_n * 1e-14))).epsilon(1e-14));
  const WavepacketGeometry back = WavepacketGeometry::from_omega(g.omega_perp(), k);
  CHECK(back.sigma_perp() == doctest::Approx(100e-9).epsilon(1e-14));

  const double unit = k.hbar * g.omega_perp();
  CHECK(total_energy(0, 0, 0.0, 0.0, g) == doctest::Approx(unit));
  CHECK(total_energy(2, -3, 0.0, 0.0, g) == doctest::Approx(8 * unit));
  const double kz = 2 * M_PI / 0.271e-9;
  CHECK(total_energy(0, 0, kz, 1e-27, g) ==
        doctest::Approx(unit + k.hbar * k.hbar * kz * kz / (2 * k.mass_n) - 1e-27));
  CHECK_THROWS_AS(WavepacketGeometry(-1.0), ParameterError);
  CHECK_THROWS_AS(PhysicalConstants({0.0, 1.0, 1.0}).validate(), ParameterError);
}

TEST_CASE("orthonormality of random superpositions under quadrature") {
  const auto rule = sf::radial_quadrature(64);
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> n(0, 10), l(-4, 4);
  for (int k = 0; k < 50; ++k) {
    const ModeIndex a{n(rng), l(rng), Spin::up};
    const ModeIndex b{n(rng), a.ell, Spin::up};
    CHECK(std::abs(inner_product(a, b, rule) - (a == b ? 1.0 : 0.0)) < 1e-12);
  }
}

#include <doctest.h>

#include <cmath>

#include "spinorbit/errors.hpp"
#include "spinorbit/spp.hpp"

using namespace spinorbit;
namespace sf = spinorbit::specfun;

namespace {

SpinOrbitState vacuum() { return SpinOrbitState::basis_state({0, 0, Spin::up}); }

double ell_probability(const SpinOrbitState& s, int ell) {
  double p = 0.0;
  for (const auto& [m, c] : s.coefficients())
    if (m.ell == ell) p += std::norm(c);
  return p;
}

}  // namespace

TEST_CASE("azimuthal factor") {
  CHECK(azimuthal_factor(0.0) == Complex{1.0, 0.0});
  CHECK(azimuthal_factor(3.0) == Complex{0.0, 0.0});
  CHECK(azimuthal_factor(-1.0) == Complex{0.0, 0.0});
  CHECK(std::abs(azimuthal_factor(0.5)) == doctest::Approx(2.0 / M_PI).epsilon(1e-15));
  const Complex f = azimuthal_factor(0.25);
  CHECK(std::arg(f) == doctest::Approx(M_PI / 4));
  // (1/2pi) int_0^{2pi} e^{i t phi} dphi
  const double t = 0.37;
  const Complex direct = (std::polar(1.0, 2 * M_PI * t) - 1.0) / (Complex{0.0, 2 * M_PI * t});
  CHECK(std::abs(azimuthal_factor(t) - direct) < 1e-15);
}

TEST_CASE("material conversion") {
  const SppMaterial m{8e14, 2e-6, 1e-6, 0.271e-9};
  const SppSpec s = SppSpec::from_material(m);
  CHECK(s.q == doctest::Approx(-8e14 * 0.271e-9 * 2e-6 / (2 * M_PI)));
  CHECK(s.alpha0 == doctest::Approx(-8e14 * 0.271e-9 * 1e-6));
  s.validate();
  SppSpec bad = s;
  bad.q *= 1.001;
  CHECK_THROWS_AS(bad.validate(), ParameterError);
}

TEST_CASE("integer charge shifts ell without radial leakage") {
  const SpinOrbitState out = spp_apply(vacuum(), SppSpec{1.0, 0.0, {}});
  CHECK(ell_probability(out, 1) == doctest::Approx(out.captured_probability()));
  for (const auto& [m, c] : out.coefficients()) CHECK(m.ell == 1);
  CHECK(out.amplitude({0, 1, Spin::up}).real() == doctest::Approx(std::sqrt(M_PI) / 2).epsilon(1e-13));
  CHECK(std::abs(out.amplitude({1, 1, Spin::up})) == doctest::Approx(0.3133285343288751).epsilon(1e-12));
  CHECK(out.captured_probability() >= 0.998);
  const double measured_tail = 1.0 - out.captured_probability();
  CHECK(measured_tail / (1.0 / 800.0) > 0.5);
  CHECK(measured_tail / (1.0 / 800.0) < 2.0);
  CHECK(out.tail_estimate() == doctest::Approx(1.0 / 800.0));
}

TEST_CASE("q = 0 is the identity up to the base phase") {
  const SpinOrbitState out = spp_apply(vacuum(), SppSpec{0.0, 0.3, {}}, 20);
  CHECK(out.size() == 1);
  CHECK(std::abs(out.amplitude({0, 0, Spin::up}) - std::polar(1.0, 0.3)) < 1e-14);
}

TEST_CASE("fractional charge: |C_00| = |sinc(q pi)| and no radial excitation at ell = 0") {
  for (double q : {0.25, 0.5, 1.5, -0.7}) {
    const SpinOrbitState out = spp_apply(vacuum(), SppSpec{q, 0.0, {}});
    CHECK(std::abs(out.amplitude({0, 0, Spin::up})) ==
          doctest::Approx(std::abs(sf::sinc(q * M_PI))).epsilon(1e-10));
    for (const auto& [m, c] : out.coefficients())
      if (m.ell == 0) CHECK(m.n_r == 0);
    // window sum of channel weights plus tail accounts for unit probability
    CHECK(out.captured_probability() + out.tail_estimate() == doctest::Approx(1.0).epsilon(5e-3));
    CHECK(out.captured_probability() > 0.95);
  }
}

TEST_CASE("channel probabilities follow sinc^2 at large n_max") {
  const double q = 0.5;
  const SpinOrbitState out = spp_apply(vacuum(), SppSpec{q, 0.0, {}}, 200, 3);
  // ell = 0 channel is captured exactly by n_r = 0
  CHECK(ell_probability(out, 0) == doctest::Approx(std::pow(sf::sinc(q * M_PI), 2)).epsilon(1e-12));
  // ell = 1 channel: radial truncation leaves roughly sinc^2 / (4 n_max)
  const double full = std::pow(sf::sinc((q - 1) * M_PI), 2);
  CHECK(ell_probability(out, 1) < full);
  CHECK(ell_probability(out, 1) > full * (1.0 - 2.0 / 800.0));
}

TEST_CASE("spin is carried through") {
  const SpinOrbitState out = spp_apply(SpinOrbitState::basis_state({1, 2, Spin::down}), SppSpec{-2.0, 0.0, {}}, 30);
  for (const auto& [m, c] : out.coefficients()) {
    CHECK(m.spin == Spin::down);
    CHECK(m.ell == 0);
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(spp_apply(vacuum(), SppSpec{1.0, 0.0, {}}, 600), ParameterError);
  CHECK_THROWS_AS(spp_apply(vacuum(), SppSpec{1.0, 0.0, {}}, 10, 0), ParameterError);
  const SpinOrbitState half({{{0, 0, Spin::up}, 0.5}}, 1e-7);
  CHECK_THROWS_AS(spp_apply(half, SppSpec{1.0, 0.0, {}}), ParameterError);
  CHECK_THROWS_AS(spp_apply(vacuum(), SppSpec{NAN, 0.0, {}}), ParameterError);
}

TEST_CASE("probability table columns and the q = 0 row") {
  const std::vector<ModeIndex> modes{
      {0, 0, Spin::up}, {0, 1, Spin::up}, {0, -1, Spin::up}, {1, 1, Spin::up}, {1, -1, Spin::up}};
  const SweepTable t = spp_probability_table({0.0, 0.5, 1.0}, modes);
  CHECK(t.columns() == std::vector<std::string>{"q", "p_n0_l0", "p_n0_l1", "p_n0_lm1", "p_n1_l1", "p_n1_lm1"});
  CHECK(t.at(0, "p_n0_l0") == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(t.at(0, "p_n0_l1") == 0.0);
  CHECK(t.at(2, "p_n0_l1") == doctest::Approx(M_PI / 4).epsilon(1e-13));
  CHECK(t.at(1, "p_n0_l0") == doctest::Approx(4 / (M_PI * M_PI)).epsilon(1e-14));
}

#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "spinorbit/entanglement.hpp"
#include "spinorbit/errors.hpp"

using namespace spinorbit;
namespace sf = spinorbit::specfun;

namespace {

const Complex I{0.0, 1.0};

Eigen::Vector4cd random_state(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Vector4cd v;
  for (int i = 0; i < 4; ++i) v[i] = {g(rng), g(rng)};
  return v.normalized();
}

Eigen::Matrix2cd random_unitary(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Matrix2cd m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = {g(rng), g(rng)};
  return Eigen::HouseholderQR<Eigen::Matrix2cd>(m).householderQ();
}

DensityMatrix random_mixed(std::mt19937_64& rng, int rank) {
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  std::uniform_real_distribution<double> u(0.1, 1.0);
  for (int k = 0; k < rank; ++k) {
    const Eigen::Vector4cd v = random_state(rng);
    rho += u(rng) * v * v.adjoint();
  }
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(two_qubit_basis(), rho);
}

}  // namespace

TEST_CASE("Bell and product states") {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::Vector4cd bell(s, 0, 0, s), product(1, 0, 0, 0), singlet(0, s, -s, 0);
  CHECK(concurrence_pure(bell) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(concurrence_pure(product) == 0.0);
  CHECK(concurrence_mixed(DensityMatrix::pure(two_qubit_basis(), bell)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(concurrence_mixed(DensityMatrix::pure(two_qubit_basis(), singlet)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(concurrence_mixed(DensityMatrix::pure(two_qubit_basis(), product)) < 1e-15);
  CHECK(concurrence_mixed(DensityMatrix(two_qubit_basis(), Eigen::Matrix4cd::Identity() / 4.0)) == 0.0);
}

TEST_CASE("Werner states: C = max(0, (3p - 1)/2)") {
  const double s = 1.0 / std::sqrt(2.0);
  const Eigen::Vector4cd bell(s, 0, 0, s);
  for (double p : {0.0, 0.2, 1.0 / 3, 0.5, 0.8, 1.0}) {
    const Eigen::Matrix4cd rho = p * bell * bell.adjoint() + (1 - p) / 4 * Eigen::Matrix4cd::Identity();
    const DensityMatrix d(two_qubit_basis(), rho);
    const double expect = std::max(0.0, (3 * p - 1) / 2);
    CHECK(concurrence_mixed(d) == doctest::Approx(expect).epsilon(1e-13).scale(1.0));
    CHECK(x_state_concurrence(d) == doctest::Approx(expect).epsilon(1e-13).scale(1.0));
    CHECK(concurrence_mixed_eigen(d) == doctest::Approx(expect).epsilon(1e-7).scale(1.0));
  }
}

TEST_CASE("Wootters route equals the pure-state formula on random two-branch states") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int k = 0; k < 200; ++k) {
    TwoBranchState t{0, {g(rng), g(rng)}, {g(rng), g(rng)}};
    const double n = std::sqrt(std::norm(t.up) + std::norm(t.down));
    t.up /= n;
    t.down /= n;
    Eigen::Vector4cd v(t.up, 0, 0, t.down);
    const double w = concurrence_mixed(DensityMatrix::pure(two_qubit_basis(), v));
    CHECK(std::abs(w - 2 * std::abs(t.up) * std::abs(t.down)) < 1e-8);
    CHECK(std::abs(w - concurrence_pure(t)) < 1e-8);
  }
}

TEST_CASE("Wootters route equals the pure-state formula on general pure states") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 200; ++k) {
    const Eigen::Vector4cd v = random_state(rng);
    // |2 (ad - bc)| for psi = (a, b, c, d)
    const double expect = 2 * std::abs(v[0] * v[3] - v[1] * v[2]);
    CHECK(concurrence_mixed(DensityMatrix::pure(two_qubit_basis(), v)) == doctest::Approx(expect).epsilon(1e-10).scale(1.0));
    CHECK(concurrence_pure(v) == doctest::Approx(expect).epsilon(1e-7).scale(1.0));
  }
}

TEST_CASE("local unitaries leave the concurrence unchanged") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 50; ++k) {
    const DensityMatrix rho = random_mixed(rng, 1 + k % 4);
    Eigen::Matrix4cd u;
    const Eigen::Matrix2cd a = random_unitary(rng), b = random_unitary(rng);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) u.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    Eigen::Matrix4cd rotated = u * rho.entries() * u.adjoint();
    rotated = 0.5 * (rotated + rotated.adjoint()).eval();
    CHECK(concurrence_mixed(DensityMatrix(two_qubit_basis(), rotated)) ==
          doctest::Approx(concurrence_mixed(rho)).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("eigenvalue route cross-checks the singular-value route") {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 100; ++k) {
    const DensityMatrix rho = random_mixed(rng, 1 + k % 4);
    CHECK(std::abs(concurrence_mixed_eigen(rho) - concurrence_mixed(rho)) < 1e-7);
    const double c = concurrence_mixed(rho);
    CHECK(c >= 0.0);
    CHECK(c <= 1.0 + 1e-12);
  }
}

TEST_CASE("density matrix invariants") {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity() / 4.0;
  CHECK_NOTHROW(DensityMatrix(two_qubit_basis(), m));
  Eigen::Matrix4cd non_hermitian = m;
  non_hermitian(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix(two_qubit_basis(), non_hermitian), ParameterError);
  CHECK_THROWS_AS(DensityMatrix(two_qubit_basis(), 2.0 * m), ParameterError);
  Eigen::Matrix4cd negative = Eigen::Matrix4cd::Zero();
  negative(0, 0) = 1.2;
  negative(1, 1) = -0.2;
  CHECK_THROWS_AS(DensityMatrix(two_qubit_basis(), negative), ParameterError);
  CHECK_THROWS_AS(DensityMatrix(two_qubit_basis(), Eigen::Matrix2cd::Identity() / 2.0), ParameterError);
  CHECK_THROWS_AS(DensityMatrix::pure(two_qubit_basis(), Eigen::Vector4cd(1, 1, 0, 0)), ParameterError);

  const DensityMatrix d(two_qubit_basis(3), m);
  CHECK(d.at({3, Spin::up}, {3, Spin::up}) == Complex{0.25, 0.0});
  CHECK(d.at({9, Spin::up}, {3, Spin::up}) == Complex{0.0, 0.0});
  CHECK(d.purity() == doctest::Approx(0.25));
}

TEST_CASE("x_state_concurrence rejects non-X matrices") {
  std::mt19937_64 rng(29);
  const DensityMatrix rho = random_mixed(rng, 3);
  CHECK_THROWS_AS(x_state_concurrence(rho), ParameterError);
}

TEST_CASE("filtered concurrences at ratio 1.82") {
  const QuadBranches b = quad_branches({0, 0, Spin::up}, 1.82, 60, sf::radial_quadrature(128));
  const double conc[] = {0.999999622855555, 0.711582339037133, 0.554057951285291};
  const double prob[] = {0.899980789712178, 0.0985221600235405, 0.00148880947049496};
  for (int eta = 0; eta < 3; ++eta) {
    const FilteredState f = filter_radial(b, eta);
    CHECK(concurrence_pure(f) == doctest::Approx(conc[eta]).epsilon(1e-10));
    CHECK(f.p_eta == doctest::Approx(prob[eta]).epsilon(1e-10));
    CHECK(concurrence_pure(f) == doctest::Approx(2 * std::abs(b.same_spin[eta] * b.flipped[eta]) / f.p_eta).epsilon(1e-10));
    // Wootters route on the same filtered state
    Eigen::Vector4cd v(f.amp_up, 0, 0, I * f.amp_down);
    CHECK(concurrence_mixed(DensityMatrix::pure(two_qubit_basis(), v)) == doctest::Approx(conc[eta]).epsilon(1e-10));
  }
  CHECK_THROWS_AS(filter_radial(b, 61), ParameterError);
}

TEST_CASE("degenerate filter") {
  QuadBranches b;
  b.same_spin = {0.0};
  b.flipped = {0.0};
  const FilteredState f = filter_radial(b, 0);
  CHECK(f.degenerate);
  CHECK(concurrence_pure(f) == 0.0);
}

TEST_CASE("traced state at ratio 1.82") {
  const QuadBranches b = quad_branches({0, 0, Spin::up}, 1.82, 60, sf::radial_quadrature(128));
  const DensityMatrix rho = rho_traced(b);
  CHECK(concurrence_mixed(rho) == doctest::Approx(0.970915816998).epsilon(1e-10));
  CHECK(x_state_concurrence(rho) == doctest::Approx(concurrence_mixed(rho)).epsilon(1e-12));
  // rank-2 X state with empty middle block: C = 2|rho_14| and purity < 1
  CHECK(rho.purity() < 1.0);
  CHECK(concurrence_mixed(rho) == doctest::Approx(2 * std::abs(rho.entries()(0, 3))).epsilon(1e-13));
  CHECK(rho.labels() == two_qubit_basis(0));
}

TEST_CASE("traced matrix from a state equals the one from branch families") {
  const auto rule = sf::radial_quadrature(128);
  const SpinOrbitState out =
      quad_apply(SpinOrbitState::basis_state({0, 0, Spin::up}), QuadrupoleSpec::from_ratio(2.4), 40, rule);
  const DensityMatrix a = rho_traced(out);
  const DensityMatrix b = rho_traced(quad_branches({0, 0, Spin::up}, 2.4, 40, rule));
  CHECK((a.entries() - b.entries()).cwiseAbs().maxCoeff() < 1e-14);

  const SpinOrbitState down = quad_apply(SpinOrbitState::basis_state({1, 0, Spin::down}), QuadrupoleSpec::from_ratio(2.4), 40, rule);
  const DensityMatrix c = rho_traced(down);
  CHECK(c.labels() == two_qubit_basis(-1));
  CHECK(concurrence_mixed(c) == doctest::Approx(x_state_concurrence(c)).epsilon(1e-12));

  const SpinOrbitState wide({{{0, 0, Spin::up}, std::sqrt(0.5)}, {{0, 2, Spin::up}, std::sqrt(0.5)}}, 1e-7);
  CHECK_THROWS_AS(rho_traced(wide), ParameterError);
}

TEST_CASE("concurrence sweep tables") {
  const ConcurrenceSweep s = concurrence_sweep(linear_grid(1.0, 3.0, 0.005), {0, 1, 2});
  CHECK(s.filtered.columns() ==
        std::vector<std::string>{"ratio", "conc_eta0", "conc_eta1", "conc_eta2", "p_eta0", "p_eta1", "p_eta2"});
  CHECK(s.traced.columns() == std::vector<std::string>{"ratio", "conc_traced"});
  CHECK(s.max_concurrence == doctest::Approx(0.9716066541).epsilon(1e-8));
  CHECK(s.argmax_ratio == doctest::Approx(1.875).epsilon(1e-12));
  // eta = 0 concurrence peaks at 1.82
  const auto c0 = s.filtered.column("conc_eta0");
  const auto it = std::max_element(c0.begin(), c0.end());
  CHECK(s.filtered.rows()[it - c0.begin()][0] == doctest::Approx(1.82).epsilon(1e-12));
}

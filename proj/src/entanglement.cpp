#include "spinorbit/entanglement.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "spinorbit/errors.hpp"

namespace spinorbit {

namespace {

using Matrix4 = Eigen::Matrix4cd;

// sigma_y (x) sigma_y in two_qubit_basis order.
Matrix4 spin_flip() {
  Matrix4 y = Matrix4::Zero();
  y(0, 3) = -1.0;
  y(1, 2) = 1.0;
  y(2, 1) = 1.0;
  y(3, 0) = -1.0;
  return y;
}

int label_index(const std::vector<OrbitalSpinLabel>& labels, const OrbitalSpinLabel& l) {
  const auto it = std::find(labels.begin(), labels.end(), l);
  return it == labels.end() ? -1 : static_cast<int>(it - labels.begin());
}

void require_two_qubit(const DensityMatrix& rho, const char* who) {
  if (rho.dimension() != 4) throw ParameterError(std::string(who) + ": density matrix must be 4x4");
}

double wootters_combination(std::array<double, 4> l) {
  std::sort(l.begin(), l.end(), std::greater<>());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

}  // namespace

std::vector<OrbitalSpinLabel> two_qubit_basis(int ell_low) {
  return {{ell_low, Spin::up}, {ell_low, Spin::down}, {ell_low + 1, Spin::up}, {ell_low + 1, Spin::down}};
}

DensityMatrix::DensityMatrix(std::vector<OrbitalSpinLabel> labels, Eigen::MatrixXcd entries)
    : labels_(std::move(labels)), entries_(std::move(entries)) {
  const auto n = static_cast<Eigen::Index>(labels_.size());
  if (n == 0 || entries_.rows() != n || entries_.cols() != n)
    throw ParameterError("DensityMatrix: entries must be square and match the label count");
  if (std::set<OrbitalSpinLabel>(labels_.begin(), labels_.end()).size() != labels_.size())
    throw ParameterError("DensityMatrix: duplicate labels");
  if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTolerance)
    throw ParameterError("DensityMatrix: not Hermitian");
  const Complex tr = entries_.trace();
  if (std::abs(tr - 1.0) > kTraceTolerance) throw ParameterError("DensityMatrix: trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(entries_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kEigenTolerance) throw ParameterError("DensityMatrix: not positive semidefinite");
}

DensityMatrix DensityMatrix::pure(std::vector<OrbitalSpinLabel> labels, const Eigen::VectorXcd& psi) {
  if (std::abs(psi.norm() - 1.0) > kTraceTolerance) throw ParameterError("DensityMatrix::pure: vector not normalized");
  return DensityMatrix(std::move(labels), psi * psi.adjoint());
}

Complex DensityMatrix::at(const OrbitalSpinLabel& row, const OrbitalSpinLabel& col) const {
  const int r = label_index(labels_, row);
  const int c = label_index(labels_, col);
  if (r < 0 || c < 0) return {};
  return entries_(r, c);
}

double DensityMatrix::purity() const { return (entries_ * entries_).trace().real(); }

TwoBranchState FilteredState::as_state(int ell) const { return {ell, amp_up, Complex{0.0, amp_down}}; }

FilteredState filter_radial(const QuadBranches& branches, int eta) {
  if (eta < 0 || eta >= static_cast<int>(branches.same_spin.size()))
    throw ParameterError("filter_radial: eta outside the computed radial range");
  FilteredState f;
  f.eta = eta;
  const double up = branches.same_spin[eta];
  const double down = branches.flipped[eta];
  f.p_eta = up * up + down * down;
  if (f.p_eta == 0.0) {
    f.degenerate = true;
    return f;
  }
  const double s = std::sqrt(f.p_eta);
  f.amp_up = up / s;
  f.amp_down = down / s;
  return f;
}

double concurrence_pure(const Eigen::Vector4cd& psi) {
  if (std::abs(psi.norm() - 1.0) > 1e-10) throw ParameterError("concurrence_pure: state not normalized");
  // rho_S(s, s') = sum_o psi(o, s) psi(o, s')^*, index 2 o + s
  Eigen::Matrix2cd rho_s = Eigen::Matrix2cd::Zero();
  for (int o = 0; o < 2; ++o)
    for (int s = 0; s < 2; ++s)
      for (int t = 0; t < 2; ++t) rho_s(s, t) += psi[2 * o + s] * std::conj(psi[2 * o + t]);
  const double purity = (rho_s * rho_s).trace().real();
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - purity)));
}

double concurrence_pure(const TwoBranchState& psi) {
  Eigen::Vector4cd v;
  v << psi.up, 0.0, 0.0, psi.down;
  return concurrence_pure(v);
}

double concurrence_pure(const FilteredState& psi) {
  if (psi.degenerate) return 0.0;
  return concurrence_pure(psi.as_state());
}

double concurrence_mixed(const DensityMatrix& rho) {
  require_two_qubit(rho, "concurrence_mixed");
  const Matrix4 r = rho.entries();
  Eigen::SelfAdjointEigenSolver<Matrix4> es(r);
  Matrix4 v = es.eigenvectors();
  for (int k = 0; k < 4; ++k) v.col(k) *= std::sqrt(std::max(0.0, es.eigenvalues()[k]));
  const Matrix4 tau = v.transpose() * spin_flip() * v;
  const Eigen::Vector4d sv = Eigen::JacobiSVD<Matrix4>(tau).singularValues();
  return wootters_combination({sv[0], sv[1], sv[2], sv[3]});
}

double concurrence_mixed_eigen(const DensityMatrix& rho) {
  require_two_qubit(rho, "concurrence_mixed_eigen");
  const Matrix4 r = rho.entries();
  const Matrix4 flipped = spin_flip() * r.conjugate() * spin_flip();
  Eigen::ComplexEigenSolver<Matrix4> es(r * flipped, false);
  if (es.info() != Eigen::Success) throw NumericalError("concurrence_mixed_eigen: eigensolver failed");
  std::array<double, 4> l{};
  for (int i = 0; i < 4; ++i) {
    const Complex mu = es.eigenvalues()[i];
    if (std::abs(mu.imag()) > 1e-10) throw NumericalError("concurrence_mixed_eigen: complex eigenvalue residue");
    if (mu.real() < -1e-10) throw NumericalError("concurrence_mixed_eigen: negative eigenvalue beyond round-off");
    l[i] = std::sqrt(std::max(0.0, mu.real()));
  }
  return wootters_combination(l);
}

double x_state_concurrence(const DensityMatrix& rho) {
  require_two_qubit(rho, "x_state_concurrence");
  const auto& m = rho.entries();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j && i + j != 3 && std::abs(m(i, j)) > 1e-12)
        throw ParameterError("x_state_concurrence: density matrix is not X-shaped");
  const double d0 = m(0, 0).real(), d1 = m(1, 1).real(), d2 = m(2, 2).real(), d3 = m(3, 3).real();
  const double outer = std::abs(m(0, 3)) - std::sqrt(std::max(0.0, d1 * d2));
  const double inner = std::abs(m(1, 2)) - std::sqrt(std::max(0.0, d0 * d3));
  return 2.0 * std::max({0.0, outer, inner});
}

DensityMatrix rho_traced(const SpinOrbitState& state) {
  if (state.size() == 0) throw ParameterError("rho_traced: empty state");
  int lo = state.coefficients().begin()->first.ell, hi = lo;
  for (const auto& [mode, c] : state.coefficients()) {
    lo = std::min(lo, mode.ell);
    hi = std::max(hi, mode.ell);
  }
  if (hi - lo > 1) throw ParameterError("rho_traced: state spans more than two ell values");

  const auto labels = two_qubit_basis(lo);
  std::map<int, Eigen::Vector4cd> by_radial;
  for (const auto& [mode, c] : state.coefficients()) {
    auto [it, inserted] = by_radial.try_emplace(mode.n_r, Eigen::Vector4cd::Zero());
    it->second[label_index(labels, {mode.ell, mode.spin})] += c;
  }
  Matrix4 rho = Matrix4::Zero();
  for (const auto& [n, psi] : by_radial) rho += psi * psi.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(labels, rho);
}

DensityMatrix rho_traced(const QuadBranches& branches) {
  const ModeIndex& in = branches.input;
  const int lo = std::min(in.ell, branches.flipped_ell);
  const auto labels = two_qubit_basis(lo);
  const int same = label_index(labels, {in.ell, in.spin});
  const int flip = label_index(labels, {branches.flipped_ell, flipped(in.spin)});

  Matrix4 rho = Matrix4::Zero();
  const Complex i{0.0, 1.0};
  for (std::size_t n = 0; n < branches.same_spin.size(); ++n) {
    Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
    psi[same] = branches.same_spin[n];
    psi[flip] = i * branches.flipped[n];
    rho += psi * psi.adjoint();
  }
  rho /= rho.trace().real();
  return DensityMatrix(labels, rho);
}

ConcurrenceSweep concurrence_sweep(const std::vector<double>& ratio_grid, const std::vector<int>& etas, int n_max,
                                   int quadrature_order) {
  std::vector<std::string> columns{"ratio"};
  for (int e : etas) columns.push_back("conc_eta" + std::to_string(e));
  for (int e : etas) columns.push_back("p_eta" + std::to_string(e));

  ConcurrenceSweep out{SweepTable(columns), SweepTable({"ratio", "conc_traced"}), 0.0, -1.0};
  for (SweepTable* t : {&out.filtered, &out.traced}) {
    t->set_metadata("input", "(0,0,up)");
    t->set_metadata("n_max_quad", static_cast<double>(n_max));
    t->set_metadata("quadrature_order", static_cast<double>(quadrature_order));
  }

  const QuadOverlapKernel kernel({0, 0, Spin::up}, n_max, specfun::radial_quadrature(quadrature_order));
  for (double ratio : ratio_grid) {
    const QuadBranches b = kernel.branches(ratio);
    std::vector<double> row{ratio};
    std::vector<double> probs;
    for (int e : etas) {
      const FilteredState f = filter_radial(b, e);
      row.push_back(concurrence_pure(f));
      probs.push_back(f.p_eta);
    }
    row.insert(row.end(), probs.begin(), probs.end());
    out.filtered.add_row(std::move(row));

    const double c = concurrence_mixed(rho_traced(b));
    out.traced.add_row({ratio, c});
    if (c > out.max_concurrence) {
      out.max_concurrence = c;
      out.argmax_ratio = ratio;
    }
  }
  out.traced.set_metadata("argmax_ratio", out.argmax_ratio);
  out.traced.set_metadata("max_conc_traced", out.max_concurrence);
  return out;
}

}  // namespace spinorbit

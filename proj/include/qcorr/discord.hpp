// discord.hpp
// Quantum discord and dissonance via entropy minimization over local
// dephasing bases, the symmetric-basis sweep for W states, and the
// correlation report around the total-correlation conjecture.

#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qcorr/numerics.hpp"
#include "qcorr/optimize.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

struct LocalBasisSet {
  std::vector<Eigen::Matrix2cd> bases;  // columns are the basis vectors

  explicit LocalBasisSet(std::vector<Eigen::Matrix2cd> b) : bases(std::move(b)) {
    for (const auto& u : bases)
      if ((u.adjoint() * u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::domain_error("LocalBasisSet: basis is not unitary");
  }

  static LocalBasisSet computational(int num_qubits) {
    return LocalBasisSet(
        std::vector<Eigen::Matrix2cd>(static_cast<std::size_t>(num_qubits),
                                      Eigen::Matrix2cd::Identity()));
  }

  // Dephasing depends only on the projector of the first column, so two
  // angles per qubit parameterize every basis choice.
  static Eigen::Matrix2cd from_angles(double theta, double phi) {
    Eigen::Matrix2cd u;
    u(0, 0) = std::cos(theta);
    u(1, 0) = std::polar(std::sin(theta), phi);
    u(0, 1) = -std::polar(std::sin(theta), -phi);
    u(1, 1) = std::cos(theta);
    return u;
  }

  Mat product_unitary() const {
    Mat b(1, 1);
    b(0, 0) = 1.0;
    for (const auto& u : bases) {
      Mat next(b.rows() * 2, b.cols() * 2);
      next.topLeftCorner(b.rows(), b.cols()) = u(0, 0) * b;
      next.topRightCorner(b.rows(), b.cols()) = u(0, 1) * b;
      next.bottomLeftCorner(b.rows(), b.cols()) = u(1, 0) * b;
      next.bottomRightCorner(b.rows(), b.cols()) = u(1, 1) * b;
      b.swap(next);
    }
    return b;
  }
};

namespace detail {

inline Eigen::VectorXd dephasing_probs(const DensityMatrix& rho, const Mat& b) {
  return (b.adjoint() * rho.mat() * b).diagonal().real();
}

}  // namespace detail

inline DensityMatrix dephase(const DensityMatrix& rho, const LocalBasisSet& basis) {
  if (static_cast<int>(basis.bases.size()) != rho.num_qubits())
    throw std::invalid_argument("dephase: qubit counts differ");
  const Mat b = basis.product_unitary();
  const Eigen::VectorXd p = detail::dephasing_probs(rho, b);
  return DensityMatrix(rho.num_qubits(), b * p.asDiagonal() * b.adjoint());
}

inline double dephased_entropy(const DensityMatrix& rho, const LocalBasisSet& basis) {
  return shannon_entropy(detail::dephasing_probs(rho, basis.product_unitary()));
}

struct BasisSearchResult {
  double value = 0.0;          // entropy excess over S(rho), in bits
  LocalBasisSet basis;         // best dephasing basis found
  double state_entropy = 0.0;  // S(rho)
  double dephased = 0.0;       // S of the dephased state in the best basis
};

namespace detail {

// Coordinate descent over the two dephasing angles of each qubit.
inline double refine_basis(const DensityMatrix& rho, std::vector<double>& theta,
                           std::vector<double>& phi, int max_sweeps = 60) {
  const int N = rho.num_qubits();
  auto entropy_at = [&](const std::vector<double>& th, const std::vector<double>& ph) {
    std::vector<Eigen::Matrix2cd> bs;
    for (int q = 0; q < N; ++q)
      bs.push_back(LocalBasisSet::from_angles(th[static_cast<std::size_t>(q)],
                                              ph[static_cast<std::size_t>(q)]));
    return dephased_entropy(rho, LocalBasisSet(std::move(bs)));
  };

  double cur = entropy_at(theta, phi);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    const double before = cur;
    for (int q = 0; q < N; ++q) {
      auto fth = [&](double x) {
        auto th = theta;
        th[static_cast<std::size_t>(q)] = x;
        return -entropy_at(th, phi);
      };
      auto [xt, vt] = detail::scan_then_golden(fth, 0.0, M_PI / 2, 33);
      if (-vt < cur) { cur = -vt; theta[static_cast<std::size_t>(q)] = xt; }
      auto fph = [&](double x) {
        auto ph = phi;
        ph[static_cast<std::size_t>(q)] = x;
        return -entropy_at(theta, ph);
      };
      auto [xp, vp] = detail::scan_then_golden(fph, 0.0, 2 * M_PI, 33);
      if (-vp < cur) { cur = -vp; phi[static_cast<std::size_t>(q)] = xp; }
    }
    if (before - cur < 1e-13) break;
  }
  return cur;
}

inline std::pair<double, double> basis_angles_from_unitary(const Eigen::Matrix2cd& u) {
  const double theta = std::atan2(std::abs(u(1, 0)), std::abs(u(0, 0)));
  double phi = std::arg(u(1, 0)) - std::arg(u(0, 0));
  if (phi < 0) phi += 2 * M_PI;
  return {theta, phi};
}

inline BasisSearchResult min_dephased_entropy(const DensityMatrix& rho,
                                              const OptimizerConfig& cfg) {
  cfg.validate();
  const int N = rho.num_qubits();

  // Candidate bases: the computational basis plus seeded Haar-random ones.
  double best_entropy = dephased_entropy(rho, LocalBasisSet::computational(N));
  std::vector<double> best_theta(static_cast<std::size_t>(N), 0.0);
  std::vector<double> best_phi(static_cast<std::size_t>(N), 0.0);
  std::vector<double> rand_theta, rand_phi;
  double rand_entropy = std::numeric_limits<double>::infinity();
  for (int start = 0; start < cfg.num_starts; ++start) {
    auto rng = detail::start_rng(cfg.seed, static_cast<std::uint64_t>(start));
    std::vector<Eigen::Matrix2cd> bs;
    std::vector<double> th(static_cast<std::size_t>(N)), ph(static_cast<std::size_t>(N));
    for (int q = 0; q < N; ++q) {
      const Eigen::Matrix2cd u = detail::haar_unitary2(rng);
      auto [t, p] = basis_angles_from_unitary(u);
      th[static_cast<std::size_t>(q)] = t;
      ph[static_cast<std::size_t>(q)] = p;
      bs.push_back(LocalBasisSet::from_angles(t, p));
    }
    const double s = dephased_entropy(rho, LocalBasisSet(std::move(bs)));
    if (s < rand_entropy) {
      rand_entropy = s;
      rand_theta = th;
      rand_phi = ph;
    }
  }

  // Refine both the computational candidate and the best random one.
  const double refined_comp = refine_basis(rho, best_theta, best_phi);
  double refined = refined_comp;
  std::vector<double>* theta = &best_theta;
  std::vector<double>* phi = &best_phi;
  if (!rand_theta.empty()) {
    const double refined_rand = refine_basis(rho, rand_theta, rand_phi);
    if (refined_rand < refined) {
      refined = refined_rand;
      theta = &rand_theta;
      phi = &rand_phi;
    }
  }
  (void)best_entropy;

  std::vector<Eigen::Matrix2cd> bs;
  for (int q = 0; q < N; ++q)
    bs.push_back(LocalBasisSet::from_angles((*theta)[static_cast<std::size_t>(q)],
                                            (*phi)[static_cast<std::size_t>(q)]));
  BasisSearchResult out{0.0, LocalBasisSet(std::move(bs)), 0.0, 0.0};
  out.state_entropy = von_neumann_entropy(rho);
  out.dephased = refined;
  out.value = std::max(0.0, refined - out.state_entropy);
  return out;
}

}  // namespace detail

// Upper bound on the discord: best basis found by seeded random search plus
// coordinate refinement.
inline BasisSearchResult discord_search(const DensityMatrix& rho,
                                        const OptimizerConfig& cfg = {}) {
  return detail::min_dephased_entropy(rho, cfg);
}

// Same machinery aimed at a separable state (caller asserts separability).
inline BasisSearchResult dissonance(const DensityMatrix& sigma,
                                    const OptimizerConfig& cfg = {}) {
  return detail::min_dephased_entropy(sigma, cfg);
}

// |<x'_k|W>|^2 for a symmetric local basis with parameter p, where k is the
// number of 1s in the basis string. Removable 0/0 boundaries are simplified
// algebraically before evaluation.
inline double w_lambda(int num_qubits, int k, double p) {
  if (k < 0 || k > num_qubits) throw std::domain_error("w_lambda: weight out of range");
  if (p < 0.0 || p > 1.0) throw std::domain_error("w_lambda: p outside [0,1]");
  const double N = num_qubits;
  if (k == 0) return N * std::pow(p, num_qubits - 1) * (1.0 - p);
  if (k == num_qubits) return N * p * std::pow(1.0 - p, num_qubits - 1);
  const double bracket = N * (1.0 - p) - k;
  return std::pow(p, num_qubits - k - 1) * std::pow(1.0 - p, k - 1) * bracket * bracket / N;
}

inline double w_symmetric_entropy(int num_qubits, double p) {
  double s = 0.0;
  for (int k = 0; k <= num_qubits; ++k) {
    const double lam = w_lambda(num_qubits, k, p);
    if (lam > 0.0) s -= binomial(num_qubits, k) * lam * std::log2(lam);
  }
  return s;
}

struct SweepResult {
  std::vector<double> grid;
  std::vector<double> entropy;
  std::vector<double> argmin;  // p values attaining the minimum within 1e-12
  double min_value = 0.0;
};

inline SweepResult w_discord_sweep(int num_qubits, const std::vector<double>& grid) {
  if (grid.size() < 2) throw std::invalid_argument("w_discord_sweep: grid too small");
  SweepResult out;
  out.grid = grid;
  out.min_value = std::numeric_limits<double>::infinity();
  for (double p : grid) {
    const double s = w_symmetric_entropy(num_qubits, p);
    out.entropy.push_back(s);
    out.min_value = std::min(out.min_value, s);
  }
  for (std::size_t k = 0; k < grid.size(); ++k)
    if (out.entropy[k] <= out.min_value + 1e-12) out.argmin.push_back(grid[k]);
  return out;
}

inline DensityMatrix marginal(const DensityMatrix& rho, int qubit) {
  return partial_trace(rho, {qubit});
}

// T = S(rho || product of marginals) = sum_i S(rho_i) - S(rho).
inline double total_correlation(const DensityMatrix& rho) {
  double t = -von_neumann_entropy(rho);
  for (int q = 1; q <= rho.num_qubits(); ++q) t += von_neumann_entropy(marginal(rho, q));
  return std::max(0.0, t);
}

// The product of marginals minimizes S(rho || pi) over product states, so the
// closed form coincides with T; a seeded sampling check lives next to it.
inline double classical_correlation(const DensityMatrix& rho) {
  return total_correlation(rho);
}

// Best sampled value minus the closed form; nonnegative up to noise when the
// closed-form minimizer is correct.
inline double classical_correlation_sampling_gap(const DensityMatrix& rho,
                                                 std::uint64_t seed = 0,
                                                 int num_samples = 200) {
  const int N = rho.num_qubits();
  std::vector<DensityMatrix> margs;
  for (int q = 1; q <= N; ++q) margs.push_back(marginal(rho, q));

  double best = std::numeric_limits<double>::infinity();
  for (int sample = 0; sample < num_samples; ++sample) {
    auto rng = detail::start_rng(seed, static_cast<std::uint64_t>(sample));
    std::normal_distribution<double> g;
    Mat pi(1, 1);
    pi(0, 0) = 1.0;
    for (int q = 0; q < N; ++q) {
      // Random perturbation of the marginal, kept positive definite.
      Mat h(2, 2);
      h << cplx(g(rng), 0), cplx(g(rng), g(rng)), cplx(0, 0), cplx(g(rng), 0);
      h(1, 0) = std::conj(h(0, 1));
      Mat f = margs[static_cast<std::size_t>(q)].mat() + 0.05 * g(rng) * h;
      f = (f + f.adjoint()) / 2.0;
      Eigen::SelfAdjointEigenSolver<Mat> es(f);
      Eigen::VectorXd ev = es.eigenvalues().cwiseMax(1e-6);
      ev /= ev.sum();
      f = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
      Mat next(pi.rows() * 2, pi.cols() * 2);
      next.topLeftCorner(pi.rows(), pi.cols()) = f(0, 0) * pi;
      next.topRightCorner(pi.rows(), pi.cols()) = f(0, 1) * pi;
      next.bottomLeftCorner(pi.rows(), pi.cols()) = f(1, 0) * pi;
      next.bottomRightCorner(pi.rows(), pi.cols()) = f(1, 1) * pi;
      pi.swap(next);
    }
    best = std::min(best, relative_entropy(rho, DensityMatrix(N, std::move(pi))));
  }
  return best - classical_correlation(rho);
}

struct CorrelationsReport {
  double total = 0.0;        // T
  double discord = 0.0;      // D
  double entanglement = 0.0; // E (supplied, REE when available)
  double dissonance = 0.0;   // Q
  double classical = 0.0;    // C of rho
  double classical_css = 0.0;  // C evaluated at the CSS, when available
  bool conjecture_holds = false;  // T > E + Q + C_css
};

inline CorrelationsReport correlations_report(const DensityMatrix& rho, double e_value,
                                              const std::optional<DensityMatrix>& css = {},
                                              const OptimizerConfig& cfg = {}) {
  CorrelationsReport r;
  r.total = total_correlation(rho);
  r.discord = discord_search(rho, cfg).value;
  r.entanglement = e_value;
  r.classical = classical_correlation(rho);
  if (css.has_value()) {
    r.dissonance = dissonance(*css, cfg).value;
    r.classical_css = classical_correlation(*css);
  } else {
    r.classical_css = r.classical;
  }
  r.conjecture_holds = r.total > r.entanglement + r.dissonance + r.classical_css;
  return r;
}

}  // namespace qcorr

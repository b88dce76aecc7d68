// ree.hpp
// Relative entropy of entanglement machinery: the L_sigma operator of the
// closest-separable-state criterion, its maximization over product states,
// and the standard lower bounds.

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qcorr/numerics.hpp"
#include "qcorr/optimize.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

// L_sigma(rho) in sigma's eigenbasis restricted to its support:
// [L]_{kl} = b_{kl} (ln a_k - ln a_l)/(a_k - a_l), degenerate branch b_{kl}/a.
// Natural logarithm; the criterion value is then self-normalized to 1.
inline Mat l_sigma(const DensityMatrix& sigma, const DensityMatrix& rho) {
  if (sigma.dim() != rho.dim()) throw std::invalid_argument("l_sigma: dimension mismatch");
  const Spectrum spec = eigh(sigma.mat());

  std::vector<Eigen::Index> support;
  double kernel_weight = 0.0;
  double amax = 0.0;
  for (Eigen::Index k = 0; k < spec.eigenvalues.size(); ++k) {
    if (spec.eigenvalues(k) > kSupportEps) {
      support.push_back(k);
      amax = std::max(amax, spec.eigenvalues(k));
    } else {
      kernel_weight +=
          (spec.eigenvectors.col(k).adjoint() * rho.mat() * spec.eigenvectors.col(k))
              .value()
              .real();
    }
  }
  if (kernel_weight > 1e-10)
    throw std::domain_error("l_sigma: support of rho leaks outside the support of sigma");

  Mat out = Mat::Zero(sigma.dim(), sigma.dim());
  for (Eigen::Index k : support)
    for (Eigen::Index l : support) {
      const double ak = spec.eigenvalues(k), al = spec.eigenvalues(l);
      const cplx bkl =
          (spec.eigenvectors.col(k).adjoint() * rho.mat() * spec.eigenvectors.col(l)).value();
      const double factor = std::abs(ak - al) < 1e-8 * amax
                                ? 2.0 / (ak + al)
                                : (std::log(ak) - std::log(al)) / (ak - al);
      out += factor * bkl * (spec.eigenvectors.col(k) * spec.eigenvectors.col(l).adjoint());
    }
  return out;
}

enum class CssVerdict { kConfirmedCss, kRejected, kInconclusive };

inline std::string to_string(CssVerdict v) {
  switch (v) {
    case CssVerdict::kConfirmedCss: return "confirmed-CSS";
    case CssVerdict::kRejected: return "rejected";
    default: return "inconclusive";
  }
}

struct CssCheckResult {
  double max_value = 0.0;
  std::vector<Vec> witness;  // one pure state per party
  CssVerdict verdict = CssVerdict::kInconclusive;
  double tolerance = 1e-4;
};

// Each party is a set of 1-based qubit indices; default: fully separable.
using Partition = std::vector<std::vector<int>>;

inline Partition single_qubit_partition(int num_qubits) {
  Partition p;
  for (int q = 1; q <= num_qubits; ++q) p.push_back({q});
  return p;
}

namespace detail {

// Full product vector from per-party states, parties listing 1-based qubits.
inline Vec assemble_party_product(const Partition& parties, const std::vector<Vec>& states,
                                  int num_qubits) {
  Vec full = Vec::Zero(static_cast<Eigen::Index>(dim_of(num_qubits)));
  for (std::uint64_t x = 0; x < dim_of(num_qubits); ++x) {
    cplx amp = 1.0;
    for (std::size_t p = 0; p < parties.size(); ++p) {
      std::uint64_t sub = 0;
      for (int q : parties[p]) sub = (sub << 1) | static_cast<unsigned>(bit_of(x, q, num_qubits));
      amp *= states[p](static_cast<Eigen::Index>(sub));
    }
    full(static_cast<Eigen::Index>(x)) = amp;
  }
  return full;
}

}  // namespace detail

// Maximizes <phi| L_sigma(rho) |phi> over pure product states of the given
// partition by alternating top-eigenvector updates, multi-start.
inline CssCheckResult css_criterion_max(const DensityMatrix& rho, const DensityMatrix& sigma,
                                        const OptimizerConfig& cfg = {},
                                        Partition parties = {}, double tolerance = 1e-4) {
  cfg.validate();
  const int N = rho.num_qubits();
  if (parties.empty()) parties = single_qubit_partition(N);
  const Mat L = l_sigma(sigma, rho);
  const std::size_t np = parties.size();

  CssCheckResult best;
  best.tolerance = tolerance;
  for (int start = 0; start < cfg.num_starts; ++start) {
    std::vector<Vec> states(np);
    if (start == 0) {
      // Deterministic computational-basis start.
      for (std::size_t p = 0; p < np; ++p) {
        states[p] = Vec::Zero(static_cast<Eigen::Index>(dim_of(static_cast<int>(parties[p].size()))));
        states[p](0) = 1.0;
      }
    } else {
      auto rng = detail::start_rng(cfg.seed, static_cast<std::uint64_t>(start));
      std::normal_distribution<double> g;
      for (std::size_t p = 0; p < np; ++p) {
        Vec v(static_cast<Eigen::Index>(dim_of(static_cast<int>(parties[p].size()))));
        for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = cplx(g(rng), g(rng));
        states[p] = v / v.norm();
      }
    }

    double prev = -1.0;
    for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
      for (std::size_t p = 0; p < np; ++p) {
        const auto dp = static_cast<Eigen::Index>(dim_of(static_cast<int>(parties[p].size())));
        // Effective Hermitian form on party p with the others frozen.
        std::vector<Vec> basis_vecs(static_cast<std::size_t>(dp));
        for (Eigen::Index bidx = 0; bidx < dp; ++bidx) {
          std::vector<Vec> tmp = states;
          tmp[p] = Vec::Zero(dp);
          tmp[p](bidx) = 1.0;
          basis_vecs[static_cast<std::size_t>(bidx)] =
              detail::assemble_party_product(parties, tmp, N);
        }
        Mat eff(dp, dp);
        for (Eigen::Index r = 0; r < dp; ++r)
          for (Eigen::Index c = 0; c < dp; ++c)
            eff(r, c) = (basis_vecs[static_cast<std::size_t>(r)].adjoint() * L *
                         basis_vecs[static_cast<std::size_t>(c)])
                            .value();
        Eigen::SelfAdjointEigenSolver<Mat> es((eff + eff.adjoint()) / 2.0);
        states[p] = es.eigenvectors().col(dp - 1);
      }
      const Vec phi = detail::assemble_party_product(parties, states, N);
      const double cur = (phi.adjoint() * L * phi).value().real();
      if (std::abs(cur - prev) < cfg.tolerance) break;
      prev = cur;
    }

    const Vec phi = detail::assemble_party_product(parties, states, N);
    const double value = (phi.adjoint() * L * phi).value().real();
    if (value > best.max_value) {
      best.max_value = value;
      best.witness = states;
    }
  }

  if (std::abs(best.max_value - 1.0) <= tolerance)
    best.verdict = CssVerdict::kConfirmedCss;
  else if (best.max_value > 1.0 + tolerance)
    best.verdict = CssVerdict::kRejected;
  else
    best.verdict = CssVerdict::kInconclusive;
  return best;
}

// Exact value for the canonical two-block family (valid when both blocks
// have at least two qubits; see css_criterion_max for the boundary regimes).
inline double ree_ghz_superposition(double alpha) {
  if (alpha < -1e-12 || alpha > M_PI / 2 + 1e-12)
    throw std::domain_error("ree_ghz_superposition: alpha outside [0, pi/2]");
  const double c2 = std::cos(alpha) * std::cos(alpha);
  return 1.0 + binary_entropy(c2);
}

inline double pmax_lower_bound(double pmax) {
  if (pmax <= 0.0 || pmax > 1.0 + 1e-12)
    throw std::domain_error("pmax_lower_bound: probability in (0,1] expected");
  return -std::log2(std::min(pmax, 1.0));
}

inline double plenio_vedral_assemble(double e_sub, double s_sub) {
  if (e_sub < 0.0 || s_sub < 0.0)
    throw std::domain_error("plenio_vedral_assemble: nonnegative inputs expected");
  return e_sub + s_sub;
}

// Entropy of every single-qubit trace-out: (traced qubit, S(rho_{N-1})).
inline std::vector<std::pair<int, double>> reduced_entropies(const PureState& psi) {
  const int N = psi.num_qubits();
  const DensityMatrix rho = density(psi);
  std::vector<std::pair<int, double>> out;
  for (int traced = 1; traced <= N; ++traced) {
    std::vector<int> keep;
    for (int q = 1; q <= N; ++q)
      if (q != traced) keep.push_back(q);
    out.emplace_back(traced, von_neumann_entropy(partial_trace(rho, keep)));
  }
  return out;
}

struct BoundReport {
  double pmax_bound = 0.0;    // -log2 P_max
  double pv_bound = 0.0;      // assembled subsystem bound
  double exact_or_best = 0.0;
  bool pmax_tight = false;
  bool pv_tight = false;
};

inline BoundReport make_bound_report(double pmax, double pv_bound, double exact,
                                     double tol = 1e-9) {
  BoundReport r;
  r.pmax_bound = pmax_lower_bound(pmax);
  r.pv_bound = pv_bound;
  r.exact_or_best = exact;
  r.pmax_tight = std::abs(r.pmax_bound - exact) <= tol;
  r.pv_tight = std::abs(pv_bound - exact) <= tol;
  return r;
}

}  // namespace qcorr

// gme.hpp
// Geometric measure of entanglement: maximal squared overlap with product
// states, numerically and through the closed forms for the GHZ-superposition
// and W-superposition families.

#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qcorr/numerics.hpp"
#include "qcorr/optimize.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

inline double gme_from_pmax(double p) {
  if (p < 0.0 || p > 1.0 + 1e-12) throw std::domain_error("gme_from_pmax: probability expected");
  return std::sqrt(std::max(0.0, 1.0 - p));
}

// Upper bound on P_max of a superposition cos(a)|x> + e^{ig} sin(a)|y> of
// orthonormal states with P_max 1/2 each.
inline double superposition_upper_bound(double alpha) {
  if (alpha < -1e-12 || alpha > M_PI / 2 + 1e-12)
    throw std::domain_error("superposition_upper_bound: alpha outside [0, pi/2]");
  return std::min(1.0, 0.5 + std::cos(alpha) * std::sin(alpha));
}

inline double pmax_ghz_sup_analytic(int m, int n, double alpha) {
  if (m < 1 || n < 1) throw std::domain_error("pmax_ghz_sup_analytic: blocks must be >= 1");
  if (m == 1 || n == 1) return 0.5;
  const double c2 = std::cos(alpha) * std::cos(alpha);
  return std::max(c2, 1.0 - c2) / 2.0;
}

// Alternating single-site ascent: with all factors but one fixed, the optimal
// factor is the normalized contraction of psi against the rest. Multi-start
// from seeded Haar-random factors; best value wins, earliest start on ties.
inline PmaxResult pmax_numeric(const PureState& psi, const OptimizerConfig& cfg = {}) {
  cfg.validate();
  const int N = psi.num_qubits();
  const auto support = detail::support_of(psi);

  PmaxResult best;
  std::vector<double> start_values(static_cast<std::size_t>(cfg.num_starts));
  for (int start = 0; start < cfg.num_starts; ++start) {
    auto rng = detail::start_rng(cfg.seed, static_cast<std::uint64_t>(start));
    std::vector<Qubit> factors(static_cast<std::size_t>(N));
    for (auto& f : factors) f = detail::haar_qubit(rng);

    double prev = 0.0;
    bool converged = false;
    for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
      for (int q = 1; q <= N; ++q) {
        Qubit v = Qubit::Zero();
        for (const auto& [x, a] : support) {
          cplx prod = a;
          for (int r = 1; r <= N; ++r)
            if (r != q)
              prod *= std::conj(factors[static_cast<std::size_t>(r - 1)](bit_of(x, r, N)));
          v(bit_of(x, q, N)) += prod;
        }
        const double nv = v.norm();
        if (nv > 1e-300) factors[static_cast<std::size_t>(q - 1)] = v / nv;
      }
      const double cur = std::norm(detail::product_overlap(support, factors, N));
      if (std::abs(cur - prev) < cfg.tolerance) {
        converged = true;
        break;
      }
      prev = cur;
    }

    const double value = std::norm(detail::product_overlap(support, factors, N));
    start_values[static_cast<std::size_t>(start)] = value;
    if (value > best.value) {
      best.value = value;
      best.witness.factors = factors;
      best.witness.symmetry_tag = SymmetryTag::kFree;
      best.converged = converged;
    }
  }
  for (double v : start_values)
    if (v >= best.value - 1e-8) ++best.starts_agreeing;
  return best;
}

namespace detail {

inline void check_transpositions(const PureState& psi, int lo, int hi, const char* what) {
  const int N = psi.num_qubits();
  for (int q = lo; q < hi; ++q) {
    for (Eigen::Index x = 0; x < psi.dim(); ++x) {
      const int bq = bit_of(static_cast<std::uint64_t>(x), q, N);
      const int bq1 = bit_of(static_cast<std::uint64_t>(x), q + 1, N);
      if (bq == bq1) continue;
      const std::uint64_t y = static_cast<std::uint64_t>(x) ^
                              ((std::uint64_t{1} << (N - q)) | (std::uint64_t{1} << (N - q - 1)));
      if (std::abs(psi.amps()(x) - psi.amps()(static_cast<Eigen::Index>(y))) > 1e-9)
        throw std::domain_error(what);
    }
  }
}

// Amplitude totals per Hamming weight, after fixing the global phase to the
// largest-magnitude amplitude.
inline std::vector<cplx> weight_sums(const PureState& psi) {
  const int N = psi.num_qubits();
  Eigen::Index imax = 0;
  psi.amps().cwiseAbs().maxCoeff(&imax);
  const cplx phase = std::polar(1.0, -std::arg(psi.amps()(imax)));
  std::vector<cplx> a(static_cast<std::size_t>(N + 1), cplx{0, 0});
  for (Eigen::Index x = 0; x < psi.dim(); ++x)
    a[static_cast<std::size_t>(std::popcount(static_cast<std::uint64_t>(x)))] +=
        phase * psi.amps()(x);
  return a;
}

}  // namespace detail

// Restriction to |xi(theta)>^{otimes N} with real xi; valid for permutation
// invariant states with nonnegative real amplitudes up to a global phase.
inline PmaxResult pmax_symmetric(const PureState& psi, const OptimizerConfig& cfg = {}) {
  cfg.validate();
  const int N = psi.num_qubits();
  detail::check_transpositions(psi, 1, N, "pmax_symmetric: state is not permutation invariant");
  const auto a = detail::weight_sums(psi);

  auto h = [&](double theta) {
    const double C = std::cos(theta), S = std::sin(theta);
    cplx sum = 0;
    for (int w = 0; w <= N; ++w)
      sum += a[static_cast<std::size_t>(w)] * std::pow(C, N - w) * std::pow(S, w);
    return sum;
  };
  auto f = [&](double theta) { return std::norm(h(theta)); };
  auto fprime = [&](double theta) {
    const double C = std::cos(theta), S = std::sin(theta);
    cplx dh = 0;
    for (int w = 0; w <= N; ++w) {
      cplx term = 0;
      if (w > 0) term += static_cast<double>(w) * std::pow(C, N - w + 1) * std::pow(S, w - 1);
      if (w < N) term -= static_cast<double>(N - w) * std::pow(C, N - w - 1) * std::pow(S, w + 1);
      dh += a[static_cast<std::size_t>(w)] * term;
    }
    return 2.0 * (std::conj(h(theta)) * dh).real();
  };

  const int kGrid = 10000;
  double best_theta = 0.0, best_f = f(0.0);
  for (int k = 1; k <= kGrid; ++k) {
    const double theta = (M_PI / 2) * k / kGrid;
    const double v = f(theta);
    if (v > best_f) { best_f = v; best_theta = theta; }
  }
  // Newton on the stationarity condition, with a golden fallback.
  double theta = best_theta;
  const double h_fd = 1e-6;
  for (int it = 0; it < 50; ++it) {
    const double g = fprime(theta);
    const double gg = (fprime(theta + h_fd) - fprime(theta - h_fd)) / (2 * h_fd);
    if (gg == 0.0) break;
    const double next = std::clamp(theta - g / gg, 0.0, M_PI / 2);
    if (std::abs(next - theta) < 1e-15) { theta = next; break; }
    theta = next;
  }
  if (f(theta) >= best_f) {
    best_f = f(theta);
    best_theta = theta;
  } else {
    const double cell = (M_PI / 2) / kGrid;
    auto [t2, v2] = detail::golden_max(f, std::max(0.0, best_theta - cell),
                                       std::min(M_PI / 2, best_theta + cell));
    if (v2 > best_f) { best_f = v2; best_theta = t2; }
  }

  PmaxResult res;
  res.value = best_f;
  res.converged = true;
  res.witness.symmetry_tag = SymmetryTag::kFullySymmetric;
  Qubit xi;
  xi << std::cos(best_theta), std::sin(best_theta);
  res.witness.factors.assign(static_cast<std::size_t>(N), xi);
  res.starts_agreeing = 1;
  return res;
}

// Two angle pairs (theta, lambda), one per block of identical factors.
inline PmaxResult pmax_biblock(const PureState& psi, int m, int n,
                               const OptimizerConfig& cfg = {}) {
  cfg.validate();
  const int N = psi.num_qubits();
  if (m < 1 || n < 1 || m + n != N)
    throw std::domain_error("pmax_biblock: block sizes must sum to the qubit count");
  detail::check_transpositions(psi, 1, m, "pmax_biblock: first block not symmetric");
  detail::check_transpositions(psi, m + 1, N, "pmax_biblock: second block not symmetric");

  // Amplitude totals per (weight in block 1, weight in block 2).
  std::vector<std::vector<cplx>> b(static_cast<std::size_t>(m + 1),
                                   std::vector<cplx>(static_cast<std::size_t>(n + 1), cplx{0, 0}));
  const std::uint64_t mask_n = dim_of(n) - 1;
  for (Eigen::Index x = 0; x < psi.dim(); ++x) {
    const auto ux = static_cast<std::uint64_t>(x);
    b[static_cast<std::size_t>(std::popcount(ux >> n))]
     [static_cast<std::size_t>(std::popcount(ux & mask_n))] += psi.amps()(x);
  }

  auto value_at = [&](const std::array<double, 4>& p) {
    const cplx x10 = std::cos(p[0]);
    const cplx x11 = std::polar(std::sin(p[0]), p[1]);
    const cplx x20 = std::cos(p[2]);
    const cplx x21 = std::polar(std::sin(p[2]), p[3]);
    cplx total = 0;
    for (int w1 = 0; w1 <= m; ++w1)
      for (int w2 = 0; w2 <= n; ++w2) {
        const cplx amp = b[static_cast<std::size_t>(w1)][static_cast<std::size_t>(w2)];
        if (amp == cplx{0, 0}) continue;
        total += amp * std::pow(std::conj(x10), m - w1) * std::pow(std::conj(x11), w1) *
                 std::pow(std::conj(x20), n - w2) * std::pow(std::conj(x21), w2);
      }
    return std::norm(total);
  };

  const std::array<double, 4> lo{0.0, 0.0, 0.0, 0.0};
  const std::array<double, 4> hi{M_PI / 2, 2 * M_PI, M_PI / 2, 2 * M_PI};

  PmaxResult best;
  for (int start = 0; start < cfg.num_starts; ++start) {
    auto rng = detail::start_rng(cfg.seed, static_cast<std::uint64_t>(start));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::array<double, 4> p;
    for (int k = 0; k < 4; ++k) p[k] = lo[k] + (hi[k] - lo[k]) * unif(rng);

    double cur = value_at(p);
    for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
      const double before = cur;
      for (int k = 0; k < 4; ++k) {
        auto f1 = [&](double x) {
          auto q = p;
          q[static_cast<std::size_t>(k)] = x;
          return value_at(q);
        };
        auto [x, v] = detail::scan_then_golden(f1, lo[static_cast<std::size_t>(k)],
                                               hi[static_cast<std::size_t>(k)]);
        if (v > cur) {
          cur = v;
          p[static_cast<std::size_t>(k)] = x;
        }
      }
      if (cur - before < cfg.tolerance) break;
    }
    if (cur > best.value) {
      best.value = cur;
      best.converged = true;
      best.witness.symmetry_tag = SymmetryTag::kBlockSymmetric;
      best.witness.block_m = m;
      best.witness.block_n = n;
      Qubit x1, x2;
      x1 << std::cos(p[0]), std::polar(std::sin(p[0]), p[1]);
      x2 << std::cos(p[2]), std::polar(std::sin(p[2]), p[3]);
      best.witness.factors.assign(static_cast<std::size_t>(m), x1);
      best.witness.factors.insert(best.witness.factors.end(), static_cast<std::size_t>(n), x2);
    }
  }
  best.starts_agreeing = 1;
  return best;
}

// Stationarity polynomial of the symmetric-overlap objective,
// s t^N - s(N-1) t^{N-2} + c(N-1) t^2 - c, ascending coefficients.
inline std::vector<double> w_sup_poly_coeffs(int num_qubits, double alpha) {
  if (num_qubits < 3) throw std::domain_error("w_sup_poly_coeffs: N >= 3 required");
  const double c = std::cos(alpha), s = std::sin(alpha);
  std::vector<double> coeffs(static_cast<std::size_t>(num_qubits + 1), 0.0);
  coeffs[static_cast<std::size_t>(num_qubits)] += s;
  coeffs[static_cast<std::size_t>(num_qubits - 2)] += -s * (num_qubits - 1);
  coeffs[2] += c * (num_qubits - 1);
  coeffs[0] += -c;
  return coeffs;
}

// Overlap value at a stationary tangent t.
inline double w_sup_overlap_at(int num_qubits, double alpha, double t) {
  const double c = std::cos(alpha), s = std::sin(alpha);
  const double t2 = t * t;
  const double g = c + s * std::pow(t, num_qubits - 2);
  return num_qubits * t2 * g * g / std::pow(1.0 + t2, num_qubits);
}

// Squared tangent of the optimal symmetric factor for N = 4, as the positive
// root of the quartic stationarity polynomial in closed form.
inline double w_sup_n4_t2_closed_form(double alpha) {
  const double c = std::cos(alpha), s = std::sin(alpha);
  const double disc = std::sqrt(9.0 - 14.0 * c * s);
  // Two algebraically equal expressions; pick the one far from 0/0.
  if (s < c) return 2.0 * c / (3.0 * (c - s) + disc);
  return (3.0 * (s - c) + disc) / (2.0 * s);
}

inline std::pair<double, RootSet> pmax_w_sup(int num_qubits, double alpha) {
  if (num_qubits < 3) throw std::domain_error("pmax_w_sup: N >= 3 required");
  if (alpha < -1e-12 || alpha > M_PI / 2 + 1e-12)
    throw std::domain_error("pmax_w_sup: alpha outside [0, pi/2]");
  const double c = std::cos(alpha), s = std::sin(alpha);
  const auto coeffs = w_sup_poly_coeffs(num_qubits, alpha);

  RootSet roots;
  if (s < 1e-15) {
    // Endpoint: the polynomial degenerates to c[(N-1)t^2 - 1].
    roots.roots = {1.0 / std::sqrt(static_cast<double>(num_qubits - 1))};
    roots.residuals = {detail::poly_eval(coeffs, roots.roots[0])};
  } else if (c < 1e-15) {
    // Endpoint: s t^{N-2} [t^2 - (N-1)].
    roots.roots = {std::sqrt(static_cast<double>(num_qubits - 1))};
    roots.residuals = {detail::poly_eval(coeffs, roots.roots[0])};
  } else {
    roots = positive_real_roots(coeffs);
  }

  double best = 0.0;  // both boundaries t -> 0 and t -> inf give 0
  for (double t : roots.roots) {
    const double p = w_sup_overlap_at(num_qubits, alpha, t);
    if (p > best) best = p;
  }
  return {best, roots};
}

}  // namespace qcorr

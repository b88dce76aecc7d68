// optimize.hpp
// Product-state parameterizations, seeded multi-start plumbing and small
// 1-D maximization helpers shared by the overlap and basis searches.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qcorr/states.hpp"

namespace qcorr {

using Qubit = Eigen::Vector2cd;

enum class SymmetryTag { kFree, kFullySymmetric, kBlockSymmetric };

struct ProductState {
  std::vector<Qubit> factors;
  SymmetryTag symmetry_tag = SymmetryTag::kFree;
  int block_m = 0, block_n = 0;  // set for kBlockSymmetric

  int num_qubits() const { return static_cast<int>(factors.size()); }

  // |xi> = cos(theta)|0> + e^{i lambda} sin(theta)|1> up to a global phase.
  double theta(int q) const {
    const auto& f = factors[static_cast<std::size_t>(q)];
    return std::atan2(std::abs(f(1)), std::abs(f(0)));
  }
  double lambda(int q) const {
    const auto& f = factors[static_cast<std::size_t>(q)];
    double l = std::arg(f(1)) - std::arg(f(0));
    if (l < 0) l += 2 * M_PI;
    return l;
  }

  Vec full_vector() const {
    Vec v(1);
    v(0) = 1.0;
    for (const auto& f : factors) {
      Vec next(v.size() * 2);
      for (Eigen::Index k = 0; k < v.size(); ++k) {
        next(2 * k) = v(k) * f(0);
        next(2 * k + 1) = v(k) * f(1);
      }
      v.swap(next);
    }
    return v;
  }
};

struct OptimizerConfig {
  int num_starts = 64;
  int max_sweeps = 500;
  double tolerance = 1e-10;  // overlap change per sweep
  std::uint64_t seed = 0;

  void validate() const {
    if (num_starts < 1 || max_sweeps < 1 || tolerance <= 0.0)
      throw std::domain_error("OptimizerConfig: fields must be positive");
  }
};

struct PmaxResult {
  double value = 0.0;
  ProductState witness;
  bool converged = false;
  int starts_agreeing = 0;  // starts within 1e-8 of the best value
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Per-start stream: deterministic in (seed, start), independent of order.
inline std::mt19937_64 start_rng(std::uint64_t seed, std::uint64_t start) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(start + 1)));
}

inline Qubit haar_qubit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Qubit q;
  q << cplx(g(rng), g(rng)), cplx(g(rng), g(rng));
  return q / q.norm();
}

// Haar 2x2 unitary via Gram-Schmidt on Gaussian columns.
inline Eigen::Matrix2cd haar_unitary2(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Matrix2cd a;
  a << cplx(g(rng), g(rng)), cplx(g(rng), g(rng)),
       cplx(g(rng), g(rng)), cplx(g(rng), g(rng));
  Eigen::Vector2cd u0 = a.col(0) / a.col(0).norm();
  Eigen::Vector2cd u1 = a.col(1) - u0 * (u0.adjoint() * a.col(1)).value();
  u1 /= u1.norm();
  Eigen::Matrix2cd u;
  u.col(0) = u0;
  u.col(1) = u1;
  return u;
}

struct SparseAmp {
  std::uint64_t index;
  cplx value;
};

inline std::vector<SparseAmp> support_of(const PureState& psi) {
  std::vector<SparseAmp> s;
  for (Eigen::Index k = 0; k < psi.amps().size(); ++k)
    if (std::abs(psi.amps()(k)) > 1e-14)
      s.push_back({static_cast<std::uint64_t>(k), psi.amps()(k)});
  return s;
}

// <phi|psi> for phi the product of the given factors.
inline cplx product_overlap(const std::vector<SparseAmp>& support,
                            const std::vector<Qubit>& factors, int num_qubits) {
  cplx total = 0;
  for (const auto& [x, a] : support) {
    cplx prod = a;
    for (int q = 1; q <= num_qubits; ++q)
      prod *= std::conj(factors[static_cast<std::size_t>(q - 1)](bit_of(x, q, num_qubits)));
    total += prod;
  }
  return total;
}

// Golden-section maximization of a unimodal bracket.
inline std::pair<double, double> golden_max(const std::function<double(double)>& f,
                                            double lo, double hi, int iters = 80) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < iters && (b - a) > 1e-14; ++it) {
    if (f1 < f2) {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + inv_phi * (b - a); f2 = f(x2);
    } else {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - inv_phi * (b - a); f1 = f(x1);
    }
  }
  const double xm = (a + b) / 2;
  return {xm, f(xm)};
}

// Coarse scan plus golden refinement; robust when f is not unimodal globally.
inline std::pair<double, double> scan_then_golden(const std::function<double(double)>& f,
                                                  double lo, double hi, int scan_points = 48,
                                                  int golden_iters = 80) {
  double best_x = lo, best_f = f(lo);
  for (int k = 1; k < scan_points; ++k) {
    const double x = lo + (hi - lo) * k / (scan_points - 1);
    const double v = f(x);
    if (v > best_f) { best_f = v; best_x = x; }
  }
  const double h = (hi - lo) / (scan_points - 1);
  auto [x, v] = golden_max(f, std::max(lo, best_x - h), std::min(hi, best_x + h), golden_iters);
  return v > best_f ? std::make_pair(x, v) : std::make_pair(best_x, best_f);
}

}  // namespace detail

}  // namespace qcorr

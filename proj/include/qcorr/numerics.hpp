// numerics.hpp
// Dense Hermitian spectral computations, entropy functionals in bits,
// relative entropy on supports, and positive real root finding.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "qcorr/states.hpp"

namespace qcorr {

struct Spectrum {
  Eigen::VectorXd eigenvalues;  // ascending
  Mat eigenvectors;             // column k pairs with eigenvalue k
};

inline Spectrum eigh(const Mat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eigh: matrix not square");
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
    throw std::domain_error("eigh: matrix not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(a);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigh: solver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

inline double binary_entropy(double x) {
  if (x < 0.0 || x > 1.0) throw std::domain_error("binary_entropy: argument outside [0,1]");
  double h = 0.0;
  if (x > 0.0) h -= x * std::log2(x);
  if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
  return h;
}

inline double shannon_entropy(const Eigen::VectorXd& p) {
  double h = 0.0;
  for (Eigen::Index k = 0; k < p.size(); ++k)
    if (p(k) > kSupportEps) h -= p(k) * std::log2(p(k));
  return h;
}

inline double von_neumann_entropy(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Mat> es(rho.mat(), Eigen::EigenvaluesOnly);
  return shannon_entropy(es.eigenvalues());
}

// S(x||y) = Tr[x log2 x - x log2 y] computed on supports; +inf when the
// support of x leaks outside the support of y.
inline double relative_entropy(const DensityMatrix& x, const DensityMatrix& y) {
  if (x.dim() != y.dim()) throw std::invalid_argument("relative_entropy: dimension mismatch");
  const Spectrum sx = eigh(x.mat());
  const Spectrum sy = eigh(y.mat());

  double tr_x_log_x = 0.0;
  for (Eigen::Index k = 0; k < sx.eigenvalues.size(); ++k)
    if (sx.eigenvalues(k) > kSupportEps)
      tr_x_log_x += sx.eigenvalues(k) * std::log2(sx.eigenvalues(k));

  double tr_x_log_y = 0.0;
  double kernel_weight = 0.0;
  for (Eigen::Index k = 0; k < sy.eigenvalues.size(); ++k) {
    const double w = (sy.eigenvectors.col(k).adjoint() * x.mat() * sy.eigenvectors.col(k))
                         .value()
                         .real();
    if (sy.eigenvalues(k) > kSupportEps)
      tr_x_log_y += w * std::log2(sy.eigenvalues(k));
    else
      kernel_weight += w;
  }
  if (kernel_weight > 1e-10) return std::numeric_limits<double>::infinity();
  return tr_x_log_x - tr_x_log_y;
}

struct RootSet {
  std::vector<double> roots;      // strictly positive, ascending
  std::vector<double> residuals;  // polynomial values at the roots
};

namespace detail {

inline double poly_eval(const std::vector<double>& coeffs, double t) {
  double v = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * t + *it;
  return v;
}

inline double poly_deriv_eval(const std::vector<double>& coeffs, double t) {
  double v = 0.0;
  for (int k = static_cast<int>(coeffs.size()) - 1; k >= 1; --k)
    v = v * t + k * coeffs[static_cast<std::size_t>(k)];
  return v;
}

inline double polish_root(const std::vector<double>& coeffs, double t0) {
  double t = t0;
  for (int it = 0; it < 100; ++it) {
    const double f = poly_eval(coeffs, t);
    if (std::abs(f) <= 1e-13) break;
    const double df = poly_deriv_eval(coeffs, t);
    if (df == 0.0) break;
    const double step = f / df;
    t -= step;
    if (t <= 0.0) {
      t = t0;  // Newton left the positive axis; keep the companion estimate
      break;
    }
    if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(t))) break;
  }
  return t;
}

}  // namespace detail

// All strictly positive real roots: companion-matrix eigenvalues filtered
// to near-real positives, then Newton-polished.
inline RootSet positive_real_roots(const std::vector<double>& coeffs_ascending) {
  std::vector<double> c = coeffs_ascending;
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  if (c.empty()) throw std::domain_error("positive_real_roots: zero polynomial");
  // Roots at the origin are not positive; strip them.
  std::size_t shift = 0;
  while (shift + 1 < c.size() && c[shift] == 0.0) ++shift;
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(shift));

  RootSet out;
  const int deg = static_cast<int>(c.size()) - 1;
  if (deg == 0) return out;

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
  for (int k = 0; k < deg; ++k) {
    companion(k, deg - 1) = -c[static_cast<std::size_t>(k)] / c.back();
    if (k > 0) companion(k, k - 1) = 1.0;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(companion);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("positive_real_roots: eigensolver failed");

  std::vector<double> candidates;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const auto z = es.eigenvalues()(k);
    if (std::abs(z.imag()) <= 1e-8 * (1.0 + std::abs(z.real())) && z.real() > 1e-12)
      candidates.push_back(detail::polish_root(c, z.real()));
  }
  std::sort(candidates.begin(), candidates.end());
  for (double t : candidates) {
    if (!out.roots.empty() && std::abs(t - out.roots.back()) <= 1e-8) continue;
    out.roots.push_back(t);
    out.residuals.push_back(detail::poly_eval(c, t));
  }
  return out;
}

}  // namespace qcorr

// states.hpp
// N-qubit pure states and density matrices: GHZ/W/Dicke families,
// partial trace, partial transpose and related elementary operations.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcorr {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

inline constexpr double kNormRepairTol = 1e-9;   // renormalize below this drift
inline constexpr double kHermTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kSupportEps = 1e-12;     // eigenvalues below are zeros
inline constexpr int kMaxDensityQubits = 12;     // dense-storage policy
inline constexpr int kMaxPureQubits = 20;

// Qubit 1 is the most significant bit of the amplitude index.
inline int bit_of(std::uint64_t index, int qubit, int num_qubits) {
  return static_cast<int>((index >> (num_qubits - qubit)) & 1u);
}

inline std::uint64_t dim_of(int num_qubits) {
  return std::uint64_t{1} << num_qubits;
}

struct BitString {
  std::vector<int> bits;  // bits[0] is qubit 1 (most significant)

  std::string str() const {
    std::string s;
    for (int b : bits) s.push_back(b ? '1' : '0');
    return s;
  }
  std::uint64_t value() const {
    std::uint64_t v = 0;
    for (int b : bits) v = (v << 1) | static_cast<unsigned>(b);
    return v;
  }
};

inline BitString binary_rep(std::uint64_t i, int num_bits) {
  if (num_bits < 1) throw std::domain_error("binary_rep: length must be >= 1");
  if (num_bits < 64 && i >= dim_of(num_bits))
    throw std::domain_error("binary_rep: value does not fit in the bit length");
  BitString b;
  b.bits.resize(num_bits);
  for (int k = 0; k < num_bits; ++k)
    b.bits[k] = static_cast<int>((i >> (num_bits - 1 - k)) & 1u);
  return b;
}

class PureState {
 public:
  PureState(int num_qubits, Vec amplitudes)
      : num_qubits_(num_qubits), amp_(std::move(amplitudes)) {
    if (num_qubits_ < 1 || num_qubits_ > kMaxPureQubits)
      throw std::domain_error("PureState: unsupported qubit count");
    if (amp_.size() != static_cast<Eigen::Index>(dim_of(num_qubits_)))
      throw std::invalid_argument("PureState: amplitude vector has wrong length");
    const double n = amp_.norm();
    if (std::abs(n - 1.0) > kNormRepairTol)
      throw std::domain_error("PureState: amplitudes are not normalized");
    if (n != 1.0) amp_ /= n;
  }

  int num_qubits() const { return num_qubits_; }
  Eigen::Index dim() const { return amp_.size(); }
  const Vec& amps() const { return amp_; }
  cplx amp(std::uint64_t index) const { return amp_(static_cast<Eigen::Index>(index)); }

 private:
  int num_qubits_;
  Vec amp_;
};

class DensityMatrix {
 public:
  DensityMatrix(int num_qubits, Mat entries)
      : num_qubits_(num_qubits), mat_(std::move(entries)) {
    if (num_qubits_ < 1 || num_qubits_ > kMaxDensityQubits)
      throw std::domain_error("DensityMatrix: unsupported qubit count");
    const auto d = static_cast<Eigen::Index>(dim_of(num_qubits_));
    if (mat_.rows() != d || mat_.cols() != d)
      throw std::invalid_argument("DensityMatrix: wrong dimensions");
    if ((mat_ - mat_.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
      throw std::domain_error("DensityMatrix: not Hermitian");
    if (std::abs(mat_.trace().real() - 1.0) > kTraceTol ||
        std::abs(mat_.trace().imag()) > kTraceTol)
      throw std::domain_error("DensityMatrix: trace is not 1");
    Eigen::SelfAdjointEigenSolver<Mat> es(mat_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kPsdTol)
      throw std::domain_error("DensityMatrix: not positive semidefinite");
  }

  int num_qubits() const { return num_qubits_; }
  Eigen::Index dim() const { return mat_.rows(); }
  const Mat& mat() const { return mat_; }

 private:
  int num_qubits_;
  Mat mat_;
};

struct GhzSuperpositionSpec {
  int num_qubits;       // N >= 2
  std::uint64_t i, j;   // in [0, 2^{N-1}-1], i != j
  int sign_i = +1, sign_j = +1;
  double alpha = 0.0;   // [0, pi/2]
  double gamma = 0.0;   // [0, 2pi)

  void validate() const {
    if (num_qubits < 2) throw std::domain_error("GhzSuperpositionSpec: N >= 2 required");
    const std::uint64_t half = dim_of(num_qubits - 1);
    if (i >= half || j >= half)
      throw std::domain_error("GhzSuperpositionSpec: index out of range");
    if (i == j) throw std::domain_error("GhzSuperpositionSpec: i and j must differ");
    if (sign_i != 1 && sign_i != -1) throw std::domain_error("GhzSuperpositionSpec: bad sign_i");
    if (sign_j != 1 && sign_j != -1) throw std::domain_error("GhzSuperpositionSpec: bad sign_j");
  }
};

struct TwoBlockSpec {
  int m, n;             // block sizes, both >= 1
  double alpha = 0.0;
  double gamma = 0.0;
  int sign = +1;

  void validate() const {
    if (m < 1 || n < 1) throw std::domain_error("TwoBlockSpec: block sizes must be >= 1");
    if (sign != 1 && sign != -1) throw std::domain_error("TwoBlockSpec: bad sign");
  }
};

inline PureState ghz_canonical(int num_qubits, std::uint64_t i, int sign) {
  if (num_qubits < 2) throw std::domain_error("ghz_canonical: N >= 2 required");
  if (i >= dim_of(num_qubits - 1))
    throw std::domain_error("ghz_canonical: index out of range");
  if (sign != 1 && sign != -1) throw std::domain_error("ghz_canonical: sign must be +-1");
  Vec a = Vec::Zero(static_cast<Eigen::Index>(dim_of(num_qubits)));
  const double r = 1.0 / std::sqrt(2.0);
  a(static_cast<Eigen::Index>(i)) = r;
  a(static_cast<Eigen::Index>(dim_of(num_qubits) - 1 - i)) = sign * r;
  return PureState(num_qubits, std::move(a));
}

inline PureState ghz_superposition(const GhzSuperpositionSpec& spec) {
  spec.validate();
  const PureState gi = ghz_canonical(spec.num_qubits, spec.i, spec.sign_i);
  const PureState gj = ghz_canonical(spec.num_qubits, spec.j, spec.sign_j);
  const cplx w = std::polar(1.0, spec.gamma);
  Vec a = std::cos(spec.alpha) * gi.amps() + w * std::sin(spec.alpha) * gj.amps();
  return PureState(spec.num_qubits, std::move(a));
}

// Positions where the bit strings of i and j agree (m) and disagree (n).
inline std::pair<int, int> hamming_split(std::uint64_t i, std::uint64_t j, int num_qubits) {
  const std::uint64_t half = dim_of(num_qubits - 1);
  if (i >= half || j >= half) throw std::domain_error("hamming_split: index out of range");
  if (i == j) throw std::domain_error("hamming_split: i and j must differ");
  const int n = std::popcount(i ^ j);
  return {num_qubits - n, n};
}

inline PureState two_block_canonical(const TwoBlockSpec& spec) {
  spec.validate();
  const int N = spec.m + spec.n;
  const std::uint64_t ones_n = dim_of(spec.n) - 1;
  const std::uint64_t ones_m_shift = (dim_of(spec.m) - 1) << spec.n;
  Vec a = Vec::Zero(static_cast<Eigen::Index>(dim_of(N)));
  const double c = std::cos(spec.alpha), s = std::sin(spec.alpha);
  const double r = 1.0 / std::sqrt(2.0);
  const cplx w = std::polar(1.0, spec.gamma);
  a(0) = c * r;
  a(static_cast<Eigen::Index>(ones_m_shift | ones_n)) = spec.sign * c * r;
  a(static_cast<Eigen::Index>(ones_n)) = w * s * r;
  a(static_cast<Eigen::Index>(ones_m_shift)) = w * s * r;
  return PureState(N, std::move(a));
}

// Canonical two-block reduction of a GHZ superposition. A negative sign_j
// folds into the overall two-block sign and a pi shift of gamma.
inline TwoBlockSpec ghz_sup_to_two_block(const GhzSuperpositionSpec& spec) {
  spec.validate();
  auto [m, n] = hamming_split(spec.i, spec.j, spec.num_qubits);
  TwoBlockSpec tb;
  tb.m = m;
  tb.n = n;
  tb.alpha = spec.alpha;
  if (spec.sign_j > 0) {
    tb.sign = spec.sign_i;
    tb.gamma = spec.gamma;
  } else {
    tb.sign = -spec.sign_i;
    tb.gamma = spec.gamma + M_PI;
  }
  return tb;
}

inline PureState dicke(int num_qubits, int k) {
  if (num_qubits < 1) throw std::domain_error("dicke: N >= 1 required");
  if (k < 0 || k > num_qubits) throw std::domain_error("dicke: weight out of range");
  const std::uint64_t d = dim_of(num_qubits);
  Vec a = Vec::Zero(static_cast<Eigen::Index>(d));
  std::uint64_t count = 0;
  for (std::uint64_t x = 0; x < d; ++x)
    if (std::popcount(x) == k) ++count;
  const double amp = 1.0 / std::sqrt(static_cast<double>(count));
  for (std::uint64_t x = 0; x < d; ++x)
    if (std::popcount(x) == k) a(static_cast<Eigen::Index>(x)) = amp;
  return PureState(num_qubits, std::move(a));
}

inline PureState w_state(int num_qubits) {
  if (num_qubits < 2) throw std::domain_error("w_state: N >= 2 required");
  return dicke(num_qubits, 1);
}

inline PureState w_tilde(int num_qubits) {
  if (num_qubits < 2) throw std::domain_error("w_tilde: N >= 2 required");
  return dicke(num_qubits, num_qubits - 1);
}

inline PureState w_superposition(int num_qubits, double alpha, double gamma) {
  if (num_qubits < 2) throw std::domain_error("w_superposition: N >= 2 required");
  const cplx w = std::polar(1.0, gamma);
  Vec a = std::cos(alpha) * w_state(num_qubits).amps() +
          w * std::sin(alpha) * w_tilde(num_qubits).amps();
  return PureState(num_qubits, std::move(a));
}

// The phase gamma is removable by the local map |1> -> e^{-i gamma/(N-2)}|1>,
// which only makes sense for N >= 3.
inline PureState remove_w_phase(int num_qubits, double alpha, double gamma) {
  (void)gamma;
  if (num_qubits < 3) throw std::domain_error("remove_w_phase: N >= 3 required");
  return w_superposition(num_qubits, alpha, 0.0);
}

inline double binomial(int n, int k) {
  double r = 1.0;
  for (int t = 0; t < k; ++t) r = r * (n - t) / (t + 1);
  return r;
}

// Separable mixture of Dicke projectors with binomial weights
// C(N,k)(1/N)^k((N-1)/N)^{N-k}: the closest separable state to the W state,
// whose single excitation fixes the binomial parameter at 1/N.
inline DensityMatrix sigma_w(int num_qubits) {
  if (num_qubits < 2) throw std::domain_error("sigma_w: N >= 2 required");
  const auto d = static_cast<Eigen::Index>(dim_of(num_qubits));
  Mat rho = Mat::Zero(d, d);
  const double N = num_qubits;
  for (int k = 0; k <= num_qubits; ++k) {
    const double w = binomial(num_qubits, k) * std::pow(1.0 / N, k) *
                     std::pow((N - 1) / N, num_qubits - k);
    const Vec v = dicke(num_qubits, k).amps();
    rho += w * (v * v.adjoint());
  }
  return DensityMatrix(num_qubits, std::move(rho));
}

// Rank-<=4 diagonal mixture of the four extremal two-block product strings.
inline DensityMatrix css_ghz_superposition(int m, int n, double alpha) {
  if (m < 1 || n < 1) throw std::domain_error("css_ghz_superposition: blocks must be >= 1");
  const int N = m + n;
  const auto d = static_cast<Eigen::Index>(dim_of(N));
  const std::uint64_t ones_n = dim_of(n) - 1;
  const std::uint64_t ones_m_shift = (dim_of(m) - 1) << n;
  const double c2 = std::cos(alpha) * std::cos(alpha);
  const double s2 = 1.0 - c2;
  Mat rho = Mat::Zero(d, d);
  rho(0, 0) = c2 / 2;
  rho(static_cast<Eigen::Index>(ones_m_shift | ones_n),
      static_cast<Eigen::Index>(ones_m_shift | ones_n)) = c2 / 2;
  rho(static_cast<Eigen::Index>(ones_n), static_cast<Eigen::Index>(ones_n)) = s2 / 2;
  rho(static_cast<Eigen::Index>(ones_m_shift), static_cast<Eigen::Index>(ones_m_shift)) = s2 / 2;
  return DensityMatrix(N, std::move(rho));
}

inline DensityMatrix density(const PureState& psi) {
  return DensityMatrix(psi.num_qubits(), psi.amps() * psi.amps().adjoint());
}

inline cplx overlap(const PureState& phi, const PureState& psi) {
  if (phi.num_qubits() != psi.num_qubits())
    throw std::invalid_argument("overlap: qubit counts differ");
  return phi.amps().dot(psi.amps());  // Eigen dot conjugates the first argument
}

namespace detail {

inline void check_qubit_subset(const std::vector<int>& subset, int num_qubits) {
  if (subset.empty()) throw std::invalid_argument("qubit subset must be nonempty");
  std::vector<int> s = subset;
  std::sort(s.begin(), s.end());
  if (s.front() < 1 || s.back() > num_qubits ||
      std::adjacent_find(s.begin(), s.end()) != s.end())
    throw std::invalid_argument("invalid qubit subset");
}

}  // namespace detail

inline DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  const int N = rho.num_qubits();
  detail::check_qubit_subset(keep, N);
  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  const int nk = static_cast<int>(kept.size());
  std::vector<int> traced;
  for (int q = 1; q <= N; ++q)
    if (!std::binary_search(kept.begin(), kept.end(), q)) traced.push_back(q);
  const int nt = N - nk;

  // Shift amounts placing the reduced/traced bit patterns into a full index.
  auto compose = [&](std::uint64_t xk, std::uint64_t xt) {
    std::uint64_t full = 0;
    for (int a = 0; a < nk; ++a)
      full |= static_cast<std::uint64_t>((xk >> (nk - 1 - a)) & 1u) << (N - kept[a]);
    for (int a = 0; a < nt; ++a)
      full |= static_cast<std::uint64_t>((xt >> (nt - 1 - a)) & 1u) << (N - traced[a]);
    return full;
  };

  const auto dk = static_cast<Eigen::Index>(dim_of(nk));
  Mat out = Mat::Zero(dk, dk);
  for (std::uint64_t r = 0; r < dim_of(nk); ++r)
    for (std::uint64_t c = 0; c < dim_of(nk); ++c) {
      cplx sum = 0;
      for (std::uint64_t t = 0; t < dim_of(nt); ++t)
        sum += rho.mat()(static_cast<Eigen::Index>(compose(r, t)),
                         static_cast<Eigen::Index>(compose(c, t)));
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = sum;
    }
  return DensityMatrix(nk, std::move(out));
}

inline Mat partial_transpose(const DensityMatrix& rho, const std::vector<int>& subset) {
  const int N = rho.num_qubits();
  detail::check_qubit_subset(subset, N);
  if (static_cast<int>(subset.size()) >= N)
    throw std::invalid_argument("partial_transpose: subset must be proper");
  std::uint64_t mask = 0;
  for (int q : subset) mask |= std::uint64_t{1} << (N - q);
  const std::uint64_t d = dim_of(N);
  Mat out(rho.dim(), rho.dim());
  for (std::uint64_t r = 0; r < d; ++r)
    for (std::uint64_t c = 0; c < d; ++c) {
      const std::uint64_t rr = (r & ~mask) | (c & mask);
      const std::uint64_t cc = (c & ~mask) | (r & mask);
      out(static_cast<Eigen::Index>(rr), static_cast<Eigen::Index>(cc)) =
          rho.mat()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  return out;
}

inline double min_pt_eigenvalue(const DensityMatrix& rho, const std::vector<int>& subset) {
  Eigen::SelfAdjointEigenSolver<Mat> es(partial_transpose(rho, subset), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

struct SchmidtCheckReport {
  struct NptCut {
    int traced_qubit;            // qubit removed before the bipartition test
    std::vector<int> subset;     // NPT cut within the remaining qubits (1-based)
    double min_eigenvalue;
  };
  bool not_schmidt_decomposable = false;
  std::vector<NptCut> npt_cuts;

  std::string verdict() const {
    return not_schmidt_decomposable ? "not Schmidt-decomposable" : "inconclusive";
  }
};

// Necessary condition only: a Schmidt-decomposable state has separable
// single-qubit trace-outs, so any NPT cut in a reduced state rules it out.
inline SchmidtCheckReport schmidt_necessary_check(const PureState& psi) {
  const int N = psi.num_qubits();
  if (N < 3) throw std::domain_error("schmidt_necessary_check: N >= 3 required");
  constexpr double kNptThreshold = -1e-9;
  SchmidtCheckReport report;
  const DensityMatrix rho = density(psi);
  for (int traced = 1; traced <= N; ++traced) {
    std::vector<int> keep;
    for (int q = 1; q <= N; ++q)
      if (q != traced) keep.push_back(q);
    const DensityMatrix red = partial_trace(rho, keep);
    const int M = N - 1;
    // Proper bipartitions up to complement: subsets containing qubit 1.
    for (std::uint64_t bits = 1; bits < dim_of(M); bits += 2) {
      std::vector<int> subset;
      for (int q = 1; q <= M; ++q)
        if ((bits >> (q - 1)) & 1u) subset.push_back(q);
      if (static_cast<int>(subset.size()) == M) continue;
      const double lam = min_pt_eigenvalue(red, subset);
      if (lam < kNptThreshold) {
        report.not_schmidt_decomposable = true;
        report.npt_cuts.push_back({traced, subset, lam});
      }
    }
  }
  return report;
}

}  // namespace qcorr

// dsl.hpp
// State-family descriptions for the command line, angle expressions with
// exact rational radicands, and amplitude/matrix file loaders.

#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "qcorr/states.hpp"

namespace qcorr {

struct DslError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
  return out;
}

inline double parse_number_or_ratio(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return std::stod(s);
    const double num = std::stod(s.substr(0, slash));
    const double den = std::stod(s.substr(slash + 1));
    if (den == 0.0) throw DslError("division by zero in ratio: " + s);
    return num / den;
  } catch (const std::invalid_argument&) {
    throw DslError("cannot parse number: " + s);
  }
}

}  // namespace detail

// Accepts plain radians ("0.7853", "3/4"), "pi"-scaled forms ("pi/4",
// "2*pi/3"), and exact inverse forms "asin(sqrt(p/q))" / "acos(sqrt(p/q))".
inline double parse_angle(const std::string& text) {
  std::string s = detail::strip_spaces(text);
  if (s.empty()) throw DslError("empty angle expression");

  for (const auto& [name, fn] :
       {std::pair<std::string, double (*)(double)>{"asin", [](double x) { return std::asin(x); }},
        std::pair<std::string, double (*)(double)>{"acos", [](double x) { return std::acos(x); }}}) {
    const std::string prefix = name + "(sqrt(";
    if (s.rfind(prefix, 0) == 0 && s.size() > prefix.size() + 2 &&
        s.substr(s.size() - 2) == "))") {
      const double r = detail::parse_number_or_ratio(
          s.substr(prefix.size(), s.size() - prefix.size() - 2));
      if (r < 0.0 || r > 1.0) throw DslError("radicand outside [0,1]: " + text);
      return fn(std::sqrt(r));
    }
  }

  const auto pi_pos = s.find("pi");
  if (pi_pos != std::string::npos) {
    double scale = 1.0;
    const std::string before = s.substr(0, pi_pos);
    const std::string after = s.substr(pi_pos + 2);
    if (!before.empty()) {
      if (before.back() != '*') throw DslError("cannot parse angle: " + text);
      scale *= detail::parse_number_or_ratio(before.substr(0, before.size() - 1));
    }
    if (!after.empty()) {
      if (after.front() != '/') throw DslError("cannot parse angle: " + text);
      scale /= detail::parse_number_or_ratio(after.substr(1));
    }
    return scale * M_PI;
  }

  return detail::parse_number_or_ratio(s);
}

struct StateSpecDsl {
  std::string family;  // ghz, ghz-sup, w, w-tilde, w-sup, dicke, two-block, custom
  int n = 0;
  std::uint64_t i = 0, j = 0;
  int sign_i = +1, sign_j = +1, sign = +1;
  double alpha = 0.0, gamma = 0.0;
  int m = 0, k = 0;
  std::string amplitudes_file;
};

// Text format: one "index real imag" triple per line; '#' starts a comment.
// The vector is renormalized, so unnormalized inputs are accepted.
inline PureState load_amplitudes(const std::string& path, int num_qubits) {
  std::ifstream in(path);
  if (!in) throw DslError("cannot open amplitudes file: " + path);
  Vec a = Vec::Zero(static_cast<Eigen::Index>(dim_of(num_qubits)));
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::uint64_t index;
    double re, im;
    if (!(ls >> index)) continue;
    if (!(ls >> re >> im)) throw DslError("malformed amplitude line: " + line);
    if (index >= dim_of(num_qubits)) throw DslError("amplitude index out of range: " + line);
    a(static_cast<Eigen::Index>(index)) = cplx(re, im);
  }
  const double norm = a.norm();
  if (norm < 1e-12) throw DslError("amplitudes file describes the zero vector");
  return PureState(num_qubits, a / norm);
}

// Text format: leading dimension d, then d*d row-major "real imag" pairs.
inline DensityMatrix load_density_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DslError("cannot open density file: " + path);
  Eigen::Index d = 0;
  if (!(in >> d) || d < 2) throw DslError("bad dimension in density file: " + path);
  int num_qubits = 0;
  while ((Eigen::Index{1} << num_qubits) < d) ++num_qubits;
  if ((Eigen::Index{1} << num_qubits) != d)
    throw DslError("density dimension is not a power of two");
  Mat rho(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) {
      double re, im;
      if (!(in >> re >> im)) throw DslError("truncated density file: " + path);
      rho(r, c) = cplx(re, im);
    }
  return DensityMatrix(num_qubits, std::move(rho));
}

inline PureState build_state(const StateSpecDsl& spec) {
  try {
    if (spec.family == "ghz") return ghz_canonical(spec.n, spec.i, spec.sign_i);
    if (spec.family == "ghz-sup")
      return ghz_superposition({spec.n, spec.i, spec.j, spec.sign_i, spec.sign_j, spec.alpha,
                                spec.gamma});
    if (spec.family == "w") return w_state(spec.n);
    if (spec.family == "w-tilde") return w_tilde(spec.n);
    if (spec.family == "w-sup") return w_superposition(spec.n, spec.alpha, spec.gamma);
    if (spec.family == "dicke") return dicke(spec.n, spec.k);
    if (spec.family == "two-block") {
      // For this family --m and --n are the two block sizes.
      TwoBlockSpec tb{spec.m, spec.n, spec.alpha, spec.gamma, spec.sign};
      return two_block_canonical(tb);
    }
    if (spec.family == "custom") {
      if (spec.amplitudes_file.empty()) throw DslError("custom family needs --amplitudes-file");
      return load_amplitudes(spec.amplitudes_file, spec.n);
    }
  } catch (const std::domain_error& e) {
    throw DslError(std::string("invalid state parameters: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DslError(std::string("invalid state parameters: ") + e.what());
  }
  throw DslError("unknown state family: " + spec.family);
}

}  // namespace qcorr

#include <doctest.h>

#include <cmath>
#include <random>

#include "qcorr/numerics.hpp"
#include "qcorr/states.hpp"

using namespace qcorr;

namespace {

Mat random_hermitian(Eigen::Index d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Mat a(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) a(r, c) = cplx(g(rng), g(rng));
  return (a + a.adjoint()) / 2.0;
}

DensityMatrix random_density(int n, std::uint64_t seed) {
  const auto d = static_cast<Eigen::Index>(dim_of(n));
  Mat a = random_hermitian(d, seed);
  a = a * a;  // PSD
  return DensityMatrix(n, a / a.trace().real());
}

}  // namespace

TEST_CASE("eigh") {
  const Spectrum id = eigh(Mat::Identity(3, 3));
  for (Eigen::Index k = 0; k < 3; ++k) CHECK(id.eigenvalues(k) == doctest::Approx(1.0));

  Mat diag = Mat::Zero(3, 3);
  diag(0, 0) = 3.0;
  diag(1, 1) = 1.0;
  diag(2, 2) = 2.0;
  const Spectrum s = eigh(diag);
  CHECK(s.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(s.eigenvalues(1) == doctest::Approx(2.0));
  CHECK(s.eigenvalues(2) == doctest::Approx(3.0));

  const Spectrum bell = eigh(density(ghz_canonical(2, 0, +1)).mat());
  CHECK(bell.eigenvalues(3) == doctest::Approx(1.0));
  for (Eigen::Index k = 0; k < 3; ++k) CHECK(std::abs(bell.eigenvalues(k)) < 1e-12);

  for (Eigen::Index d : {8, 128, 1024}) {
    const Mat a = random_hermitian(d, static_cast<std::uint64_t>(d));
    const Spectrum sp = eigh(a);
    const Mat rec = sp.eigenvectors * sp.eigenvalues.asDiagonal() * sp.eigenvectors.adjoint();
    CHECK((a - rec).cwiseAbs().maxCoeff() < 1e-9 * std::max(1.0, a.cwiseAbs().maxCoeff()));
    CHECK((sp.eigenvectors.adjoint() * sp.eigenvectors - Mat::Identity(d, d))
              .cwiseAbs()
              .maxCoeff() < 1e-9);
  }

  Mat nh = Mat::Zero(2, 2);
  nh(0, 1) = 1.0;
  CHECK_THROWS_AS(eigh(nh), std::domain_error);
}

TEST_CASE("binary_entropy") {
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(27.0 / 32.0) == doctest::Approx(0.6252624052234231).epsilon(1e-12));
  CHECK_THROWS_AS(binary_entropy(1.5), std::domain_error);
}

TEST_CASE("von_neumann_entropy") {
  CHECK(von_neumann_entropy(density(ghz_canonical(3, 0, +1))) < 1e-10);
  CHECK(von_neumann_entropy(DensityMatrix(2, Mat::Identity(4, 4) / 4.0)) == doctest::Approx(2.0));

  const double c2 = 0.7, s2 = 0.3;
  Mat d = Mat::Zero(4, 4);
  d(0, 0) = c2 / 2;
  d(1, 1) = s2 / 2;
  d(2, 2) = s2 / 2;
  d(3, 3) = c2 / 2;
  CHECK(von_neumann_entropy(DensityMatrix(2, d)) == doctest::Approx(1.0 + binary_entropy(c2)));

  // Unitary invariance.
  const DensityMatrix rho = random_density(3, 11);
  const Spectrum basis = eigh(random_hermitian(8, 12));
  const DensityMatrix rot(3, basis.eigenvectors * rho.mat() * basis.eigenvectors.adjoint());
  CHECK(von_neumann_entropy(rot) == doctest::Approx(von_neumann_entropy(rho)).epsilon(1e-9));
}

TEST_CASE("relative_entropy") {
  const DensityMatrix rho = random_density(2, 21);
  CHECK(relative_entropy(rho, rho) == doctest::Approx(0.0).epsilon(1e-9));

  const double alpha = 0.9;
  const DensityMatrix tb = density(two_block_canonical({2, 2, alpha, 0.0, +1}));
  const double c2 = std::cos(alpha) * std::cos(alpha);
  CHECK(relative_entropy(tb, css_ghz_superposition(2, 2, alpha)) ==
        doctest::Approx(1.0 + binary_entropy(c2)).epsilon(1e-9));

  CHECK(relative_entropy(density(ghz_canonical(2, 0, +1)),
                         DensityMatrix(2, Mat::Identity(4, 4) / 4.0)) == doctest::Approx(2.0));

  // Support leak: pure target cannot dominate a mixed state.
  CHECK(std::isinf(relative_entropy(DensityMatrix(1, Mat::Identity(2, 2) / 2.0),
                                    density(PureState(1, [] {
                                      Vec v(2);
                                      v << 1.0, 0.0;
                                      return v;
                                    }())))));

  for (std::uint64_t seed = 31; seed < 36; ++seed) {
    const DensityMatrix x = random_density(2, seed);
    const DensityMatrix y = random_density(2, seed + 100);
    const double s = relative_entropy(x, y);
    CHECK(s >= -1e-9);
    if ((x.mat() - y.mat()).cwiseAbs().maxCoeff() > 1e-8) CHECK(s > 0.0);
  }
}

TEST_CASE("positive_real_roots") {
  const RootSet simple = positive_real_roots({-1.0, 0.0, 1.0});  // t^2 - 1
  REQUIRE(simple.roots.size() == 1);
  CHECK(simple.roots[0] == doctest::Approx(1.0).epsilon(1e-12));

  // Endpoint factorization: c(3 t^2 - 1).
  const RootSet end = positive_real_roots({-1.0, 0.0, 3.0});
  REQUIRE(end.roots.size() == 1);
  CHECK(end.roots[0] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));

  // t^3 + 2t^2 - 2t - 1 has the root t = 1.
  const RootSet cubic = positive_real_roots({-1.0, -2.0, 2.0, 1.0});
  bool has_one = false;
  for (double t : cubic.roots)
    if (std::abs(t - 1.0) < 1e-10) has_one = true;
  CHECK(has_one);

  // Planted positive roots: (t - 1/3)(t - 2)(t - 5) expanded.
  const std::vector<double> planted = {1.0 / 3, 2.0, 5.0};
  std::vector<double> coeffs = {1.0};
  for (double r : planted) {
    std::vector<double> next(coeffs.size() + 1, 0.0);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      next[k] += -r * coeffs[k];
      next[k + 1] += coeffs[k];
    }
    coeffs = next;
  }
  const RootSet rec = positive_real_roots(coeffs);
  REQUIRE(rec.roots.size() == 3);
  for (std::size_t k = 0; k < 3; ++k)
    CHECK(rec.roots[k] == doctest::Approx(planted[k]).epsilon(1e-10));
  for (double res : rec.residuals) CHECK(std::abs(res) < 1e-10);

  CHECK_THROWS_AS(positive_real_roots({0.0}), std::domain_error);
}

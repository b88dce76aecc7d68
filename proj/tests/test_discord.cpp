#include <doctest.h>

#include <cmath>

#include "qcorr/discord.hpp"
#include "qcorr/numerics.hpp"
#include "qcorr/states.hpp"

using namespace qcorr;

namespace {

OptimizerConfig fast_cfg(int starts = 16) {
  OptimizerConfig cfg;
  cfg.num_starts = starts;
  return cfg;
}

}  // namespace

TEST_CASE("dephase") {
  const DensityMatrix diag = css_ghz_superposition(1, 1, 0.5);
  const DensityMatrix same = dephase(diag, LocalBasisSet::computational(2));
  CHECK((same.mat() - diag.mat()).cwiseAbs().maxCoeff() < 1e-12);

  const DensityMatrix w3 = density(w_state(3));
  const DensityMatrix chi = dephase(w3, LocalBasisSet::computational(3));
  for (std::uint64_t x : {1ull, 2ull, 4ull})
    CHECK(chi.mat()(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)).real() ==
          doctest::Approx(1.0 / 3.0));
  CHECK(von_neumann_entropy(chi) == doctest::Approx(std::log2(3.0)));

  // Dephasing never decreases entropy.
  std::vector<Eigen::Matrix2cd> bs;
  for (int q = 0; q < 3; ++q) bs.push_back(LocalBasisSet::from_angles(0.4 + 0.2 * q, 0.7 * q));
  const LocalBasisSet basis{bs};
  const DensityMatrix sw = sigma_w(3);
  CHECK(von_neumann_entropy(dephase(sw, basis)) >= von_neumann_entropy(sw) - 1e-10);
  CHECK(dephased_entropy(sw, basis) ==
        doctest::Approx(von_neumann_entropy(dephase(sw, basis))).epsilon(1e-9));
}

TEST_CASE("discord_search") {
  Vec product = Vec::Zero(4);
  product(0) = 1.0;
  CHECK(discord_search(density(PureState(2, product)), fast_cfg()).value ==
        doctest::Approx(0.0).epsilon(1e-9));

  const BasisSearchResult w3 = discord_search(density(w_state(3)), fast_cfg(32));
  CHECK(w3.value == doctest::Approx(std::log2(3.0)).epsilon(1e-6));
  CHECK(w3.value >= std::log2(3.0) - 1e-6);
  CHECK(w3.state_entropy == doctest::Approx(0.0).epsilon(1e-9));

  for (double a : {0.5, 1.0}) {
    const double c2 = std::cos(a) * std::cos(a);
    const BasisSearchResult tb =
        discord_search(density(two_block_canonical({2, 2, a, 0.0, +1})), fast_cfg());
    CHECK(tb.value == doctest::Approx(1.0 + binary_entropy(c2)).epsilon(1e-5));
  }
}

TEST_CASE("w_lambda") {
  for (int N = 2; N <= 8; ++N)
    for (int pk = 0; pk <= 10; ++pk) {
      const double p = pk / 10.0;
      double total = 0.0;
      for (int k = 0; k <= N; ++k) total += binomial(N, k) * w_lambda(N, k, p);
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  CHECK(w_lambda(5, 1, 1.0) == doctest::Approx(1.0 / 5.0));
  CHECK(w_lambda(4, 2, 0.5) == doctest::Approx(0.0));  // bracket N(1-p) - k vanishes
  CHECK_THROWS_AS(w_lambda(3, 4, 0.5), std::domain_error);
  CHECK_THROWS_AS(w_lambda(3, 1, 1.5), std::domain_error);
}

TEST_CASE("w_symmetric_entropy and sweep") {
  for (int N = 2; N <= 8; ++N) {
    CHECK(w_symmetric_entropy(N, 0.0) == doctest::Approx(std::log2(N)).epsilon(1e-12));
    CHECK(w_symmetric_entropy(N, 1.0) == doctest::Approx(std::log2(N)).epsilon(1e-12));
  }
  CHECK(w_symmetric_entropy(4, 0.5) == doctest::Approx(3.0).epsilon(1e-12));

  std::vector<double> grid;
  for (int k = 0; k <= 1000; ++k) grid.push_back(k / 1000.0);
  const SweepResult sweep = w_discord_sweep(4, grid);
  CHECK(sweep.min_value == doctest::Approx(2.0).epsilon(1e-9));
  REQUIRE(sweep.argmin.size() == 2);
  CHECK(sweep.argmin.front() == doctest::Approx(0.0));
  CHECK(sweep.argmin.back() == doctest::Approx(1.0));
  for (double s : sweep.entropy) CHECK(s >= 2.0 - 1e-12);

  CHECK_THROWS_AS(w_discord_sweep(4, std::vector<double>{0.5}), std::invalid_argument);
}

TEST_CASE("dissonance") {
  CHECK(dissonance(css_ghz_superposition(2, 2, 0.8), fast_cfg()).value ==
        doctest::Approx(0.0).epsilon(1e-9));
  CHECK(dissonance(sigma_w(3), fast_cfg(32)).value > 1e-3);

  Mat diag = Mat::Zero(4, 4);
  diag(0, 0) = 0.4;
  diag(1, 1) = 0.1;
  diag(2, 2) = 0.3;
  diag(3, 3) = 0.2;
  CHECK(dissonance(DensityMatrix(2, diag), fast_cfg()).value ==
        doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("correlations") {
  Vec product = Vec::Zero(8);
  product(0) = 1.0;
  CHECK(total_correlation(density(PureState(3, product))) == doctest::Approx(0.0));
  CHECK(classical_correlation(density(PureState(3, product))) == doctest::Approx(0.0));

  for (int N : {3, 4})
    CHECK(total_correlation(density(ghz_canonical(N, 0, +1))) ==
          doctest::Approx(static_cast<double>(N)).epsilon(1e-10));

  CHECK(total_correlation(density(w_state(3))) ==
        doctest::Approx(2.7548875021634687).epsilon(1e-10));

  // The product of marginals really is the best product state found by sampling.
  CHECK(classical_correlation_sampling_gap(density(w_state(3)), 17, 200) >= -1e-9);

  const CorrelationsReport rep =
      correlations_report(density(w_state(3)), 1.0, sigma_w(3), fast_cfg());
  CHECK(rep.total >= -1e-9);
  CHECK(rep.discord >= -1e-9);
  CHECK(rep.dissonance >= -1e-9);
  CHECK(rep.classical >= -1e-9);
  CHECK(rep.classical_css >= -1e-9);
}

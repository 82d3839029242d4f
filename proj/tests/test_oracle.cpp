#include "hkc/errors.hpp"
#include "hkc/oracle.hpp"
#include "hkc/spectral.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace hkc;
using hkc::test::hybrid;
using hkc::test::nn_chain;

namespace {

std::vector<double> subset_sums(const Eigen::VectorXd& energies) {
  std::vector<double> sums{0.0};
  const Eigen::Index n = energies.size() / 2;
  for (Eigen::Index k = n; k < 2 * n; ++k) {
    const std::size_t half = sums.size();
    for (std::size_t i = 0; i < half; ++i) sums.push_back(sums[i] + energies[k]);
  }
  std::sort(sums.begin(), sums.end());
  return sums;
}

double max_excitation_gap(const std::vector<double>& fock, const std::vector<double>& sums) {
  double worst = 0.0;
  for (std::size_t i = 0; i < fock.size(); ++i) {
    worst = std::max(worst, std::abs(fock[i] - fock.front() - sums[i]));
  }
  return worst;
}

}  // namespace

TEST_CASE("single-site Fock matrix") {
  ChainSpec s = nn_chain(1, 0.5);
  s.hopping = 0.0;
  s.pairing = 0.0;
  const FockMatrix h = fock_hamiltonian(s);
  REQUIRE(h.dim() == 2);
  const Eigen::MatrixXd dense(h.matrix);
  CHECK(dense(0, 0) == doctest::Approx(0.25));
  CHECK(dense(1, 1) == doctest::Approx(-0.25));
  CHECK(dense(0, 1) == 0.0);
  CHECK(dense(1, 0) == 0.0);
}

TEST_CASE("two-site Fock matrix") {
  const FockMatrix h = fock_hamiltonian(nn_chain(2));
  const Eigen::MatrixXd dense(h.matrix);
  // bit j is n_{j+1}: index 1 = |10>, 2 = |01>, 3 = |11>
  Eigen::Matrix4d expected = Eigen::Matrix4d::Zero();
  expected(0, 3) = expected(3, 0) = -1.0;
  expected(1, 2) = expected(2, 1) = -1.0;
  CHECK((dense - expected).cwiseAbs().maxCoeff() < 1e-15);
  const auto e = fock_spectrum(h);
  REQUIRE(e.size() == 4);
  CHECK(e[0] == doctest::Approx(-1.0));
  CHECK(e[1] == doctest::Approx(-1.0));
  CHECK(e[2] == doctest::Approx(1.0));
  CHECK(e[3] == doctest::Approx(1.0));
}

TEST_CASE("Fock matrices are symmetric and parity preserving") {
  std::mt19937 rng(31);
  for (int i = 0; i < 15; ++i) {
    const ChainSpec s = hkc::test::random_spec(rng, 7);
    const FockMatrix h = fock_hamiltonian(s);
    const Eigen::MatrixXd dense(h.matrix);
    CHECK((dense - dense.transpose()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(preserves_parity(h));
  }
}

TEST_CASE("size limits") {
  CHECK_THROWS_AS(fock_hamiltonian(nn_chain(kMaxFockSites + 1)), TooLarge);
  CHECK_THROWS_AS(compare_bdg_with_fock(nn_chain(kMaxVerifySites + 1), 1e-9), TooLarge);
  CHECK_THROWS_AS(fock_hamiltonian(nn_chain(0)), InvalidSpec);
}

TEST_CASE("BdG spectrum reproduces the many-body spectrum") {
  ChainSpec lr = nn_chain(6, -0.5);
  lr.layout = Layout::PureLR;
  lr.lr_exponent = 0.5;
  const ChainSpec specs[] = {
      nn_chain(6, 0.3),
      lr,
      hybrid(Layout::HybridNNLR, 6, 3, 0.5, 0.7),
      hybrid(Layout::HybridLRNN, 6, 3, 0.5, 0.7),
      hybrid(Layout::HybridNNLR, 8, 3, 1.3, -0.4, 0.9),
      hybrid(Layout::HybridLRNN, 7, 5, 2.0, 1.1, -1.2),
  };
  for (const ChainSpec& s : specs) {
    CAPTURE(to_string(s.layout));
    const OracleReport r = verify_bdg_against_fock(s, 1e-9);
    CHECK(r.passed);
    CHECK(r.max_deviation < 1e-9);
    CHECK(r.levels == (1 << s.length));
  }
}

TEST_CASE("ground-state energy equals minus half the quasiparticle sum") {
  std::mt19937 rng(77);
  for (int i = 0; i < 10; ++i) {
    const ChainSpec s = hkc::test::random_spec(rng, 8);
    const EigenSystem eig = eigensystem(build_bdg(s));
    const double e0 = fock_spectrum(fock_hamiltonian(s)).front();
    CHECK(e0 == doctest::Approx(-0.5 * eig.energies.tail(eig.sites()).sum()).epsilon(1e-10));
  }
}

TEST_CASE("the oracle detects a flipped interface pairing") {
  const ChainSpec s = hybrid(Layout::HybridNNLR, 6, 3, 0.5, 0.7, 0.2);
  const BdGMatrix h = build_bdg(s);
  Eigen::MatrixXd b = h.anomalous();
  b(2, 3) = -b(2, 3);
  b(3, 2) = -b(3, 2);
  const EigenSystem flipped = eigensystem(BdGMatrix(h.normal(), b));
  const std::vector<double> fock = fock_spectrum(fock_hamiltonian(s));
  CHECK(max_excitation_gap(fock, subset_sums(flipped.energies)) > 1e-3);
  CHECK(max_excitation_gap(fock, subset_sums(eigensystem(h).energies)) < 1e-9);
}

TEST_CASE("mismatch beyond tolerance is reported") {
  const ChainSpec s = hybrid(Layout::HybridNNLR, 6, 3, 0.5, 0.7);
  const OracleReport r = compare_bdg_with_fock(s, 1e-300);
  CHECK_FALSE(r.passed);
  CHECK_THROWS_AS(verify_bdg_against_fock(s, 1e-300), MismatchBeyondTol);
}

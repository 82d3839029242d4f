#include "hkc/errors.hpp"
#include "hkc/model.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace hkc;
using hkc::test::hybrid;
using hkc::test::nn_chain;

TEST_CASE("validate_spec accepts and rejects") {
  CHECK_NOTHROW(validate_spec(hybrid(Layout::HybridNNLR, 100, 50, 0.5, 0.0)));

  CHECK_THROWS_AS(validate_spec(hybrid(Layout::HybridNNLR, 10, 0, 0.5, 0.0)), InvalidSpec);
  CHECK_THROWS_AS(validate_spec(hybrid(Layout::HybridLRNN, 10, 10, 0.5, 0.0)), InvalidSpec);

  ChainSpec s = nn_chain(10);
  s.lr_exponent = -1.0;
  CHECK_THROWS_AS(validate_spec(s), InvalidSpec);

  s = nn_chain(0);
  CHECK_THROWS_AS(validate_spec(s), InvalidSpec);

  s = nn_chain(10);
  s.chemical_potential = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(validate_spec(s), InvalidSpec);
  s = nn_chain(10);
  s.interface_coupling = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(validate_spec(s), InvalidSpec);
}

TEST_CASE("layout names round-trip") {
  for (Layout l : {Layout::PureNN, Layout::PureLR, Layout::HybridNNLR, Layout::HybridLRNN}) {
    CHECK(parse_layout(to_string(l)) == l);
  }
  CHECK_FALSE(parse_layout("ladder").has_value());
}

TEST_CASE("single site carries only the chemical potential") {
  ChainSpec s = nn_chain(1, 0.5);
  s.hopping = 0.0;
  s.pairing = 0.0;
  const BdGMatrix h = build_bdg(s);
  Eigen::Matrix2d expected;
  expected << -0.5, 0.0, 0.0, 0.5;
  CHECK(h.matrix() == expected);
}

TEST_CASE("BdG structure holds exactly for every layout") {
  std::mt19937 rng(7);
  const int n_specs = 40;
  for (int i = 0; i < n_specs; ++i) {
    const ChainSpec s = hkc::test::random_spec(rng, 12);
    CAPTURE(to_string(s.layout));
    CAPTURE(s.length);
    const BdGMatrix h = build_bdg(s);
    const Eigen::MatrixXd& m = h.matrix();
    CHECK((m - m.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((h.anomalous() + h.anomalous().transpose()).cwiseAbs().maxCoeff() == 0.0);
    const Eigen::MatrixXd tx = tau_x(s.length);
    CHECK((tx * m * tx + m).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("nearest-neighbour matrix elements") {
  ChainSpec s = nn_chain(6, 0.3);
  s.hopping = 0.7;
  s.pairing = 1.3;
  const BdGMatrix h = build_bdg(s);
  for (int j = 0; j < 6; ++j) CHECK(h.normal()(j, j) == -0.3);
  for (int j = 0; j + 1 < 6; ++j) {
    CHECK(h.normal()(j, j + 1) == -0.7);
    CHECK(h.normal()(j + 1, j) == -0.7);
    CHECK(h.anomalous()(j, j + 1) == -1.3);
    CHECK(h.anomalous()(j + 1, j) == 1.3);
  }
  CHECK(h.anomalous()(0, 2) == 0.0);
  CHECK(h.normal()(0, 5) == 0.0);
}

TEST_CASE("long-range pairing stays inside its segment") {
  const ChainSpec s = hybrid(Layout::HybridNNLR, 10, 4, 0.5, 0.0);
  const BdGMatrix h = build_bdg(s);
  for (int j = 4; j < 10; ++j) {
    for (int k = j + 1; k < 10; ++k) {
      CHECK(h.anomalous()(j, k) == doctest::Approx(-1.0 / std::sqrt(double(k - j))));
    }
  }
  for (int j = 0; j < 4; ++j) {
    for (int k = 4; k < 10; ++k) CHECK(h.anomalous()(j, k) == 0.0);
    for (int k = j + 2; k < 4; ++k) CHECK(h.anomalous()(j, k) == 0.0);
  }
  CHECK(lr_pairing(1.0, 0.5, 4) == doctest::Approx(0.5));
  CHECK(lr_pairing(2.0, 2.0, 1) == doctest::Approx(2.0));
}

TEST_CASE("interface coupling sign") {
  const ChainSpec s = hybrid(Layout::HybridNNLR, 8, 4, 1.5, 1.0);
  const BdGMatrix h = build_bdg(s);
  CHECK(h.normal()(3, 4) == 1.0);
  CHECK(h.normal()(4, 3) == 1.0);
  CHECK(h.anomalous()(3, 4) == 1.0);
  CHECK(h.anomalous()(4, 3) == -1.0);
  // opposite to the bulk bond on either side
  CHECK(h.normal()(2, 3) == -1.0);
  CHECK(h.anomalous()(2, 3) == -1.0);
}

TEST_CASE("decoupled hybrid is block diagonal") {
  for (Layout l : {Layout::HybridNNLR, Layout::HybridLRNN}) {
    const BdGMatrix h = build_bdg(hybrid(l, 12, 5, 0.7, 0.0));
    CHECK(h.normal().block(0, 5, 5, 7).cwiseAbs().maxCoeff() == 0.0);
    CHECK(h.anomalous().block(0, 5, 5, 7).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("large exponent reduces long-range pairing to nearest neighbour") {
  for (int length : {2, 7, 20}) {
    ChainSpec lr = nn_chain(length, 0.4);
    lr.layout = Layout::PureLR;
    lr.lr_exponent = 40.0;
    const Eigen::MatrixXd diff = build_bdg(lr).matrix() - build_bdg(nn_chain(length, 0.4)).matrix();
    CHECK(diff.cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("switched layout is the mirror image up to a hole-sector sign") {
  const int length = 11;
  for (int split : {1, 4, 10}) {
    const BdGMatrix a = build_bdg(hybrid(Layout::HybridNNLR, length, split, 0.8, 0.6, 0.2));
    const BdGMatrix b =
        build_bdg(hybrid(Layout::HybridLRNN, length, length - split, 0.8, 0.6, 0.2));
    const Eigen::MatrixXd p = site_reversal(length);
    Eigen::VectorXd g = Eigen::VectorXd::Ones(2 * length);
    g.tail(length).setConstant(-1.0);
    const Eigen::MatrixXd lhs = p * a.matrix() * p.transpose();
    const Eigen::MatrixXd rhs = g.asDiagonal() * b.matrix() * g.asDiagonal();
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-14);
  }
}

#include "hkc/model.hpp"

#include "hkc/errors.hpp"

#include <cmath>
#include <sstream>

namespace hkc {

std::string_view to_string(Layout layout) {
  switch (layout) {
    case Layout::PureNN: return "nn";
    case Layout::PureLR: return "lr";
    case Layout::HybridNNLR: return "hybrid-nn-lr";
    case Layout::HybridLRNN: return "hybrid-lr-nn";
  }
  return "unknown";
}

std::optional<Layout> parse_layout(std::string_view name) {
  for (Layout l : {Layout::PureNN, Layout::PureLR, Layout::HybridNNLR,
                   Layout::HybridLRNN}) {
    if (to_string(l) == name) return l;
  }
  return std::nullopt;
}

bool is_hybrid(Layout layout) {
  return layout == Layout::HybridNNLR || layout == Layout::HybridLRNN;
}

const ChainSpec& validate_spec(const ChainSpec& spec) {
  auto fail = [](const std::string& msg) { throw InvalidSpec(msg); };
  if (spec.length < 1) fail("length: must be >= 1, got " + std::to_string(spec.length));
  if (is_hybrid(spec.layout)) {
    if (spec.split < 1 || spec.split > spec.length - 1) {
      std::ostringstream os;
      os << "split: hybrid layout needs 1 <= split <= length-1 (length="
         << spec.length << "), got " << spec.split;
      fail(os.str());
    }
  } else if (spec.split < 0 || spec.split > spec.length) {
    fail("split: must lie in [0, length], got " + std::to_string(spec.split));
  }
  if (!std::isfinite(spec.lr_exponent) || !(spec.lr_exponent > 0.0)) {
    fail("lr_exponent: must be finite and > 0");
  }
  const std::pair<const char*, double> couplings[] = {
      {"hopping", spec.hopping},
      {"pairing", spec.pairing},
      {"chemical_potential", spec.chemical_potential},
      {"interface_coupling", spec.interface_coupling}};
  for (const auto& [name, value] : couplings) {
    if (!std::isfinite(value)) fail(std::string(name) + ": must be finite");
  }
  return spec;
}

double lr_pairing(double pairing, double exponent, int distance) {
  return pairing / std::pow(static_cast<double>(distance), exponent);
}

BdGMatrix::BdGMatrix(Eigen::MatrixXd normal, Eigen::MatrixXd anomalous)
    : normal_(std::move(normal)), anomalous_(std::move(anomalous)) {
  const Eigen::Index n = normal_.rows();
  full_.resize(2 * n, 2 * n);
  full_.topLeftCorner(n, n) = normal_;
  full_.topRightCorner(n, n) = anomalous_;
  full_.bottomLeftCorner(n, n) = -anomalous_;
  full_.bottomRightCorner(n, n) = -normal_;
}

namespace {

class BlockBuilder {
 public:
  explicit BlockBuilder(int sites)
      : a_(Eigen::MatrixXd::Zero(sites, sites)),
        b_(Eigen::MatrixXd::Zero(sites, sites)) {}

  void onsite(int j, double value) { a_(j, j) += value; }

  // value (c_j^† c_k + c_k^† c_j)
  void hop(int j, int k, double value) {
    a_(j, k) += value;
    a_(k, j) += value;
  }

  // value (c_j c_k + h.c.) with h.c. = c_k^† c_j^†, i.e. ½ B c†c† with
  // B_kj = value, B_jk = -value.
  void pair(int j, int k, double value) {
    b_(k, j) += value;
    b_(j, k) -= value;
  }

  // value (c_j^† c_k^† + h.c.)
  void pair_dagger(int j, int k, double value) {
    b_(j, k) += value;
    b_(k, j) -= value;
  }

  BdGMatrix finish() && { return BdGMatrix(std::move(a_), std::move(b_)); }

 private:
  Eigen::MatrixXd a_;
  Eigen::MatrixXd b_;
};

// Sites first..last (0-based, inclusive).
void add_nn_segment(BlockBuilder& h, const ChainSpec& s, int first, int last) {
  for (int j = first; j < last; ++j) {
    h.hop(j, j + 1, -s.hopping);
    h.pair(j, j + 1, s.pairing);
  }
}

void add_lr_segment(BlockBuilder& h, const ChainSpec& s, int first, int last) {
  for (int j = first; j < last; ++j) {
    h.hop(j, j + 1, -s.hopping);
    for (int k = j + 1; k <= last; ++k) {
      h.pair(j, k, lr_pairing(s.pairing, s.lr_exponent, k - j));
    }
  }
}

}  // namespace

BdGMatrix build_bdg(const ChainSpec& spec) {
  validate_spec(spec);
  const int n = spec.length;
  BlockBuilder h(n);
  for (int j = 0; j < n; ++j) h.onsite(j, -spec.chemical_potential);

  const int cut = spec.split;  // first site (0-based) of the right segment
  switch (spec.layout) {
    case Layout::PureNN:
      add_nn_segment(h, spec, 0, n - 1);
      break;
    case Layout::PureLR:
      add_lr_segment(h, spec, 0, n - 1);
      break;
    case Layout::HybridNNLR:
      add_nn_segment(h, spec, 0, cut - 1);
      add_lr_segment(h, spec, cut, n - 1);
      break;
    case Layout::HybridLRNN:
      add_lr_segment(h, spec, 0, cut - 1);
      add_nn_segment(h, spec, cut, n - 1);
      break;
  }
  if (is_hybrid(spec.layout)) {
    // J_h (c_{L1}^† c_{L1+1} + c_{L1}^† c_{L1+1}^† + h.c.)
    h.hop(cut - 1, cut, spec.interface_coupling);
    h.pair_dagger(cut - 1, cut, spec.interface_coupling);
  }
  return std::move(h).finish();
}

Eigen::MatrixXd tau_x(int sites) {
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(2 * sites, 2 * sites);
  t.topRightCorner(sites, sites).setIdentity();
  t.bottomLeftCorner(sites, sites).setIdentity();
  return t;
}

Eigen::MatrixXd site_reversal(int sites) {
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(2 * sites, 2 * sites);
  for (int j = 0; j < sites; ++j) {
    p(j, sites - 1 - j) = 1.0;
    p(sites + j, 2 * sites - 1 - j) = 1.0;
  }
  return p;
}

}  // namespace hkc

#include "hkc/oracle.hpp"

#include "hkc/errors.hpp"
#include "hkc/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>

namespace hkc {

namespace {

using State = std::uint32_t;

struct Op {
  int site;  // 0-based
  bool dagger;
};

// Applies a product of operators (rightmost acts first) to a basis state.
std::optional<std::pair<double, State>> apply(std::initializer_list<Op> product, State s) {
  double sign = 1.0;
  const Op* ops = product.begin();
  for (std::size_t i = product.size(); i-- > 0;) {
    const State bit = State{1} << ops[i].site;
    const bool occupied = (s & bit) != 0;
    if (occupied == ops[i].dagger) return std::nullopt;
    if (std::popcount(s & (bit - 1)) % 2) sign = -sign;
    s ^= bit;
  }
  return std::pair{sign, s};
}

struct Segment {
  int first;
  int last;
  bool long_range;
};

std::vector<Segment> segments(const ChainSpec& s) {
  const int n = s.length;
  switch (s.layout) {
    case Layout::PureNN: return {{0, n - 1, false}};
    case Layout::PureLR: return {{0, n - 1, true}};
    case Layout::HybridNNLR: return {{0, s.split - 1, false}, {s.split, n - 1, true}};
    case Layout::HybridLRNN: return {{0, s.split - 1, true}, {s.split, n - 1, false}};
  }
  return {};
}

class TermSink {
 public:
  explicit TermSink(int sites) : dim_(State{1} << sites) {}

  void add(double coef, std::initializer_list<Op> product) {
    if (coef == 0.0) return;
    for (State s = 0; s < dim_; ++s) {
      if (auto r = apply(product, s)) {
        triplets_.emplace_back(static_cast<int>(r->second), static_cast<int>(s), coef * r->first);
      }
    }
  }

  void diagonal(double coef, int site, double offset) {
    for (State s = 0; s < dim_; ++s) {
      const double n = (s >> site) & 1U;
      triplets_.emplace_back(static_cast<int>(s), static_cast<int>(s), coef * (n - offset));
    }
  }

  Eigen::SparseMatrix<double> finish() const {
    Eigen::SparseMatrix<double> m(dim_, dim_);
    m.setFromTriplets(triplets_.begin(), triplets_.end());
    m.prune(0.0);
    return m;
  }

 private:
  State dim_;
  std::vector<Eigen::Triplet<double>> triplets_;
};

}  // namespace

FockMatrix fock_hamiltonian(const ChainSpec& spec) {
  validate_spec(spec);
  if (spec.length > kMaxFockSites) {
    throw TooLarge("Fock oracle supports at most " + std::to_string(kMaxFockSites) +
                   " sites, got " + std::to_string(spec.length));
  }
  const int n = spec.length;
  const double J = spec.hopping;
  const double mu = spec.chemical_potential;
  TermSink h(n);

  for (int j = 0; j < n; ++j) h.diagonal(-mu, j, 0.5);  // −μ (n_j − ½)

  for (const Segment& seg : segments(spec)) {
    for (int j = seg.first; j < seg.last; ++j) {
      // −J (c_j^† c_{j+1} + c_{j+1}^† c_j)
      h.add(-J, {{j, true}, {j + 1, false}});
      h.add(-J, {{j + 1, true}, {j, false}});
      const int reach = seg.long_range ? seg.last : j + 1;
      for (int k = j + 1; k <= reach; ++k) {
        const double d = seg.long_range
                             ? spec.pairing / std::pow(static_cast<double>(k - j), spec.lr_exponent)
                             : spec.pairing;
        // Δ_jk (c_j c_k + c_k^† c_j^†)
        h.add(d, {{j, false}, {k, false}});
        h.add(d, {{k, true}, {j, true}});
      }
    }
  }

  if (is_hybrid(spec.layout)) {
    const int a = spec.split - 1;
    const int b = spec.split;
    const double jh = spec.interface_coupling;
    // J_h (c_a^† c_b + c_a^† c_b^† + h.c.)
    h.add(jh, {{a, true}, {b, false}});
    h.add(jh, {{b, true}, {a, false}});
    h.add(jh, {{a, true}, {b, true}});
    h.add(jh, {{b, false}, {a, false}});
  }
  return FockMatrix{n, h.finish()};
}

bool preserves_parity(const FockMatrix& h) {
  for (int col = 0; col < h.matrix.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(h.matrix, col); it; ++it) {
      const auto row = static_cast<State>(it.row());
      if ((std::popcount(row) - std::popcount(static_cast<State>(col))) % 2 != 0) return false;
    }
  }
  return true;
}

std::vector<double> fock_spectrum(const FockMatrix& h) {
  if (!preserves_parity(h)) throw ConvergenceFailure("Fock matrix mixes parity sectors");
  std::vector<double> levels;
  levels.reserve(static_cast<std::size_t>(h.dim()));
  const Eigen::MatrixXd dense = Eigen::MatrixXd(h.matrix);
  for (int parity : {0, 1}) {
    std::vector<int> idx;
    for (State s = 0; s < static_cast<State>(h.dim()); ++s) {
      if (std::popcount(s) % 2 == parity) idx.push_back(static_cast<int>(s));
    }
    const auto m = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXd block(m, m);
    for (Eigen::Index r = 0; r < m; ++r) {
      for (Eigen::Index c = 0; c < m; ++c) block(r, c) = dense(idx[r], idx[c]);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw ConvergenceFailure("Fock sector eigensolve failed");
    for (Eigen::Index k = 0; k < m; ++k) levels.push_back(solver.eigenvalues()[k]);
  }
  std::sort(levels.begin(), levels.end());
  return levels;
}

OracleReport compare_bdg_with_fock(const ChainSpec& spec, double tol) {
  validate_spec(spec);
  if (spec.length > kMaxVerifySites) {
    throw TooLarge("oracle comparison supports at most " + std::to_string(kMaxVerifySites) +
                   " sites");
  }
  const std::vector<double> fock = fock_spectrum(fock_hamiltonian(spec));

  const EigenSystem eig = eigensystem(build_bdg(spec));
  const int n = eig.sites();
  std::vector<double> sums{0.0};
  for (int k = n; k < 2 * n; ++k) {
    const std::size_t half = sums.size();
    for (std::size_t i = 0; i < half; ++i) sums.push_back(sums[i] + eig.energies[k]);
  }
  std::sort(sums.begin(), sums.end());

  OracleReport report;
  report.spec = spec;
  report.tolerance = tol;
  report.levels = static_cast<int>(fock.size());
  for (std::size_t i = 0; i < fock.size(); ++i) {
    const double dev = std::abs((fock[i] - fock.front()) - sums[i]);
    if (dev > report.max_deviation) {
      report.max_deviation = dev;
      report.worst_level = static_cast<int>(i);
    }
  }
  report.passed = report.max_deviation <= tol;
  return report;
}

OracleReport verify_bdg_against_fock(const ChainSpec& spec, double tol) {
  OracleReport report = compare_bdg_with_fock(spec, tol);
  if (!report.passed) {
    std::ostringstream os;
    os << "level " << report.worst_level << " deviates by " << report.max_deviation
       << " (tol " << tol << ")";
    throw MismatchBeyondTol(os.str());
  }
  return report;
}

}  // namespace hkc

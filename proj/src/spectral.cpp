#include "hkc/spectral.hpp"

#include "hkc/errors.hpp"
#include "hkc/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace hkc {

namespace {

Eigen::VectorXd apply_tau_x(const Eigen::VectorXd& v) {
  const Eigen::Index n = v.size() / 2;
  Eigen::VectorXd out(v.size());
  out.head(n) = v.tail(n);
  out.tail(n) = v.head(n);
  return out;
}

// Flip the sign so the largest-magnitude component (first on ties) is positive.
template <class Vec>
void fix_sign(Vec&& v) {
  Eigen::Index arg = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v[i]);
    if (mag > best * (1.0 + 1e-12) + 1e-300) {
      best = mag;
      arg = i;
    }
  }
  if (v[arg] < 0.0) v = -v;
}

bool lexicographic_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Orthonormal basis of the range of `m`, keeping directions with singular
// value above 1/2. Used on projections of orthonormal columns, where singular
// values are 0 or 1 up to rounding.
Eigen::MatrixXd range_basis(const Eigen::MatrixXd& m) {
  if (m.cols() == 0) return Eigen::MatrixXd(m.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < s.size() && s[rank] > 0.5) ++rank;
  return svd.matrixU().leftCols(rank);
}

struct PositiveMode {
  double energy;
  Eigen::VectorXd vector;
  std::optional<Eigen::VectorXd> partner;  // set only when partner != τ^x vector
};

// Splits a τ^x-invariant cluster of eigenvectors with equal |E| into
// particle-hole pairs v = (s + a)/√2 with s C-symmetric and a C-antisymmetric.
std::vector<PositiveMode> resolve_cluster(const Eigen::MatrixXd& h,
                                          const Eigen::MatrixXd& cluster) {
  std::vector<PositiveMode> out;
  if (cluster.cols() == 0) return out;
  const Eigen::Index n = cluster.rows() / 2;
  Eigen::MatrixXd flipped(cluster.rows(), cluster.cols());
  flipped.topRows(n) = cluster.bottomRows(n);
  flipped.bottomRows(n) = cluster.topRows(n);
  const Eigen::MatrixXd sym = range_basis(0.5 * (cluster + flipped));
  const Eigen::MatrixXd anti = range_basis(0.5 * (cluster - flipped));
  if (sym.cols() + anti.cols() != cluster.cols()) {
    throw ConvergenceFailure("eigenvalue cluster is not particle-hole invariant");
  }

  // h maps the symmetric part onto the antisymmetric part; its singular
  // value decomposition there yields the energies.
  const Eigen::MatrixXd coupling = anti.transpose() * h * sym;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(coupling, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::MatrixXd s_rot = sym * svd.matrixV();
  const Eigen::MatrixXd a_rot = anti * svd.matrixU();
  const Eigen::Index paired = std::min(sym.cols(), anti.cols());
  for (Eigen::Index i = 0; i < paired; ++i) {
    Eigen::VectorXd v = (s_rot.col(i) + a_rot.col(i)) / std::sqrt(2.0);
    out.push_back({svd.singularValues()[i], std::move(v), std::nullopt});
  }
  // Unbalanced leftovers are exact null vectors of one C-parity; pair them
  // among themselves.
  const Eigen::MatrixXd& rest = sym.cols() > anti.cols() ? s_rot : a_rot;
  for (Eigen::Index i = paired; i + 1 < rest.cols(); i += 2) {
    Eigen::VectorXd v = (rest.col(i) + rest.col(i + 1)) / std::sqrt(2.0);
    Eigen::VectorXd w = (rest.col(i) - rest.col(i + 1)) / std::sqrt(2.0);
    out.push_back({0.0, std::move(v), std::move(w)});
  }
  return out;
}

}  // namespace

EigenSystem eigensystem(const BdGMatrix& bdg) {
  const Eigen::MatrixXd& h = bdg.matrix();
  const int n = bdg.sites();
  const double scale = std::max(1.0, bdg.max_abs());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("dense symmetric eigensolver did not converge");
  }
  const Eigen::VectorXd& raw_e = solver.eigenvalues();
  const Eigen::MatrixXd& raw_v = solver.eigenvectors();

  // Group eigenvalues by |E| so every group spans a τ^x-invariant subspace,
  // then rebuild each group as exact particle-hole pairs.
  std::vector<Eigen::Index> order(raw_e.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return std::abs(raw_e[a]) < std::abs(raw_e[b]);
  });
  const double group_tol = 1e-9 * scale;
  std::vector<PositiveMode> positive;
  for (std::size_t first = 0; first < order.size();) {
    std::size_t last = first + 1;
    while (last < order.size() &&
           std::abs(raw_e[order[last]]) - std::abs(raw_e[order[last - 1]]) <= group_tol) {
      ++last;
    }
    Eigen::MatrixXd group(h.rows(), static_cast<Eigen::Index>(last - first));
    for (std::size_t c = first; c < last; ++c) group.col(c - first) = raw_v.col(order[c]);
    for (auto& mode : resolve_cluster(h, group)) positive.push_back(std::move(mode));
    first = last;
  }

  if (static_cast<int>(positive.size()) != n) {
    std::ostringstream os;
    os << "spectrum is not particle-hole paired: " << positive.size()
       << " non-negative modes for " << n << " sites";
    throw ConvergenceFailure(os.str());
  }

  for (auto& mode : positive) {
    if (mode.partner) {
      // keep the pair relation v ± w when flipping
      Eigen::VectorXd v = mode.vector;
      fix_sign(v);
      if (v.dot(mode.vector) < 0.0) *mode.partner = -*mode.partner;
      mode.vector = std::move(v);
    } else {
      fix_sign(mode.vector);
    }
  }
  std::stable_sort(positive.begin(), positive.end(), [](const auto& a, const auto& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return lexicographic_less(a.vector, b.vector);
  });

  EigenSystem eig;
  eig.energies.resize(2 * n);
  eig.vectors.resize(2 * n, 2 * n);
  eig.ph_pairs.resize(2 * n);
  for (int i = 0; i < n; ++i) {
    const auto& mode = positive[i];
    const int up = n + i;
    const int down = n - 1 - i;
    eig.energies[up] = mode.energy;
    eig.energies[down] = -mode.energy;
    eig.vectors.col(up) = mode.vector;
    eig.vectors.col(down) = mode.partner ? *mode.partner : apply_tau_x(mode.vector);
    eig.ph_pairs[up] = down;
    eig.ph_pairs[down] = up;
  }

  const Eigen::MatrixXd residual =
      h * eig.vectors - eig.vectors * eig.energies.asDiagonal();
  const double worst = residual.colwise().norm().maxCoeff();
  if (worst > 1e-9 * scale) {
    std::ostringstream os;
    os << "eigenvector residual " << worst << " exceeds tolerance";
    throw ConvergenceFailure(os.str());
  }
  const double ortho =
      (eig.vectors.transpose() * eig.vectors - Eigen::MatrixXd::Identity(2 * n, 2 * n))
          .cwiseAbs()
          .maxCoeff();
  if (ortho > 1e-10) {
    std::ostringstream os;
    os << "eigenvectors lost orthonormality (" << ortho << ")";
    throw ConvergenceFailure(os.str());
  }
  return eig;
}

ModeSet classify_modes(const EigenSystem& eig, double tol_zero) {
  if (!(tol_zero > 0.0)) throw InvalidSpec("tol_zero: must be > 0");
  ModeSet modes;
  modes.tol_zero = tol_zero;
  std::vector<double> mags(eig.energies.size());
  for (Eigen::Index k = 0; k < eig.energies.size(); ++k) mags[k] = std::abs(eig.energies[k]);
  std::vector<double> sorted = mags;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();
  const double median = m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
  modes.subgap_threshold = 0.5 * median;
  for (std::size_t k = 0; k < m; ++k) {
    if (mags[k] < tol_zero) {
      modes.zero_modes.push_back(static_cast<int>(k));
    } else if (mags[k] < modes.subgap_threshold) {
      modes.subgap_modes.push_back(static_cast<int>(k));
    }
  }
  return modes;
}

std::optional<std::pair<int, int>> lowest_zero_pair(const EigenSystem& eig, double tol_zero) {
  const int n = eig.sites();
  if (std::abs(eig.energies[n]) < tol_zero) return std::pair{n, eig.ph_pairs[n]};
  return std::nullopt;
}

MajoranaPair majorana_combinations(const EigenSystem& eig, std::pair<int, int> pair,
                                   double tol_zero) {
  const auto [p, q] = pair;
  if (p < 0 || q < 0 || p >= eig.dim() || q >= eig.dim() || eig.ph_pairs[p] != q) {
    throw NotAZeroPair("indices do not form a particle-hole pair");
  }
  if (std::abs(eig.energies[p]) >= tol_zero) {
    std::ostringstream os;
    os << "pair energy " << eig.energies[p] << " is not below tol_zero " << tol_zero;
    throw NotAZeroPair(os.str());
  }
  Eigen::VectorXd even = (eig.vectors.col(p) + eig.vectors.col(q)) / std::sqrt(2.0);
  Eigen::VectorXd odd = (eig.vectors.col(p) - eig.vectors.col(q)) / std::sqrt(2.0);
  fix_sign(even);
  fix_sign(odd);

  const int n = eig.sites();
  auto centre = [n](const Eigen::VectorXd& v) {
    double c = 0.0;
    for (int j = 0; j < n; ++j) c += j * (v[j] * v[j] + v[n + j] * v[n + j]);
    return c;
  };
  // Order-independent: swapping p and q only negates `odd` before fix_sign.
  if (centre(odd) < centre(even) - 1e-12) std::swap(even, odd);
  return {NambuState::from_real(even), NambuState::from_real(odd)};
}

SiteDistribution site_probability(const NambuState& state) {
  const int n = state.sites();
  SiteDistribution d;
  d.per_site.resize(n);
  d.per_majorana.resize(2 * n);
  const auto u = state.particle();
  const auto v = state.hole();
  for (int j = 0; j < n; ++j) {
    d.per_site[j] = std::norm(u[j]) + std::norm(v[j]);
    // c_j = (a_{2j-1} + i a_{2j}) / 2
    d.per_majorana[2 * j] = 0.5 * std::norm(u[j] + v[j]);
    d.per_majorana[2 * j + 1] = 0.5 * std::norm(u[j] - v[j]);
  }
  return d;
}

Polarization majorana_polarization(const NambuState& state) {
  const int n = state.sites();
  Polarization p;
  p.local.resize(n);
  const auto u = state.particle();
  const auto v = state.hole();
  for (int j = 0; j < n; ++j) p.local[j] = 2.0 * std::conj(u[j]) * std::conj(v[j]);
  p.total = p.local.sum();
  return p;
}

std::vector<double> linspace(double start, double stop, int count) {
  if (count < 1) throw InvalidSpec("grid: count must be >= 1");
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = start;
    return out;
  }
  const double step = (stop - start) / (count - 1);
  for (int i = 0; i < count; ++i) out[i] = start + step * i;
  out.back() = stop;
  return out;
}

std::vector<SweepRow> spectrum_sweep(const ChainSpec& base, std::span<const double> mu_grid,
                                     int workers) {
  if (mu_grid.empty()) throw InvalidSpec("mu grid: must be nonempty");
  for (double mu : mu_grid) {
    if (!std::isfinite(mu)) throw InvalidSpec("mu grid: values must be finite");
  }
  validate_spec(base);
  return parallel_map(mu_grid.size(), workers, [&](std::size_t i) {
    ChainSpec spec = base;
    spec.chemical_potential = mu_grid[i];
    return SweepRow{mu_grid[i], eigensystem(build_bdg(spec)).energies};
  });
}

double min_abs_energy(const Eigen::VectorXd& energies) {
  return energies.cwiseAbs().minCoeff();
}

}  // namespace hkc

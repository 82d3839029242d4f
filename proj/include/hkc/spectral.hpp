#pragma once

#include "hkc/model.hpp"
#include "hkc/nambu.hpp"

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace hkc {

// Absolute threshold below which |E| counts as a zero mode. Long-range
// segments split their edge pair only algebraically in length, so this sits
// above the α ≳ 2 splittings at L ~ 50 and below the massive Dirac modes.
inline constexpr double kDefaultTolZero = 5e-3;

struct EigenSystem {
  Eigen::VectorXd energies;  // ascending
  Eigen::MatrixXd vectors;   // column k belongs to energies[k]
  // Particle-hole partner: energies[ph_pairs[k]] = -energies[k] and
  // vectors.col(ph_pairs[k]) = τ^x vectors.col(k).
  std::vector<int> ph_pairs;

  int sites() const { return static_cast<int>(energies.size() / 2); }
  int dim() const { return static_cast<int>(energies.size()); }
  NambuState state(int k) const { return NambuState::from_real(vectors.col(k)); }
};

// Dense symmetric eigensolve followed by particle-hole completion: each group
// of eigenvectors with equal |E| is rebuilt from its C-symmetric and
// C-antisymmetric parts, and the negative half is τ^x times the positive half.
// Throws ConvergenceFailure if any residual exceeds 1e-9·max(1, ‖H‖_max).
EigenSystem eigensystem(const BdGMatrix& h);

struct ModeSet {
  std::vector<int> zero_modes;
  std::vector<int> subgap_modes;
  double tol_zero = kDefaultTolZero;
  double subgap_threshold = 0.0;  // half the median |E|
};

ModeSet classify_modes(const EigenSystem& eig, double tol_zero = kDefaultTolZero);

// The particle-hole pair closest to zero energy, as (E >= 0 index, partner),
// or nullopt if its energy is not below tol_zero.
std::optional<std::pair<int, int>> lowest_zero_pair(const EigenSystem& eig,
                                                    double tol_zero = kDefaultTolZero);

// Majorana combinations of a zero pair. `left` carries more weight on small
// site indices; each is sign-fixed so its largest component is positive.
struct MajoranaPair {
  NambuState left;
  NambuState right;
};

MajoranaPair majorana_combinations(const EigenSystem& eig, std::pair<int, int> pair,
                                   double tol_zero = kDefaultTolZero);

struct SiteDistribution {
  Eigen::VectorXd per_site;      // |u_j|² + |v_j|², length L
  Eigen::VectorXd per_majorana;  // (a_1, a_2, ..., a_{2L}), length 2L
};

SiteDistribution site_probability(const NambuState& state);

struct Polarization {
  cplx total;             // ⟨ψ|Cψ⟩
  Eigen::VectorXcd local; // per-site contributions, sums to total
};

Polarization majorana_polarization(const NambuState& state);

struct SweepRow {
  double mu = 0.0;
  Eigen::VectorXd energies;
};

std::vector<double> linspace(double start, double stop, int count);

// One eigensolve per chemical potential, rows in grid order. workers = 0
// uses the hardware concurrency.
std::vector<SweepRow> spectrum_sweep(const ChainSpec& base, std::span<const double> mu_grid,
                                     int workers = 0);

// Smallest |E| of a spectrum.
double min_abs_energy(const Eigen::VectorXd& energies);

}  // namespace hkc

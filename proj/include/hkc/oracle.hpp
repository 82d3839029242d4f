#pragma once

#include "hkc/model.hpp"

#include <Eigen/Sparse>

#include <vector>

namespace hkc {

inline constexpr int kMaxFockSites = 14;
inline constexpr int kMaxVerifySites = 12;

// Many-body Hamiltonian in the occupation basis: index bit j is n_{j+1}.
// Built term by term from the second-quantized operators, including the
// constant −μ(n_j − ½) offsets, with the Jordan-Wigner string
// c_j → (−1)^{Σ_{k<j} n_k}.
struct FockMatrix {
  int sites = 0;
  Eigen::SparseMatrix<double> matrix;

  long long dim() const { return 1LL << sites; }
};

// Throws TooLarge for more than kMaxFockSites sites.
FockMatrix fock_hamiltonian(const ChainSpec& spec);

// True if no matrix element connects even and odd particle-number states.
bool preserves_parity(const FockMatrix& h);

// Sorted many-body eigenvalues, diagonalized per parity sector.
std::vector<double> fock_spectrum(const FockMatrix& h);

struct OracleReport {
  ChainSpec spec;
  int levels = 0;
  double max_deviation = 0.0;
  int worst_level = 0;
  double tolerance = 0.0;
  bool passed = false;
};

// Compares Fock excitation energies E_n − E_0 against all subset sums of the
// non-negative BdG eigenvalues. Never throws on mismatch.
OracleReport compare_bdg_with_fock(const ChainSpec& spec, double tol);

// As compare_bdg_with_fock, but throws MismatchBeyondTol on failure.
OracleReport verify_bdg_against_fock(const ChainSpec& spec, double tol);

}  // namespace hkc

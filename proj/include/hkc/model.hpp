#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <string_view>

namespace hkc {

enum class Layout {
  PureNN,      // nearest-neighbour pairing on every bond
  PureLR,      // algebraically decaying pairing between all pairs
  HybridNNLR,  // NN on sites 1..split, LR on split+1..L
  HybridLRNN,  // LR on sites 1..split, NN on split+1..L
};

std::string_view to_string(Layout layout);
std::optional<Layout> parse_layout(std::string_view name);
bool is_hybrid(Layout layout);

// Parameters of one open chain. Sites are 1-based in all descriptions and
// 0-based in every matrix index.
struct ChainSpec {
  int length = 1;
  int split = 0;
  Layout layout = Layout::PureNN;
  double hopping = 1.0;
  double pairing = 1.0;
  double chemical_potential = 0.0;
  double lr_exponent = 1.0;
  double interface_coupling = 0.0;

  int left_length() const { return split; }
  int right_length() const { return length - split; }
};

// Throws InvalidSpec naming the offending field.
const ChainSpec& validate_spec(const ChainSpec& spec);

// Real 2L x 2L matrix in the Nambu basis (c_1..c_L, c_1^†..c_L^†):
//
//   H = ½ Ψ† [[A, B], [−B, −A]] Ψ + const
//
// A is the symmetric normal block, B the antisymmetric coefficient matrix of
// ½ Σ B_jk c_j^† c_k^†. The eigenvalues of the full matrix are ±E_k, with
// E_k the quasiparticle energies.
class BdGMatrix {
 public:
  BdGMatrix(Eigen::MatrixXd normal, Eigen::MatrixXd anomalous);

  int sites() const { return static_cast<int>(normal_.rows()); }
  int dim() const { return 2 * sites(); }
  const Eigen::MatrixXd& normal() const { return normal_; }
  const Eigen::MatrixXd& anomalous() const { return anomalous_; }
  const Eigen::MatrixXd& matrix() const { return full_; }
  double max_abs() const { return full_.cwiseAbs().maxCoeff(); }

 private:
  Eigen::MatrixXd normal_;
  Eigen::MatrixXd anomalous_;
  Eigen::MatrixXd full_;
};

BdGMatrix build_bdg(const ChainSpec& spec);

// Pairing amplitude of the LR segment at distance `distance` (d_l = l).
double lr_pairing(double pairing, double exponent, int distance);

// Matrix of τ^x ⊗ I_L, the unitary part of the particle-hole operator.
Eigen::MatrixXd tau_x(int sites);

// Site-reversal permutation j -> L+1-j applied to both Nambu blocks.
Eigen::MatrixXd site_reversal(int sites);

}  // namespace hkc

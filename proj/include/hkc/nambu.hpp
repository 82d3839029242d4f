#pragma once

#include <Eigen/Dense>

#include <complex>

namespace hkc {

using cplx = std::complex<double>;

// Normalized amplitude vector (u_1..u_L, v_1..v_L) in the Nambu basis.
class NambuState {
 public:
  static constexpr double kNormTolerance = 1e-10;

  // Throws NotNormalized unless ‖amplitudes‖ = 1 within kNormTolerance.
  explicit NambuState(Eigen::VectorXcd amplitudes);

  // Rescales to unit norm. Throws NotNormalized for a zero vector.
  static NambuState normalized(Eigen::VectorXcd amplitudes);
  static NambuState from_real(const Eigen::VectorXd& amplitudes);

  int sites() const { return static_cast<int>(amplitudes_.size() / 2); }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  auto particle() const { return amplitudes_.head(sites()); }
  auto hole() const { return amplitudes_.tail(sites()); }

  // ⟨this|other⟩
  cplx overlap(const NambuState& other) const {
    return amplitudes_.dot(other.amplitudes_);
  }

 private:
  Eigen::VectorXcd amplitudes_;
};

// The antiunitary particle-hole map C(u, v) = (conj v, conj u).
Eigen::VectorXcd particle_hole(const Eigen::VectorXcd& amplitudes);

// e^{-iθC} ψ = cos θ ψ − i sin θ Cψ, using C² = 1.
Eigen::VectorXcd particle_hole_rotation(const Eigen::VectorXcd& amplitudes,
                                        double theta);

}  // namespace hkc

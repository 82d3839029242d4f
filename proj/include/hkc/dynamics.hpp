#pragma once

#include "hkc/model.hpp"
#include "hkc/nambu.hpp"
#include "hkc/spectral.hpp"

#include <Eigen/Dense>

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

namespace hkc {

// Relative phase between the two Majorana combinations of a zero pair when
// forming ψ = (z_left + e^{iφ} z_right)/√2.
enum class SuperpositionPhase {
  Real,       // φ = 0
  Imaginary,  // φ = π/2, the fermionic quasiparticle combination
};

std::string_view to_string(SuperpositionPhase phase);
std::optional<SuperpositionPhase> parse_phase(std::string_view name);

struct QuenchParams {
  int length = 100;
  int split = 50;
  double interface_coupling = 0.5;
  double lr_exponent = 0.7;
  double chemical_potential = 0.0;
  double hopping = 1.0;
  double pairing = 1.0;
  SuperpositionPhase phase = SuperpositionPhase::Imaginary;
  double tol_zero = kDefaultTolZero;
};

struct QuenchSetup {
  ChainSpec initial_spec;    // HybridNNLR, J_h = 0
  ChainSpec evolution_spec;  // HybridNNLR, J_h as requested
  ChainSpec target_spec;     // HybridLRNN, J_h = 0
  NambuState psi_i;
  NambuState psi_s;
  std::shared_ptr<const EigenSystem> evolution;
};

// Throws NoZeroModes if the decoupled or switched chain has no zero pair.
QuenchSetup prepare_quench(const QuenchParams& params);

// (z_left + e^{iφ} z_right)/√2 over the Majorana combinations of the
// lowest zero pair. Throws NoZeroModes when there is none below tol_zero.
NambuState zero_mode_superposition(const EigenSystem& eig, SuperpositionPhase phase,
                                   double tol_zero = kDefaultTolZero);

struct TimeGrid {
  double t_max = 50.0;
  double dt = 0.1;

  // Throws InvalidSpec for t_max < 0 or dt <= 0.
  static TimeGrid make(double t_max, double dt);
  int samples() const;
  double time(int r) const { return r * dt; }
  std::vector<double> times() const;
};

// Exact spectral propagation ψ(t) = V e^{-iEt} Vᵀ ψ0 for one initial state.
class Propagator {
 public:
  Propagator(std::shared_ptr<const EigenSystem> eig, const NambuState& psi0);
  Eigen::VectorXcd at(double t) const;

 private:
  std::shared_ptr<const EigenSystem> eig_;
  Eigen::VectorXcd initial_;
  Eigen::VectorXcd coefficients_;
};

NambuState evolve(const EigenSystem& eig, const NambuState& psi0, double t);

double ipr(const NambuState& state);
double ipr(const Eigen::VectorXcd& amplitudes);

struct TimedValue {
  double t;
  double value;
};

struct RotationSample {
  double t;
  cplx value;
};

struct SpatioTemporalField {
  std::vector<double> times;
  int sites = 0;
  Eigen::MatrixXd probability;  // samples x sites
};

std::vector<TimedValue> fidelity_series(const QuenchSetup& setup, const TimeGrid& grid,
                                        int workers = 0);
std::vector<RotationSample> dynamical_rotation_series(const QuenchSetup& setup, double theta,
                                                      const TimeGrid& grid, int workers = 0);
std::vector<TimedValue> ipr_series(const QuenchSetup& setup, const TimeGrid& grid,
                                   int workers = 0);
SpatioTemporalField spatiotemporal_profile(const QuenchSetup& setup, const TimeGrid& grid,
                                           int workers = 0);

// Everything above in one pass over the time grid.
struct QuenchTrace {
  std::vector<double> times;
  std::vector<double> fidelity;
  std::vector<cplx> rotation;
  std::vector<double> ipr;
  SpatioTemporalField field;
};

QuenchTrace run_quench(const QuenchSetup& setup, const TimeGrid& grid, double theta = 1.0,
                       int workers = 0);

// Fraction of the state's weight on sites first..last (0-based, inclusive).
double segment_weight(const Eigen::VectorXcd& amplitudes, int first, int last);

}  // namespace hkc

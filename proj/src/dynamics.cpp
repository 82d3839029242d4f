#include "hkc/dynamics.hpp"

#include "hkc/errors.hpp"
#include "hkc/parallel.hpp"

#include <cmath>
#include <sstream>

namespace hkc {

namespace {

constexpr double kBoundSlack = 1e-12;

[[noreturn]] void violated(const std::string& what, double t, double value) {
  std::ostringstream os;
  os.precision(17);
  os << what << " at t=" << t << " (value " << value << ")";
  throw InvariantViolation(os.str());
}

void check_norm(const Eigen::VectorXcd& psi, double t) {
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > 1e-10) violated("norm not conserved", t, norm);
}

double checked_fidelity(const NambuState& target, const Eigen::VectorXcd& psi, double t) {
  const double f = std::norm(target.amplitudes().dot(psi));
  if (f < 0.0 || f > 1.0 + kBoundSlack) violated("fidelity outside [0,1]", t, f);
  return std::min(f, 1.0);
}

cplx checked_rotation(const NambuState& target, const Eigen::VectorXcd& psi, double theta,
                      double t) {
  const cplx r = target.amplitudes().dot(particle_hole_rotation(psi, theta));
  if (std::abs(r) > 1.0 + kBoundSlack) violated("|R| exceeds 1", t, std::abs(r));
  return r;
}

double checked_ipr(const Eigen::VectorXcd& psi, double t) {
  const double value = ipr(psi);
  const double floor = 1.0 / static_cast<double>(psi.size());
  if (value < floor - kBoundSlack || value > 1.0 + kBoundSlack) {
    violated("IPR outside [1/(2L),1]", t, value);
  }
  return value;
}

Eigen::VectorXd checked_site_row(const Eigen::VectorXcd& psi, double t) {
  const Eigen::Index n = psi.size() / 2;
  Eigen::VectorXd row = psi.head(n).cwiseAbs2() + psi.tail(n).cwiseAbs2();
  const double sum = row.sum();
  if (std::abs(sum - 1.0) > 1e-9) violated("site probabilities do not sum to 1", t, sum);
  return row;
}

// ψ(t) for every grid sample, in time order, after the norm check.
template <class Fn>
auto map_over_grid(const QuenchSetup& setup, const TimeGrid& grid, int workers, Fn&& fn) {
  const Propagator prop(setup.evolution, setup.psi_i);
  return parallel_map(static_cast<std::size_t>(grid.samples()), workers, [&](std::size_t r) {
    const double t = grid.time(static_cast<int>(r));
    const Eigen::VectorXcd psi = prop.at(t);
    check_norm(psi, t);
    return fn(t, psi);
  });
}

}  // namespace

std::string_view to_string(SuperpositionPhase phase) {
  return phase == SuperpositionPhase::Real ? "real" : "imaginary";
}

std::optional<SuperpositionPhase> parse_phase(std::string_view name) {
  if (name == "real") return SuperpositionPhase::Real;
  if (name == "imaginary") return SuperpositionPhase::Imaginary;
  return std::nullopt;
}

NambuState zero_mode_superposition(const EigenSystem& eig, SuperpositionPhase phase,
                                   double tol_zero) {
  const auto pair = lowest_zero_pair(eig, tol_zero);
  if (!pair) {
    std::ostringstream os;
    os << "no zero-energy pair below tol_zero=" << tol_zero << " (lowest |E| = "
       << std::abs(eig.energies[eig.sites()]) << ")";
    throw NoZeroModes(os.str());
  }
  const MajoranaPair m = majorana_combinations(eig, *pair, tol_zero);
  const cplx weight = phase == SuperpositionPhase::Real ? cplx(1.0, 0.0) : cplx(0.0, 1.0);
  return NambuState::normalized(m.left.amplitudes() + weight * m.right.amplitudes());
}

QuenchSetup prepare_quench(const QuenchParams& p) {
  ChainSpec base;
  base.length = p.length;
  base.split = p.split;
  base.hopping = p.hopping;
  base.pairing = p.pairing;
  base.chemical_potential = p.chemical_potential;
  base.lr_exponent = p.lr_exponent;

  ChainSpec initial = base;
  initial.layout = Layout::HybridNNLR;
  initial.interface_coupling = 0.0;
  ChainSpec evolution = initial;
  evolution.interface_coupling = p.interface_coupling;
  ChainSpec target = base;
  target.layout = Layout::HybridLRNN;
  target.interface_coupling = 0.0;
  validate_spec(initial);
  validate_spec(evolution);
  validate_spec(target);

  NambuState psi_i = zero_mode_superposition(eigensystem(build_bdg(initial)), p.phase, p.tol_zero);
  NambuState psi_s = zero_mode_superposition(eigensystem(build_bdg(target)), p.phase, p.tol_zero);
  if (segment_weight(psi_i.amplitudes(), 0, p.split - 1) < 0.99) {
    throw NoZeroModes("initial zero pair is not confined to the nearest-neighbour segment");
  }
  auto eig = std::make_shared<const EigenSystem>(eigensystem(build_bdg(evolution)));
  return QuenchSetup{initial, evolution, target, std::move(psi_i), std::move(psi_s),
                     std::move(eig)};
}

TimeGrid TimeGrid::make(double t_max, double dt) {
  if (!std::isfinite(t_max) || t_max < 0.0) throw InvalidSpec("tmax: must be finite and >= 0");
  if (!std::isfinite(dt) || !(dt > 0.0)) throw InvalidSpec("dt: must be finite and > 0");
  return TimeGrid{t_max, dt};
}

int TimeGrid::samples() const {
  return static_cast<int>(std::floor(t_max / dt + 1e-9)) + 1;
}

std::vector<double> TimeGrid::times() const {
  std::vector<double> out(samples());
  for (int r = 0; r < samples(); ++r) out[r] = time(r);
  return out;
}

Propagator::Propagator(std::shared_ptr<const EigenSystem> eig, const NambuState& psi0)
    : eig_(std::move(eig)), initial_(psi0.amplitudes()) {
  if (psi0.amplitudes().size() != eig_->dim()) {
    throw InvalidSpec("state dimension does not match the Hamiltonian");
  }
  coefficients_ = eig_->vectors.transpose() * psi0.amplitudes();
}

Eigen::VectorXcd Propagator::at(double t) const {
  if (t == 0.0) return initial_;
  const Eigen::Index d = coefficients_.size();
  Eigen::VectorXd re(d), im(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const cplx c = std::polar(1.0, -eig_->energies[k] * t) * coefficients_[k];
    re[k] = c.real();
    im[k] = c.imag();
  }
  Eigen::VectorXcd out(d);
  out.real() = eig_->vectors * re;
  out.imag() = eig_->vectors * im;
  return out;
}

NambuState evolve(const EigenSystem& eig, const NambuState& psi0, double t) {
  if (!std::isfinite(t)) throw InvalidSpec("t: must be finite");
  if (t == 0.0) return psi0;
  // Non-owning alias; the propagator does not outlive this call.
  std::shared_ptr<const EigenSystem> view(&eig, [](const EigenSystem*) {});
  Eigen::VectorXcd psi = Propagator(view, psi0).at(t);
  check_norm(psi, t);
  return NambuState(std::move(psi));
}

double ipr(const Eigen::VectorXcd& amplitudes) {
  return amplitudes.cwiseAbs2().cwiseAbs2().sum();
}

double ipr(const NambuState& state) { return ipr(state.amplitudes()); }

std::vector<TimedValue> fidelity_series(const QuenchSetup& setup, const TimeGrid& grid,
                                        int workers) {
  return map_over_grid(setup, grid, workers, [&](double t, const Eigen::VectorXcd& psi) {
    return TimedValue{t, checked_fidelity(setup.psi_s, psi, t)};
  });
}

std::vector<RotationSample> dynamical_rotation_series(const QuenchSetup& setup, double theta,
                                                      const TimeGrid& grid, int workers) {
  if (!std::isfinite(theta)) throw InvalidSpec("theta: must be finite");
  return map_over_grid(setup, grid, workers, [&](double t, const Eigen::VectorXcd& psi) {
    return RotationSample{t, checked_rotation(setup.psi_s, psi, theta, t)};
  });
}

std::vector<TimedValue> ipr_series(const QuenchSetup& setup, const TimeGrid& grid,
                                   int workers) {
  return map_over_grid(setup, grid, workers, [&](double t, const Eigen::VectorXcd& psi) {
    return TimedValue{t, checked_ipr(psi, t)};
  });
}

SpatioTemporalField spatiotemporal_profile(const QuenchSetup& setup, const TimeGrid& grid,
                                           int workers) {
  auto rows = map_over_grid(setup, grid, workers, [&](double t, const Eigen::VectorXcd& psi) {
    return checked_site_row(psi, t);
  });
  SpatioTemporalField field;
  field.times = grid.times();
  field.sites = setup.evolution->sites();
  field.probability.resize(static_cast<Eigen::Index>(rows.size()), field.sites);
  for (std::size_t r = 0; r < rows.size(); ++r) field.probability.row(r) = rows[r].transpose();
  return field;
}

QuenchTrace run_quench(const QuenchSetup& setup, const TimeGrid& grid, double theta,
                       int workers) {
  if (!std::isfinite(theta)) throw InvalidSpec("theta: must be finite");
  struct Sample {
    double fidelity = 0.0;
    cplx rotation;
    double ipr = 0.0;
    Eigen::VectorXd sites;
  };
  auto samples = map_over_grid(setup, grid, workers, [&](double t, const Eigen::VectorXcd& psi) {
    return Sample{checked_fidelity(setup.psi_s, psi, t),
                  checked_rotation(setup.psi_s, psi, theta, t), checked_ipr(psi, t),
                  checked_site_row(psi, t)};
  });

  QuenchTrace trace;
  trace.times = grid.times();
  trace.field.times = trace.times;
  trace.field.sites = setup.evolution->sites();
  trace.field.probability.resize(static_cast<Eigen::Index>(samples.size()), trace.field.sites);
  for (std::size_t r = 0; r < samples.size(); ++r) {
    trace.fidelity.push_back(samples[r].fidelity);
    trace.rotation.push_back(samples[r].rotation);
    trace.ipr.push_back(samples[r].ipr);
    trace.field.probability.row(r) = samples[r].sites.transpose();
  }
  return trace;
}

double segment_weight(const Eigen::VectorXcd& amplitudes, int first, int last) {
  const Eigen::Index n = amplitudes.size() / 2;
  const Eigen::Index count = last - first + 1;
  if (count <= 0) return 0.0;
  return amplitudes.segment(first, count).squaredNorm() +
         amplitudes.segment(n + first, count).squaredNorm();
}

}  // namespace hkc

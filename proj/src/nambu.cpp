#include "hkc/nambu.hpp"

#include "hkc/errors.hpp"

#include <cmath>
#include <sstream>

namespace hkc {

NambuState::NambuState(Eigen::VectorXcd amplitudes)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0 || amplitudes_.size() % 2 != 0) {
    throw NotNormalized("Nambu state needs an even, nonzero number of amplitudes");
  }
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > kNormTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "Nambu state norm " << norm << " differs from 1";
    throw NotNormalized(os.str());
  }
}

NambuState NambuState::normalized(Eigen::VectorXcd amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw NotNormalized("cannot normalize a zero or non-finite vector");
  }
  amplitudes /= norm;
  return NambuState(std::move(amplitudes));
}

NambuState NambuState::from_real(const Eigen::VectorXd& amplitudes) {
  return normalized(amplitudes.cast<cplx>());
}

Eigen::VectorXcd particle_hole(const Eigen::VectorXcd& amplitudes) {
  const Eigen::Index n = amplitudes.size() / 2;
  Eigen::VectorXcd out(amplitudes.size());
  out.head(n) = amplitudes.tail(n).conjugate();
  out.tail(n) = amplitudes.head(n).conjugate();
  return out;
}

Eigen::VectorXcd particle_hole_rotation(const Eigen::VectorXcd& amplitudes,
                                        double theta) {
  return std::cos(theta) * amplitudes -
         cplx(0.0, std::sin(theta)) * particle_hole(amplitudes);
}

}  // namespace hkc

#pragma once

#include "hkc/model.hpp"

#include <random>

namespace hkc::test {

inline ChainSpec nn_chain(int length, double mu = 0.0) {
  ChainSpec s;
  s.length = length;
  s.layout = Layout::PureNN;
  s.chemical_potential = mu;
  return s;
}

inline ChainSpec hybrid(Layout layout, int length, int split, double alpha, double jh,
                        double mu = 0.0) {
  ChainSpec s;
  s.length = length;
  s.split = split;
  s.layout = layout;
  s.lr_exponent = alpha;
  s.interface_coupling = jh;
  s.chemical_potential = mu;
  return s;
}

inline ChainSpec random_spec(std::mt19937& rng, int max_length) {
  constexpr Layout layouts[] = {Layout::PureNN, Layout::PureLR, Layout::HybridNNLR,
                                Layout::HybridLRNN};
  std::uniform_real_distribution<double> coupling(-2.0, 2.0);
  std::uniform_real_distribution<double> exponent(0.2, 3.0);
  ChainSpec s;
  s.layout = layouts[std::uniform_int_distribution<int>(0, 3)(rng)];
  const int min_length = is_hybrid(s.layout) ? 2 : 1;
  s.length = std::uniform_int_distribution<int>(min_length, max_length)(rng);
  s.split = is_hybrid(s.layout) ? std::uniform_int_distribution<int>(1, s.length - 1)(rng) : 0;
  s.hopping = coupling(rng);
  s.pairing = coupling(rng);
  s.chemical_potential = coupling(rng);
  s.lr_exponent = exponent(rng);
  s.interface_coupling = coupling(rng);
  return s;
}

}  // namespace hkc::test

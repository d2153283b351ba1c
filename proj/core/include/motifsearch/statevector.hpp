#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>

#include "motifsearch/network.hpp"

namespace motifsearch {

inline constexpr int kMaxDenseSites = 14;

/// Dense amplitudes over the computational (Z) basis. Site i is bit i of the
/// basis index (little-endian); bit value 1 is the |z,-> state.
struct StateVector {
  int sites = 0;
  Eigen::VectorXcd amps;

  double norm() const { return amps.norm(); }
};

enum class BaseState { z_plus };

StateVector init_state(int n, BaseState base = BaseState::z_plus);

/// Contract a 2^k x 2^k matrix into the state along the given k distinct
/// sites (gate leg m maps to sites[m]; leg 0 is the matrix's most significant
/// index bit). No renormalisation: non-unitary tensors shrink or grow the
/// norm and that is part of the state.
void apply_tensor(StateVector& state, const Eigen::MatrixXcd& matrix, std::span<const int> sites);

StateVector evaluate_network(const NetworkProgram& prog, std::span<const double> params);

}  // namespace motifsearch

#pragma once

#include <Eigen/Dense>

#include "motifsearch/mps.hpp"

namespace motifsearch {

/// Rank-2 spectral decomposition T = eval0 |r0><l0| + eval1 |r1><l1| with
/// <l_i|r_j> = delta_ij (plain transpose pairing; the vectors are real).
struct SpectralPair {
  Eigen::Vector4d right0, right1, left0, left1;
  double eval0 = 0.0, eval1 = 0.0;
  bool valid = false;  // closed-form vectors divide by S, T and ST(ST-1)
};

/// The five 4x4 transfer matrices of the Z-basis MPS and the spectral data of
/// the site matrix T_a (eigenvalues {1, ST}) and of the X-observable matrix
/// T_ax (eigenvalues {S, T}).
struct TransferSet {
  Eigen::Matrix4d t_a, t_b, t_ax, t_az, t_bx;
  SpectralPair a_spec, ax_spec;
  bool degenerate = false;  // |ST| within 1e-12 of 1
};

TransferSet transfer_set(const Angles& ang);

}  // namespace motifsearch

#pragma once

#include <Eigen/Dense>

#include "motifsearch/statevector.hpp"
#include "motifsearch/trig.hpp"

namespace motifsearch {

/// Bond-dimension-2 site matrices of the discovered ansatz: the Y-basis pair
/// (A, B) with A_minus = conj(A_plus), the Z-basis rewrite (Az, Bz) used by
/// the transfer-matrix machinery, and the ladder-basis pair C built from
/// (scale, rapidity) parameters instead of angles.
struct MpsMatrices {
  Eigen::Matrix2cd a_plus, a_minus, b_plus, b_minus;      // Y basis
  Eigen::Matrix2cd az_plus, az_minus, bz_plus, bz_minus;  // Z basis
  Eigen::Matrix2cd c_plus, c_minus;                       // ladder form
  bool has_angles = false;
  bool has_ladder = false;
};

MpsMatrices mps_matrices(const Angles& ang);
MpsMatrices ladder_mps_matrices(double scale, double rapidity);

enum class MpsForm { original, translational, ladder };

/// Dense state from the trace form. `original` carries the lone B matrix at
/// site 0 (built in the Y basis, then rotated site-by-site into the Z basis);
/// `translational` and `ladder` are cyclic traces, returned normalised.
StateVector mps_to_state(const MpsMatrices& m, int total_sites, MpsForm form);

}  // namespace motifsearch

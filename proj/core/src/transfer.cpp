#include "motifsearch/transfer.hpp"

#include <cmath>

namespace motifsearch {

namespace {

Eigen::Matrix4d kron2x2(const Eigen::Matrix2d& a, const Eigen::Matrix2d& b) {
  Eigen::Matrix4d out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

}  // namespace

TransferSet transfer_set(const Angles& ang) {
  const MpsMatrices m = mps_matrices(ang);
  const Eigen::Matrix2d azp = m.az_plus.real(), azm = m.az_minus.real();
  const Eigen::Matrix2d bzp = m.bz_plus.real(), bzm = m.bz_minus.real();

  TransferSet ts;
  ts.t_a = kron2x2(azp, azp) + kron2x2(azm, azm);
  ts.t_b = kron2x2(bzp, bzp) + kron2x2(bzm, bzm);
  ts.t_ax = kron2x2(azp, azm) + kron2x2(azm, azp);
  ts.t_az = kron2x2(azp, azp) - kron2x2(azm, azm);
  ts.t_bx = kron2x2(bzp, bzm) + kron2x2(bzm, bzp);

  const TrigBundle t = TrigBundle::from(ang);
  const double S = t.sin_t, T = t.sin_tp, C = t.cos_t, D = t.cos_tp;
  const double c2 = t.cos_t2 * t.cos_t2, s2 = t.sin_t2 * t.sin_t2;
  const double st = S * T;
  ts.degenerate = std::abs(std::abs(st) - 1.0) < 1e-12;

  if (std::abs(S) > 1e-14 && std::abs(T) > 1e-14 && std::abs(st - 1.0) > 1e-14) {
    ts.a_spec.valid = true;
    ts.a_spec.eval0 = 1.0;
    ts.a_spec.eval1 = st;
    ts.a_spec.right0 << c2, 0, 0, s2;
    ts.a_spec.right1 << c2 * D * (C + st - 1) / (st * (st - 1)), 0.5, 0.5,
        s2 * D * (C - st + 1) / (st * (st - 1));
    ts.a_spec.left0 << 1, C * D / (1 - st), C * D / (1 - st), 1;
    ts.a_spec.left1 << 0, 1, 1, 0;

    ts.ax_spec.valid = true;
    ts.ax_spec.eval0 = S;
    ts.ax_spec.eval1 = T;
    ts.ax_spec.right0 << 0, -1, 1, 0;
    ts.ax_spec.right1 << -c2, D * S / (2 * T), D * S / (2 * T), s2;
    ts.ax_spec.left0 << 0, -0.5, 0.5, 0;
    ts.ax_spec.left1 << -1, 0, 0, 1;
  }
  return ts;
}

}  // namespace motifsearch

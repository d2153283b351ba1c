#pragma once

#include <cmath>

namespace motifsearch {

/// The two variational angles of the discovered two-parameter ansatz family.
struct Angles {
  double theta = 0.0;
  double phi = 0.0;
};

/// Every trigonometric quantity the closed-form machinery needs, derived once
/// from (theta, phi). Full-angle and half-angle sets coexist because the MPS
/// matrices are built from half angles while expectation values and transfer
/// spectra are expressed in full angles; gen_a/gen_b/gen_g feed the
/// permutation-symmetric amplitude recurrences.
struct TrigBundle {
  // full angle
  double cos_t, sin_t;    // theta
  double cos_tp, sin_tp;  // theta + phi
  double cos_tm, sin_tm;  // theta - phi
  double cos_p, sin_p;    // phi
  // half angle
  double cos_t2, sin_t2;
  double cos_tp2, sin_tp2;
  double cos_tm2, sin_tm2;
  double cos_p2, sin_p2;
  // generating-function scalars
  double gen_a;  // cos(phi/2)
  double gen_b;  // sin(theta + phi/2)
  double gen_g;  // sin(theta)

  static TrigBundle from(const Angles& ang) {
    TrigBundle t{};
    const double th = ang.theta, ph = ang.phi;
    t.cos_t = std::cos(th);
    t.sin_t = std::sin(th);
    t.cos_tp = std::cos(th + ph);
    t.sin_tp = std::sin(th + ph);
    t.cos_tm = std::cos(th - ph);
    t.sin_tm = std::sin(th - ph);
    t.cos_p = std::cos(ph);
    t.sin_p = std::sin(ph);
    t.cos_t2 = std::cos(th / 2);
    t.sin_t2 = std::sin(th / 2);
    t.cos_tp2 = std::cos((th + ph) / 2);
    t.sin_tp2 = std::sin((th + ph) / 2);
    t.cos_tm2 = std::cos((th - ph) / 2);
    t.sin_tm2 = std::sin((th - ph) / 2);
    t.cos_p2 = std::cos(ph / 2);
    t.sin_p2 = std::sin(ph / 2);
    t.gen_a = t.cos_p2;
    t.gen_b = std::sin(th + ph / 2);
    t.gen_g = t.sin_t;
    return t;
  }
};

}  // namespace motifsearch

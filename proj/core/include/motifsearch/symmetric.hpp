#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "motifsearch/optimizer.hpp"
#include "motifsearch/trig.hpp"

namespace motifsearch {

/// Integer triangle T(N,j) behind the permutation-symmetric amplitudes,
/// generated by T(N,j) = 2 T(N-1,j) + T(N-2,j-1) with T(0,0) = 1.
int64_t riordan_t(int total_sites, int j);

/// Scalars feeding the amplitude recurrence, fixed by the variational angles.
struct SymmetricTriangle {
  double gen_a;  // cos(phi/2)
  double gen_b;  // sin(theta + phi/2)
  double gen_g;  // sin(theta)

  static SymmetricTriangle from(const Angles& ang) {
    const TrigBundle t = TrigBundle::from(ang);
    return {t.gen_a, t.gen_b, t.gen_g};
  }
};

/// S(N,n) by the three-term recurrence
///   S(N,n) = a S(N-1,n) + b S(N-1,n-1) - g S(N-2,n-1),
/// bases S(0,0)=2, S(1,0)=a, S(1,1)=b. Returns the whole order-N row.
/// Rows are jointly rescaled on the way up so N in the hundreds stays finite;
/// `log_scale` reports the common log-factor pulled out of the returned row.
std::vector<double> amplitude_s_row(int total_sites, const SymmetricTriangle& tri,
                                    double* log_scale = nullptr);

/// Single S(N,n) value (unscaled; fine for N up to a few hundred).
double amplitude_s(int total_sites, int n, const SymmetricTriangle& tri);

/// Permutation- plus parity-projected state in the Dicke basis |n> (n = count
/// of flipped spins); amplitudes are real and satisfy amps[n] = amps[N-n].
struct DickeState {
  int sites = 0;
  Eigen::VectorXd amps;  // normalised
};

DickeState project_symmetric(const Angles& ang, int total_sites);

struct SymObservables {
  double energy_per_site = 0.0;
  double m_rms = 0.0;
};

SymObservables symmetrized_observables(const DickeState& state, double coupling, double field);

struct SymOptimum {
  Angles angles;
  double energy_per_site = 0.0;
};

/// Minimise the symmetrized per-site energy over (theta, phi).
SymOptimum optimize_symmetrized(int total_sites, double coupling, double field,
                                const OptimizerConfig& cfg = {});

}  // namespace motifsearch

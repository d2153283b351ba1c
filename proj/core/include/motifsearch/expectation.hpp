#pragma once

#include "motifsearch/hamiltonian.hpp"
#include "motifsearch/trig.hpp"

namespace motifsearch {

enum class Observable { x, z, zz };

/// Closed-form expectation value on the normalised translationally invariant
/// ansatz for N sites; `separation` is the site distance for zz.
/// Requires |sin(theta) sin(theta+phi)| <= 1 - 1e-9.
double expval_translational(const Angles& ang, int total_sites, Observable obs,
                            int separation = 0);

/// Same observables on the parity-projected ansatz (x and zz only).
double expval_parity(const Angles& ang, int total_sites, Observable obs, int separation = 0);

/// Site-resolved <X_i> on the original (translation-breaking) ansatz.
double expval_original_x(const Angles& ang, int total_sites, int site);

/// N -> infinity per-site energy as a function of (S, T) = (sin theta,
/// sin(theta+phi)), with J = 1. Requires |S T| < 1.
double thermo_energy(Model model, double sin_t, double sin_tp, double field);

struct LmgThermoMinimum {
  double theta = 0.0;
  double phi = 0.0;
  double energy = 0.0;
  double magnetisation = 0.0;  // + branch
  double magnetisation_minus = 0.0;
  double critical_field = 0.5;
};

/// Analytic minimiser of the LMG thermodynamic energy: theta = 0 and
/// sin(phi) = 2h clamped to [-1, 1].
LmgThermoMinimum minimize_lmg_thermo(double field);

struct TfimThermoMinimum {
  double sin_t = 0.0;   // S at the minimum
  double sin_tp = 0.0;  // T at the minimum
  double energy = 0.0;
  double critical_field = 0.0;  // (1 + sqrt 2)/4
  double z_expectation = 0.0;   // thermodynamic <Z_i> at the minimum
};

/// Minimiser of the TFIM thermodynamic energy: below the critical field the
/// unique real quartic root with |S| <= sqrt(2)-1 (bisection), above it
/// (S, T) = (1/(4h), sgn h); all stationary branches are compared.
TfimThermoMinimum minimize_tfim_thermo(double field);

}  // namespace motifsearch

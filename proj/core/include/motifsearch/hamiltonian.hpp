#pragma once

#include <Eigen/Dense>
#include <optional>

#include "motifsearch/statevector.hpp"

namespace motifsearch {

enum class Model { lmg, tfim };

/// Spin-1/2 Hamiltonian with a ferromagnetic ZZ part and a transverse field:
/// LMG couples all pairs with strength J/(4N), the TFIM couples nearest
/// neighbours on a periodic ring with strength J/4; both carry -(h/2) X terms.
struct Hamiltonian {
  Model model = Model::tfim;
  int sites = 0;
  double coupling = 1.0;  // J
  double field = 0.0;     // h

  /// Diagonal ZZ part per basis state and the X hopping amplitude are enough
  /// to evaluate energies without materialising the dense matrix.
  Eigen::VectorXd zz_diagonal;  // <idx| (ZZ part) |idx>
};

Hamiltonian build(Model model, int n, double coupling, double field);

/// <psi|H|psi> / (<psi|psi> * n); Rayleigh quotient so unnormalised and
/// non-unitary network outputs are handled uniformly.
double energy_per_site(const StateVector& state, const Hamiltonian& h);

/// Dense 2^n x 2^n matrix (real symmetric in the Z basis). n <= 14.
Eigen::MatrixXd dense_matrix(const Hamiltonian& h);

struct ExactSolution {
  double ground_energy = 0.0;  // total energy
  Eigen::VectorXd ground_state;
  double m_rms = 0.0;
  std::optional<double> corr_half;  // (1/4)<Z_0 Z_{n/2}>, even n only
};

/// Lowest eigenpair by dense diagonalisation (n <= 14).
ExactSolution exact_ground(const Hamiltonian& h);

/// LMG restricted to the maximal total-spin sector: the (N+1)x(N+1) block over
/// states |n> with n spins flipped, using sum_{i<j} Z_i Z_j = ((sum Z)^2 - N)/2.
Eigen::MatrixXd lmg_dicke_block(int total_sites, double coupling, double field);

/// Exact LMG ground data from the Dicke block (any N; the LMG ground state
/// lives in the maximal-spin sector).
ExactSolution lmg_exact_dicke(int total_sites, double coupling, double field);

}  // namespace motifsearch

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

#include "motifsearch/hamiltonian.hpp"
#include "motifsearch/network.hpp"

namespace motifsearch {

struct OptimizerConfig {
  int restarts = 8;
  int max_evals = 2000;  // per restart
  double tolerance = 1e-10;
  uint64_t seed = 0;
  double start_lo = -3.14159265358979323846;
  double start_hi = 3.14159265358979323846;
};

struct OptResult {
  Eigen::VectorXd params;
  double value = 0.0;
  long evals = 0;
};

/// Multi-start Nelder-Mead simplex minimisation; deterministic for a fixed
/// config. Extra user-supplied starts are tried before the seeded random ones.
OptResult minimize_simplex(const std::function<double(const Eigen::VectorXd&)>& objective, int dim,
                           const OptimizerConfig& cfg,
                           const std::vector<Eigen::VectorXd>& warm_starts = {});

/// Best variational parameters and per-site energy for a network program.
OptResult optimize_params(const NetworkProgram& prog, const Hamiltonian& h,
                          const OptimizerConfig& cfg);

}  // namespace motifsearch

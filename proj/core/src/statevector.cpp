#include "motifsearch/statevector.hpp"

#include <array>

#include "motifsearch/errors.hpp"

namespace motifsearch {

StateVector init_state(int n, BaseState) {
  if (n < 1) throw Error(Errc::size_limit, "need at least one site");
  if (n > kMaxDenseSites)
    throw Error(Errc::size_limit, "dense evaluation capped at " + std::to_string(kMaxDenseSites) + " sites");
  StateVector s;
  s.sites = n;
  s.amps = Eigen::VectorXcd::Zero(int64_t{1} << n);
  s.amps[0] = 1.0;
  return s;
}

void apply_tensor(StateVector& state, const Eigen::MatrixXcd& matrix, std::span<const int> sites) {
  const int n = state.sites;
  const int k = static_cast<int>(sites.size());
  const int64_t dim = int64_t{1} << n;
  const int gate_dim = 1 << k;
  if (matrix.rows() != gate_dim || matrix.cols() != gate_dim)
    throw Error(Errc::size_limit, "matrix dimension does not match site tuple");
  for (int m = 0; m < k; ++m) {
    if (sites[m] < 0 || sites[m] >= n) throw Error(Errc::size_limit, "site index out of range");
    for (int l = m + 1; l < k; ++l)
      if (sites[m] == sites[l]) throw Error(Errc::size_limit, "duplicate site in tuple");
  }

  // bit of gate index g corresponding to leg m: (k-1-m); site bit: sites[m]
  std::array<int64_t, 32> leg_bit{};
  for (int m = 0; m < k; ++m) leg_bit[m] = int64_t{1} << sites[m];

  int64_t leg_mask = 0;
  for (int m = 0; m < k; ++m) leg_mask |= leg_bit[m];

  std::array<std::complex<double>, 32> scratch{};
  // iterate over representatives with all leg bits clear
  for (int64_t base = 0; base < dim; ++base) {
    if (base & leg_mask) continue;
    for (int g = 0; g < gate_dim; ++g) {
      int64_t idx = base;
      for (int m = 0; m < k; ++m)
        if ((g >> (k - 1 - m)) & 1) idx |= leg_bit[m];
      scratch[g] = state.amps[idx];
    }
    for (int g = 0; g < gate_dim; ++g) {
      std::complex<double> acc = 0.0;
      for (int gp = 0; gp < gate_dim; ++gp) acc += matrix(g, gp) * scratch[gp];
      int64_t idx = base;
      for (int m = 0; m < k; ++m)
        if ((g >> (k - 1 - m)) & 1) idx |= leg_bit[m];
      state.amps[idx] = acc;
    }
  }
  if (state.amps.norm() < 1e-300)
    throw Error(Errc::numerically_annihilated, "state norm vanished under tensor application");
}

StateVector evaluate_network(const NetworkProgram& prog, std::span<const double> params) {
  if (static_cast<int>(params.size()) != prog.total_params)
    throw Error(Errc::size_limit, "parameter vector length mismatch");
  StateVector state = init_state(prog.sites);
  for (const auto& step : prog.steps) {
    const auto m = tensor_matrix(step.tensor, params.subspan(static_cast<size_t>(step.slot_begin),
                                                            static_cast<size_t>(step.slot_count)));
    apply_tensor(state, m, step.sites);
  }
  return state;
}

}  // namespace motifsearch

#include "motifsearch/symmetric.hpp"

#include <cmath>

#include "motifsearch/errors.hpp"
#include "motifsearch/expectation.hpp"
#include "motifsearch/hamiltonian.hpp"

namespace motifsearch {

int64_t riordan_t(int total_sites, int j) {
  const int N = total_sites;
  if (N < 0 || j < 0) return 0;
  // two-row rolling recurrence
  std::vector<int64_t> prev2{1};       // N = 0
  std::vector<int64_t> prev{1};        // N = 1 row is {1}
  if (N == 0) return j == 0 ? 1 : 0;
  for (int m = 2; m <= N; ++m) {
    std::vector<int64_t> row(static_cast<size_t>(m / 2 + 1), 0);
    for (size_t k = 0; k < row.size(); ++k) {
      const int64_t a = k < prev.size() ? prev[k] : 0;
      const int64_t b = (k >= 1 && k - 1 < prev2.size()) ? prev2[k - 1] : 0;
      row[k] = 2 * a + b;
    }
    prev2 = std::move(prev);
    prev = std::move(row);
  }
  return j < static_cast<int>(prev.size()) ? prev[static_cast<size_t>(j)] : 0;
}

std::vector<double> amplitude_s_row(int total_sites, const SymmetricTriangle& tri,
                                    double* log_scale) {
  const int N = total_sites;
  if (N < 0) throw Error(Errc::invalid_grid, "negative site count");
  const double a = tri.gen_a, b = tri.gen_b, g = tri.gen_g;
  double log_factor = 0.0;

  std::vector<double> prev2{2.0};  // S(0,.)
  if (N == 0) {
    if (log_scale) *log_scale = 0.0;
    return prev2;
  }
  std::vector<double> prev{a, b};  // S(1,.)
  if (N == 1) {
    if (log_scale) *log_scale = 0.0;
    return prev;
  }
  for (int m = 2; m <= N; ++m) {
    std::vector<double> row(static_cast<size_t>(m + 1), 0.0);
    for (int n = 0; n <= m; ++n) {
      double v = a * (n < static_cast<int>(prev.size()) ? prev[static_cast<size_t>(n)] : 0.0);
      if (n >= 1) {
        v += b * prev[static_cast<size_t>(n - 1)];
        if (n - 1 < static_cast<int>(prev2.size())) v -= g * prev2[static_cast<size_t>(n - 1)];
      }
      row[static_cast<size_t>(n)] = v;
    }
    double peak = 0.0;
    for (double v : row) peak = std::max(peak, std::abs(v));
    if (peak > 1e100) {
      for (auto& v : row) v /= peak;
      for (auto& v : prev) v /= peak;
      log_factor += std::log(peak);
    }
    prev2 = std::move(prev);
    prev = std::move(row);
  }
  if (log_scale) *log_scale = log_factor;
  return prev;
}

double amplitude_s(int total_sites, int n, const SymmetricTriangle& tri) {
  if (n < 0 || n > total_sites) return 0.0;
  double log_scale = 0.0;
  const auto row = amplitude_s_row(total_sites, tri, &log_scale);
  return row[static_cast<size_t>(n)] * std::exp(log_scale);
}

DickeState project_symmetric(const Angles& ang, int total_sites) {
  const int N = total_sites;
  if (N < 1) throw Error(Errc::too_few_sites, "need at least one site");
  const auto tri = SymmetricTriangle::from(ang);
  const auto row = amplitude_s_row(N, tri);

  DickeState out;
  out.sites = N;
  out.amps = Eigen::VectorXd::Zero(N + 1);
  for (int n = 0; n <= N; ++n) {
    const double parity_avg = 0.5 * (row[static_cast<size_t>(n)] + row[static_cast<size_t>(N - n)]);
    const double log_binom = std::lgamma(N + 1.0) - std::lgamma(n + 1.0) - std::lgamma(N - n + 1.0);
    out.amps[n] = parity_avg * std::exp(-0.5 * log_binom);
  }
  const double norm = out.amps.norm();
  if (norm < 1e-300)
    throw Error(Errc::numerically_annihilated, "projected amplitudes vanished");
  out.amps /= norm;
  return out;
}

SymObservables symmetrized_observables(const DickeState& state, double coupling, double field) {
  const int N = state.sites;
  const Eigen::MatrixXd block = lmg_dicke_block(N, coupling, field);
  SymObservables out;
  out.energy_per_site = state.amps.dot(block * state.amps) / N;
  double mz2 = 0.0;
  for (int n = 0; n <= N; ++n) {
    const double mz = N - 2.0 * n;
    mz2 += mz * mz * state.amps[n] * state.amps[n];
  }
  out.m_rms = std::sqrt(mz2) / (2.0 * N);
  return out;
}

SymOptimum optimize_symmetrized(int total_sites, double coupling, double field,
                                const OptimizerConfig& cfg) {
  const Eigen::MatrixXd block = lmg_dicke_block(total_sites, coupling, field);
  auto objective = [&](const Eigen::VectorXd& x) {
    const auto tri = SymmetricTriangle::from({x[0], x[1]});
    std::vector<double> row;
    try {
      row = amplitude_s_row(total_sites, tri);
    } catch (const Error&) {
      return 1e9;
    }
    Eigen::VectorXd amps(total_sites + 1);
    for (int n = 0; n <= total_sites; ++n) {
      const double parity_avg =
          0.5 * (row[static_cast<size_t>(n)] + row[static_cast<size_t>(total_sites - n)]);
      const double log_binom = std::lgamma(total_sites + 1.0) - std::lgamma(n + 1.0) -
                               std::lgamma(total_sites - n + 1.0);
      amps[n] = parity_avg * std::exp(-0.5 * log_binom);
    }
    const double n2 = amps.squaredNorm();
    if (n2 < 1e-300) return 1e9;
    return amps.dot(block * amps) / n2 / total_sites;
  };

  // the thermodynamic optimum is a reliable basin for large N
  const auto thermo = minimize_lmg_thermo(field / coupling);
  std::vector<Eigen::VectorXd> warm;
  Eigen::VectorXd w0(2);
  w0 << thermo.theta, thermo.phi;
  warm.push_back(w0);
  Eigen::VectorXd w1(2);
  w1 << 0.3, thermo.phi;
  warm.push_back(w1);

  const OptResult r = minimize_simplex(objective, 2, cfg, warm);
  SymOptimum out;
  out.angles = {r.params[0], r.params[1]};
  out.energy_per_site = r.value;
  return out;
}

}  // namespace motifsearch

#include "motifsearch/hamiltonian.hpp"

#include <bit>
#include <cmath>

#include "motifsearch/errors.hpp"

namespace motifsearch {

namespace {

inline double z_of_bit(int64_t idx, int site) { return ((idx >> site) & 1) ? -1.0 : 1.0; }

}  // namespace

Hamiltonian build(Model model, int n, double coupling, double field) {
  if (n < 2) throw Error(Errc::too_few_sites, "two-site terms need n >= 2");
  if (n > kMaxDenseSites) throw Error(Errc::size_limit, "dense Hamiltonian capped at n <= 14");
  Hamiltonian h;
  h.model = model;
  h.sites = n;
  h.coupling = coupling;
  h.field = field;

  const int64_t dim = int64_t{1} << n;
  h.zz_diagonal = Eigen::VectorXd::Zero(dim);
  for (int64_t idx = 0; idx < dim; ++idx) {
    double val = 0.0;
    if (model == Model::lmg) {
      const double mz = n - 2.0 * std::popcount(static_cast<uint64_t>(idx));
      val = -(coupling / (4.0 * n)) * (mz * mz - n) / 2.0;
    } else {
      double bonds = 0.0;
      for (int i = 0; i < n; ++i) bonds += z_of_bit(idx, i) * z_of_bit(idx, (i + 1) % n);
      val = -(coupling / 4.0) * bonds;
    }
    h.zz_diagonal[idx] = val;
  }
  return h;
}

double energy_per_site(const StateVector& state, const Hamiltonian& h) {
  if (state.sites != h.sites) throw Error(Errc::size_limit, "state/Hamiltonian size mismatch");
  const double norm2 = state.amps.squaredNorm();
  if (norm2 < 1e-300) throw Error(Errc::numerically_annihilated, "zero-norm state");
  const int64_t dim = state.amps.size();
  double diag = 0.0;
  std::complex<double> hop = 0.0;
  for (int64_t idx = 0; idx < dim; ++idx) {
    const auto a = state.amps[idx];
    diag += h.zz_diagonal[idx] * std::norm(a);
    for (int i = 0; i < h.sites; ++i) hop += std::conj(a) * state.amps[idx ^ (int64_t{1} << i)];
  }
  const double energy = diag - (h.field / 2.0) * hop.real();
  return energy / (norm2 * h.sites);
}

Eigen::MatrixXd dense_matrix(const Hamiltonian& h) {
  const int64_t dim = int64_t{1} << h.sites;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (int64_t idx = 0; idx < dim; ++idx) {
    m(idx, idx) = h.zz_diagonal[idx];
    for (int i = 0; i < h.sites; ++i) m(idx ^ (int64_t{1} << i), idx) += -(h.field / 2.0);
  }
  return m;
}

ExactSolution exact_ground(const Hamiltonian& h) {
  const Eigen::MatrixXd m = dense_matrix(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  ExactSolution sol;
  sol.ground_energy = solver.eigenvalues()[0];
  sol.ground_state = solver.eigenvectors().col(0);

  const int n = h.sites;
  const int64_t dim = int64_t{1} << n;
  double mz2 = 0.0;
  for (int64_t idx = 0; idx < dim; ++idx) {
    const double mz = n - 2.0 * std::popcount(static_cast<uint64_t>(idx));
    mz2 += mz * mz * sol.ground_state[idx] * sol.ground_state[idx];
  }
  sol.m_rms = std::sqrt(mz2) / (2.0 * n);

  if (n % 2 == 0) {
    double zz = 0.0;
    for (int64_t idx = 0; idx < dim; ++idx)
      zz += z_of_bit(idx, 0) * z_of_bit(idx, n / 2) * sol.ground_state[idx] * sol.ground_state[idx];
    sol.corr_half = zz / 4.0;
  }
  return sol;
}

Eigen::MatrixXd lmg_dicke_block(int total_sites, double coupling, double field) {
  const int N = total_sites;
  if (N < 1) throw Error(Errc::too_few_sites, "need at least one site");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(N + 1, N + 1);
  for (int n = 0; n <= N; ++n) {
    const double mz = N - 2.0 * n;
    m(n, n) = -(coupling / (4.0 * N)) * (mz * mz - N) / 2.0;
    if (n + 1 <= N) {
      const double amp = -(field / 2.0) * std::sqrt(double(n + 1) * double(N - n));
      m(n + 1, n) = amp;
      m(n, n + 1) = amp;
    }
  }
  return m;
}

ExactSolution lmg_exact_dicke(int total_sites, double coupling, double field) {
  const int N = total_sites;
  const Eigen::MatrixXd block = lmg_dicke_block(N, coupling, field);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block);
  ExactSolution sol;
  sol.ground_energy = solver.eigenvalues()[0];
  sol.ground_state = solver.eigenvectors().col(0);
  double mz2 = 0.0;
  for (int n = 0; n <= N; ++n) {
    const double mz = N - 2.0 * n;
    mz2 += mz * mz * sol.ground_state[n] * sol.ground_state[n];
  }
  sol.m_rms = std::sqrt(mz2) / (2.0 * N);
  // permutation symmetry makes every pair equivalent: <Z_i Z_j> = (<M^2> - N)/(N(N-1))
  if (N >= 2) sol.corr_half = (mz2 - N) / (double(N) * (N - 1)) / 4.0;
  return sol;
}

}  // namespace motifsearch

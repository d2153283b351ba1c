#include "motifsearch/mps.hpp"

#include <cmath>

#include "motifsearch/errors.hpp"

namespace motifsearch {

namespace {

using Complex = std::complex<double>;
using Eigen::Matrix2cd;

constexpr Complex kImag{0.0, 1.0};

}  // namespace

MpsMatrices mps_matrices(const Angles& ang) {
  const TrigBundle t = TrigBundle::from(ang);
  MpsMatrices m;
  m.has_angles = true;

  const double c = t.cos_t2, s = t.sin_t2;
  const Complex ep = std::exp(-kImag * Complex((ang.theta + ang.phi) / 2));
  const Complex em = std::exp(kImag * Complex((ang.theta + ang.phi) / 2));
  const Complex eq = std::exp(-kImag * Complex((ang.theta - ang.phi) / 2));

  Matrix2cd left;
  left << c, c, kImag * s, -kImag * s;
  m.a_plus = left * Eigen::DiagonalMatrix<Complex, 2>(ep, em);
  m.a_minus = m.a_plus.conjugate();

  Matrix2cd left_b;
  left_b << c, c, kImag * s, kImag * s;
  m.b_plus = left_b * Eigen::DiagonalMatrix<Complex, 2>(ep, eq);
  m.b_minus = m.b_plus.conjugate();

  const double d = t.cos_tp2, tt = t.sin_tp2, e = t.cos_tm2, u = t.sin_tm2;
  m.az_plus << c * d, c * d, s * tt, s * tt;
  m.az_minus << c * tt, -c * tt, -s * d, s * d;
  m.bz_plus << c * d, c * e, s * tt, s * u;
  m.bz_minus << c * tt, c * u, -s * d, -s * e;
  return m;
}

MpsMatrices ladder_mps_matrices(double scale, double rapidity) {
  MpsMatrices m;
  m.has_ladder = true;
  const double ch = std::cosh(rapidity), sh = std::sinh(rapidity);
  m.c_plus << ch, ch, sh, sh;
  m.c_minus << scale * ch, -scale * ch, -scale * sh, scale * sh;
  return m;
}

StateVector mps_to_state(const MpsMatrices& m, int total_sites, MpsForm form) {
  const int N = total_sites;
  if (N < 2) throw Error(Errc::too_few_sites, "trace form needs at least two sites");
  if (N > kMaxDenseSites) throw Error(Errc::size_limit, "dense state capped at n <= 14");
  if (form == MpsForm::ladder && !m.has_ladder)
    throw Error(Errc::size_limit, "matrices carry no ladder pair");
  if (form != MpsForm::ladder && !m.has_angles)
    throw Error(Errc::size_limit, "matrices carry no angle-built pairs");

  StateVector out;
  out.sites = N;
  const int64_t dim = int64_t{1} << N;
  out.amps = Eigen::VectorXcd::Zero(dim);

  auto site_matrix = [&](int site, int64_t idx) -> const Matrix2cd& {
    const bool minus = (idx >> site) & 1;
    switch (form) {
      case MpsForm::original:
        if (site == 0) return minus ? m.b_minus : m.b_plus;
        return minus ? m.a_minus : m.a_plus;
      case MpsForm::translational:
        return minus ? m.az_minus : m.az_plus;
      case MpsForm::ladder:
        return minus ? m.c_minus : m.c_plus;
    }
    return m.a_plus;  // unreachable
  };

  for (int64_t idx = 0; idx < dim; ++idx) {
    Matrix2cd prod = site_matrix(0, idx);
    for (int site = 1; site < N; ++site) prod = prod * site_matrix(site, idx);
    out.amps[idx] = prod.trace();
  }

  if (form == MpsForm::original) {
    // Y-basis coefficients: scale and rotate each site into the Z basis
    out.amps *= std::pow(2.0, -N / 2.0);
    Matrix2cd to_z;  // columns are the Y eigenstates in the Z basis
    to_z << 1, 1, kImag, -kImag;
    to_z /= std::sqrt(2.0);
    for (int q = 0; q < N; ++q) {
      const int sites[1] = {q};
      apply_tensor(out, to_z, sites);
    }
  } else {
    const double norm = out.amps.norm();
    if (norm < 1e-300) throw Error(Errc::numerically_annihilated, "trace state has zero norm");
    out.amps /= norm;
  }
  return out;
}

}  // namespace motifsearch

#include "motifsearch/expectation.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "motifsearch/errors.hpp"

namespace motifsearch {

namespace {

constexpr double kDegenerateGuard = 1e-9;

struct FullAngle {
  double S, T, C, D, F;      // sin/cos of theta, theta+phi, phi
  double c2, s2, E, U;       // half-angle squares and theta-phi pair
  double st;
};

FullAngle full(const Angles& ang) {
  const TrigBundle t = TrigBundle::from(ang);
  FullAngle f{};
  f.S = t.sin_t;
  f.T = t.sin_tp;
  f.C = t.cos_t;
  f.D = t.cos_tp;
  f.F = t.cos_p;
  f.c2 = t.cos_t2 * t.cos_t2;
  f.s2 = t.sin_t2 * t.sin_t2;
  f.E = t.cos_tm;
  f.U = t.sin_tm;
  f.st = f.S * f.T;
  return f;
}

void guard_st(double st) {
  if (std::abs(st) > 1.0 - kDegenerateGuard)
    throw Error(Errc::degenerate_st, "|sin(theta) sin(theta+phi)| too close to 1");
}

double pow_i(double base, int exp) {
  // exp >= 0 always in these formulas after power-combining
  double out = 1.0;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

/// Numerator of <Z_i Z_{i+r}> on the unnormalised translational state;
/// symmetric in r -> N-r, with no negative powers.
double zz_numerator(const FullAngle& f, int N, int r) {
  const double denom = (f.st - 1) * (f.st - 1);
  const double smt = f.S - f.T;
  return (f.C * f.C * f.D * f.D * (1 + pow_i(f.st, N)) +
          smt * smt * (pow_i(f.st, r) + pow_i(f.st, N - r))) /
         denom;
}

double x_numerator(const FullAngle& f, int N) {
  // C^2(S-T)/(ST-1) + (ST)^N D^2 (S-T) / (T^2 (ST-1)), powers combined
  return f.C * f.C * (f.S - f.T) / (f.st - 1) +
         f.D * f.D * (f.S - f.T) * pow_i(f.S, N) * pow_i(f.T, N - 2) / (f.st - 1);
}

}  // namespace

double expval_translational(const Angles& ang, int total_sites, Observable obs, int separation) {
  const int N = total_sites;
  if (N < 2) throw Error(Errc::too_few_sites, "need at least two sites");
  const FullAngle f = full(ang);
  guard_st(f.st);
  const double m2 = 1 + pow_i(f.st, N);
  switch (obs) {
    case Observable::x:
      return x_numerator(f, N) / m2;
    case Observable::z:
      return f.C * f.D * (pow_i(f.st, N) - 1) / (f.st - 1) / m2;
    case Observable::zz: {
      const int r = separation;
      if (r < 1 || r > N - 1) throw Error(Errc::invalid_grid, "separation out of range");
      return zz_numerator(f, N, r) / m2;
    }
  }
  throw Error(Errc::invalid_grid, "bad observable");
}

double expval_parity(const Angles& ang, int total_sites, Observable obs, int separation) {
  const int N = total_sites;
  if (N < 2) throw Error(Errc::too_few_sites, "need at least two sites");
  const FullAngle f = full(ang);
  guard_st(f.st);
  const double mp2 = 1 + pow_i(f.st, N) + pow_i(f.S, N) + pow_i(f.T, N);
  switch (obs) {
    case Observable::x:
      return (x_numerator(f, N) + pow_i(f.T, N - 2) * (f.T - f.S) * (f.st + 1)) / mp2;
    case Observable::zz: {
      const int r = separation;
      if (r < 1 || r > N - 1) throw Error(Errc::invalid_grid, "separation out of range");
      const double extra =
          pow_i(f.S, N - r) * pow_i(f.T, r) + pow_i(f.S, r) * pow_i(f.T, N - r);
      return (zz_numerator(f, N, r) + extra) / mp2;
    }
    case Observable::z:
      throw Error(Errc::invalid_grid, "parity projection has vanishing <Z>");
  }
  throw Error(Errc::invalid_grid, "bad observable");
}

double expval_original_x(const Angles& ang, int total_sites, int site) {
  const int N = total_sites;
  if (site < 0 || site >= N) throw Error(Errc::invalid_grid, "site out of range");
  const FullAngle f = full(ang);
  guard_st(f.st);
  if (site != 0) {
    return f.C * f.C * (f.S - f.T) / (f.st - 1) -
           pow_i(f.st, site - 1) *
               (f.C * f.C * f.D * f.D * f.S / (f.st - 1) + f.S * f.C * f.D * f.F);
  }
  // the site carrying the B matrix; the trailing terms decay like (ST)^(N-1)
  const double head = f.C * (f.c2 * f.T + f.s2 * f.U) +
                      f.C * f.S * f.D / (f.st - 1) * (f.c2 * f.D + f.s2 * f.E);
  const double tail =
      -f.C * f.S * pow_i(f.st, N - 1) -
      pow_i(f.S, N - 1) * pow_i(f.T, N - 2) *
          (f.c2 * f.D * f.D * (f.C + f.st - 1) + f.s2 * f.D * f.E * (f.C - f.st + 1)) /
          (f.st - 1);
  return head + tail;
}

double thermo_energy(Model model, double sin_t, double sin_tp, double field) {
  const double S = sin_t, T = sin_tp, st = S * T;
  if (std::abs(st) >= 1.0) throw Error(Errc::out_of_domain, "|S T| must be below 1");
  if (model == Model::lmg) {
    return field * (S * S - 1) * (S - T) / (2 * st - 2) -
           (S * S - 1) * (T * T - 1) / (8 * (st - 1) * (st - 1));
  }
  return -(S - T) * ((S - T) + 2 * field * (1 - S * S)) / (4 * (st - 1)) - 0.25;
}

LmgThermoMinimum minimize_lmg_thermo(double field) {
  LmgThermoMinimum out;
  out.critical_field = 0.5;
  const double clamped = std::clamp(2 * field, -1.0, 1.0);
  out.theta = 0.0;
  out.phi = std::asin(clamped);
  out.energy = thermo_energy(Model::lmg, 0.0, clamped, field);
  const double disc = 1 - 4 * field * field;
  out.magnetisation = disc > 0 ? 0.5 * std::sqrt(disc) : 0.0;
  out.magnetisation_minus = -out.magnetisation;
  return out;
}

TfimThermoMinimum minimize_tfim_thermo(double field) {
  TfimThermoMinimum out;
  const double h = field;
  out.critical_field = (1 + std::sqrt(2.0)) / 4;

  struct Branch {
    double S, T, energy;
  };
  std::vector<Branch> branches;

  if (std::abs(h) <= out.critical_field) {
    // h (1+S^2)^2 - 2S = 0 on |S| <= sqrt(2)-1; the root is unique there
    double S = 0.0;
    if (h != 0.0) {
      auto quartic = [&](double s) { return h * (1 + s * s) * (1 + s * s) - 2 * s; };
      double lo = h > 0 ? 0.0 : -(std::sqrt(2.0) - 1);
      double hi = h > 0 ? (std::sqrt(2.0) - 1) : 0.0;
      double flo = quartic(lo);
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = quartic(mid);
        if (flo * fmid <= 0) {
          hi = mid;
        } else {
          lo = mid;
          flo = fmid;
        }
      }
      S = 0.5 * (lo + hi);
    }
    const double T = S * (4 / (1 + S * S) - 1);
    branches.push_back({S, T, thermo_energy(Model::tfim, S, T, h)});
  }
  if (std::abs(h) >= 0.25) {
    const double S = 1 / (4 * h), T = h >= 0 ? 1.0 : -1.0;
    branches.push_back({S, T, -std::abs(h) / 2 - 1 / (32 * std::abs(h))});
    branches.push_back({S, -T, std::abs(h) / 2 + 1 / (32 * std::abs(h))});
  }
  branches.push_back({1.0, 1.0, -0.25});   // |ST| = 1 limit values
  branches.push_back({1.0, -1.0, 0.25});

  Branch best = branches.front();
  for (const auto& b : branches)
    if (b.energy < best.energy - 1e-15) best = b;

  out.sin_t = best.S;
  out.sin_tp = best.T;
  out.energy = best.energy;
  const double C = std::sqrt(std::max(0.0, 1 - best.S * best.S));
  const double D = std::sqrt(std::max(0.0, 1 - best.T * best.T));
  const double st = best.S * best.T;
  out.z_expectation = std::abs(st) < 1 ? C * D / (1 - st) : 0.0;
  return out;
}

}  // namespace motifsearch

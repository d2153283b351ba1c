#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "motifsearch/errors.hpp"
#include "motifsearch/hamiltonian.hpp"
#include "motifsearch/mps.hpp"
#include "motifsearch/optimizer.hpp"
#include "motifsearch/symmetric.hpp"
#include "oracles.hpp"

using namespace motifsearch;
namespace orc = motifsearch::oracle;

namespace {

std::mt19937_64 g_rng(211);

Angles random_angles() {
  std::uniform_real_distribution<double> uni(-3.1, 3.1);
  return {uni(g_rng), uni(g_rng)};
}

long long binom_ll(int n, int k) {
  long long out = 1;
  for (int i = 0; i < k; ++i) out = out * (n - i) / (i + 1);
  return out;
}

Eigen::VectorXcd embed_dicke(const DickeState& d) {
  const int N = d.sites;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(int64_t{1} << N);
  for (int64_t idx = 0; idx < out.size(); ++idx) {
    const int n = __builtin_popcountll(static_cast<unsigned long long>(idx));
    out[idx] = d.amps[n] / std::sqrt(double(binom_ll(N, n)));
  }
  return out;
}

}  // namespace

TEST_SUITE("riordan") {
  TEST_CASE("recurrence equals the direct binomial sum up to N=20") {
    for (int N = 0; N <= 20; ++N)
      for (int j = 0; j <= N; ++j) CHECK(riordan_t(N, j) == orc::riordan_direct(N, j));
  }

  TEST_CASE("pinned values") {
    CHECK(riordan_t(2, 0) == 2);
    CHECK(riordan_t(3, 1) == 3);
    CHECK(riordan_t(4, 1) == 8);
    CHECK(2 * riordan_t(3, 1) + riordan_t(2, 0) == riordan_t(4, 1));
    for (int N = 1; N <= 20; ++N) CHECK(riordan_t(N, 0) == (1LL << (N - 1)));
  }
}

TEST_SUITE("amplitudes") {
  TEST_CASE("bases of the recurrence") {
    const SymmetricTriangle tri{0.31, -0.52, 0.77};
    CHECK(amplitude_s(0, 0, tri) == doctest::Approx(2.0));
    CHECK(amplitude_s(1, 0, tri) == doctest::Approx(tri.gen_a));
    CHECK(amplitude_s(1, 1, tri) == doctest::Approx(tri.gen_b));
  }

  TEST_CASE("recurrence equals polynomial coefficient extraction") {
    for (int trial = 0; trial < 10; ++trial) {
      const Angles ang = random_angles();
      const auto tri = SymmetricTriangle::from(ang);
      for (int N = 0; N <= 12; ++N) {
        const auto row = amplitude_s_row(N, tri);
        const auto oracle = orc::coefficient_extractor(tri.gen_a, tri.gen_b, tri.gen_g, N);
        REQUIRE(row.size() == oracle.size());
        for (size_t n = 0; n < row.size(); ++n)
          CHECK(row[n] == doctest::Approx(oracle[n]).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("vanishing coupling collapses to a binomial product") {
    // theta = 0 makes g = 0; one eigenvalue branch vanishes and the row is
    // exactly the binomial expansion C(N,n) a^(N-n) b^n
    const Angles ang{0.0, 1.1};
    const auto tri = SymmetricTriangle::from(ang);
    const int N = 9;
    const auto row = amplitude_s_row(N, tri);
    for (int n = 0; n <= N; ++n) {
      const double expect =
          double(binom_ll(N, n)) * std::pow(tri.gen_a, N - n) * std::pow(tri.gen_b, n);
      CHECK(row[size_t(n)] == doctest::Approx(expect).epsilon(1e-11));
    }
  }

  TEST_CASE("large sites stay finite thanks to row rescaling") {
    const auto tri = SymmetricTriangle::from({0.3, 0.9});
    const DickeState d = project_symmetric({0.3, 0.9}, 300);
    CHECK(d.amps.allFinite());
    CHECK(d.amps.norm() == doctest::Approx(1.0).epsilon(1e-12));
    double log_scale = 0.0;
    const auto row = amplitude_s_row(300, tri, &log_scale);
    for (double v : row) CHECK(std::isfinite(v));
  }
}

TEST_SUITE("projection") {
  TEST_CASE("dense permutation+parity projector agrees with the Dicke embedding") {
    for (int N : {4, 5, 6}) {
      for (int trial = 0; trial < 4; ++trial) {
        const Angles ang = random_angles();
        const StateVector t = mps_to_state(mps_matrices(ang), N, MpsForm::translational);
        Eigen::VectorXcd proj =
            orc::dense_symmetrizer(t.amps, N, orc::GroupKind::permutation);
        proj = orc::dense_symmetrizer(proj, N, orc::GroupKind::parity);
        if (proj.norm() < 1e-9) continue;
        proj /= proj.norm();
        const Eigen::VectorXcd emb = embed_dicke(project_symmetric(ang, N));
        CHECK(std::abs(proj.dot(emb)) == doctest::Approx(1.0).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("projection is parity-even and idempotent") {
    for (int trial = 0; trial < 10; ++trial) {
      const Angles ang = random_angles();
      const DickeState d11 = project_symmetric(ang, 11);
      for (int n = 0; n <= 11; ++n)
        CHECK(d11.amps[n] == doctest::Approx(d11.amps[11 - n]).epsilon(1e-12));
      // re-projecting the embedded state changes nothing (factorial cost: small n)
      const DickeState d = project_symmetric(ang, 7);
      const Eigen::VectorXcd emb = embed_dicke(d);
      Eigen::VectorXcd again = orc::dense_symmetrizer(emb, 7, orc::GroupKind::parity);
      again = orc::dense_symmetrizer(again, 7, orc::GroupKind::permutation);
      CHECK((again - emb).norm() < 1e-10);
    }
  }

  TEST_CASE("x-polarised product state projects onto the binomial distribution") {
    const Angles ang{0.0, 1.5707963267948966};
    const int N = 10;
    const DickeState d = project_symmetric(ang, N);
    double norm2 = 0.0;
    for (int n = 0; n <= N; ++n) norm2 += std::pow(std::sqrt(double(binom_ll(N, n))), 2);
    for (int n = 0; n <= N; ++n)
      CHECK(std::abs(d.amps[n]) ==
            doctest::Approx(std::sqrt(double(binom_ll(N, n)) / norm2)).epsilon(1e-10));
  }
}

TEST_SUITE("symmetrized") {
  TEST_CASE("field-free optimum pins the magnetisation at one half") {
    const auto opt = optimize_symmetrized(12, 1.0, 0.0);
    const DickeState d = project_symmetric(opt.angles, 12);
    const auto obs = symmetrized_observables(d, 1.0, 0.0);
    CHECK(obs.m_rms == doctest::Approx(0.5).epsilon(1e-9));
  }

  TEST_CASE("collective moment matches a dense quadratic form") {
    const Angles ang = random_angles();
    const int N = 9;
    const DickeState d = project_symmetric(ang, N);
    double mz2_direct = 0.0;
    for (int n = 0; n <= N; ++n)
      mz2_direct += std::pow(N - 2.0 * n, 2) * d.amps[n] * d.amps[n];
    Eigen::MatrixXd mz2_mat = Eigen::MatrixXd::Zero(N + 1, N + 1);
    for (int n = 0; n <= N; ++n) mz2_mat(n, n) = std::pow(N - 2.0 * n, 2);
    const double via_mat = d.amps.dot(mz2_mat * d.amps);
    CHECK(mz2_direct == doctest::Approx(via_mat).epsilon(1e-12));
    const auto obs = symmetrized_observables(d, 1.0, 0.4);
    CHECK(obs.m_rms == doctest::Approx(std::sqrt(mz2_direct) / (2 * N)).epsilon(1e-12));
  }

  TEST_CASE("symmetrized ansatz is tight at moderate size") {
    const auto opt = optimize_symmetrized(25, 1.0, 0.5);
    const auto exact = lmg_exact_dicke(25, 1.0, 0.5);
    const double rel =
        std::abs(opt.energy_per_site - exact.ground_energy / 25) /
        std::abs(exact.ground_energy / 25);
    CHECK(rel < 1e-5);
  }

  TEST_CASE("paramagnetic phase keeps a finite correlation angle") {
    OptimizerConfig cfg;
    cfg.restarts = 10;
    const auto opt = optimize_symmetrized(200, 1.0, 0.8, cfg);
    const double theta_mod = std::abs(std::remainder(opt.angles.theta, 3.14159265358979));
    CHECK(theta_mod > 1e-3);

    // restricting theta = 0 must cost energy
    const Eigen::MatrixXd block = lmg_dicke_block(200, 1.0, 0.8);
    auto restricted = [&](const Eigen::VectorXd& x) {
      const DickeState d = project_symmetric({0.0, x[0]}, 200);
      return d.amps.dot(block * d.amps) / 200;
    };
    OptimizerConfig cfg1;
    cfg1.restarts = 8;
    const auto r = minimize_simplex(restricted, 1, cfg1);
    CHECK(opt.energy_per_site < r.value - 1e-9);
  }

  TEST_CASE("variational hierarchy at small size") {
    const int N = 8;
    const double h = 0.5;
    const Hamiltonian ham = build(Model::lmg, N, 1.0, h);
    const auto exact = exact_ground(ham);
    const auto sym = optimize_symmetrized(N, 1.0, h);

    OptimizerConfig cfg;
    cfg.seed = 4;
    auto trans_obj = [&](const Eigen::VectorXd& x) {
      try {
        const StateVector t = mps_to_state(mps_matrices({x[0], x[1]}), N, MpsForm::translational);
        return energy_per_site(t, ham);
      } catch (const Error&) {
        return 1e9;
      }
    };
    const double e_trans = minimize_simplex(trans_obj, 2, cfg).value;
    const double e_mf =
        optimize_params(instantiate(ansatz_mean_field(), N), ham, cfg).value;

    const double e_exact = exact.ground_energy / N;
    CHECK(e_exact <= sym.energy_per_site + 1e-10);
    CHECK(sym.energy_per_site <= e_trans + 1e-9);
    CHECK(e_trans <= e_mf + 1e-9);
  }
}

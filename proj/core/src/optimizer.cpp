#include "motifsearch/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace motifsearch {

namespace {

struct SimplexResult {
  Eigen::VectorXd x;
  double fx;
  long evals;
};

SimplexResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                          const Eigen::VectorXd& x0, double tol, int max_evals) {
  const int d = static_cast<int>(x0.size());
  const double step = 0.5;
  long evals = 0;
  auto eval = [&](const Eigen::VectorXd& x) {
    ++evals;
    return f(x);
  };

  std::vector<Eigen::VectorXd> xs(static_cast<size_t>(d) + 1, x0);
  std::vector<double> fs(static_cast<size_t>(d) + 1);
  for (int i = 1; i <= d; ++i) xs[static_cast<size_t>(i)][i - 1] += step;
  for (int i = 0; i <= d; ++i) fs[static_cast<size_t>(i)] = eval(xs[static_cast<size_t>(i)]);

  std::vector<int> order(static_cast<size_t>(d) + 1);
  while (evals < max_evals) {
    for (int i = 0; i <= d; ++i) order[static_cast<size_t>(i)] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return fs[static_cast<size_t>(a)] < fs[static_cast<size_t>(b)]; });
    const int best = order[0], worst = order[static_cast<size_t>(d)],
              second = order[static_cast<size_t>(d > 0 ? d - 1 : 0)];
    if (std::abs(fs[static_cast<size_t>(worst)] - fs[static_cast<size_t>(best)]) < tol) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(d);
    for (int i = 0; i <= d; ++i)
      if (i != worst) centroid += xs[static_cast<size_t>(i)];
    centroid /= d;

    const Eigen::VectorXd reflected = centroid + (centroid - xs[static_cast<size_t>(worst)]);
    const double fr = eval(reflected);
    if (fr < fs[static_cast<size_t>(best)]) {
      const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - xs[static_cast<size_t>(worst)]);
      const double fe = eval(expanded);
      if (fe < fr) {
        xs[static_cast<size_t>(worst)] = expanded;
        fs[static_cast<size_t>(worst)] = fe;
      } else {
        xs[static_cast<size_t>(worst)] = reflected;
        fs[static_cast<size_t>(worst)] = fr;
      }
    } else if (fr < fs[static_cast<size_t>(second)]) {
      xs[static_cast<size_t>(worst)] = reflected;
      fs[static_cast<size_t>(worst)] = fr;
    } else {
      const Eigen::VectorXd contracted =
          centroid + 0.5 * (xs[static_cast<size_t>(worst)] - centroid);
      const double fc = eval(contracted);
      if (fc < fs[static_cast<size_t>(worst)]) {
        xs[static_cast<size_t>(worst)] = contracted;
        fs[static_cast<size_t>(worst)] = fc;
      } else {
        for (int i = 0; i <= d; ++i) {
          if (i == best) continue;
          xs[static_cast<size_t>(i)] =
              xs[static_cast<size_t>(best)] +
              0.5 * (xs[static_cast<size_t>(i)] - xs[static_cast<size_t>(best)]);
          fs[static_cast<size_t>(i)] = eval(xs[static_cast<size_t>(i)]);
        }
      }
    }
  }
  int best = 0;
  for (int i = 1; i <= d; ++i)
    if (fs[static_cast<size_t>(i)] < fs[static_cast<size_t>(best)]) best = i;
  return {xs[static_cast<size_t>(best)], fs[static_cast<size_t>(best)], evals};
}

}  // namespace

OptResult minimize_simplex(const std::function<double(const Eigen::VectorXd&)>& objective, int dim,
                           const OptimizerConfig& cfg,
                           const std::vector<Eigen::VectorXd>& warm_starts) {
  OptResult out;
  if (dim == 0) {
    out.params = Eigen::VectorXd();
    out.value = objective(out.params);
    out.evals = 1;
    return out;
  }
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> uni(cfg.start_lo, cfg.start_hi);

  out.value = std::numeric_limits<double>::infinity();
  auto run_from = [&](const Eigen::VectorXd& x0) {
    const auto r = nelder_mead(objective, x0, cfg.tolerance, cfg.max_evals);
    out.evals += r.evals;
    if (r.fx < out.value) {
      out.value = r.fx;
      out.params = r.x;
    }
  };
  for (const auto& w : warm_starts) run_from(w);
  for (int r = 0; r < cfg.restarts; ++r) {
    Eigen::VectorXd x0(dim);
    for (int i = 0; i < dim; ++i) x0[i] = uni(rng);
    run_from(x0);
  }
  return out;
}

OptResult optimize_params(const NetworkProgram& prog, const Hamiltonian& h,
                          const OptimizerConfig& cfg) {
  auto objective = [&](const Eigen::VectorXd& x) {
    const StateVector s =
        evaluate_network(prog, std::span<const double>(x.data(), static_cast<size_t>(x.size())));
    return energy_per_site(s, h);
  };
  return minimize_simplex(objective, prog.total_params, cfg);
}

}  // namespace motifsearch

#include "motifsearch/experiments.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>

#include "motifsearch/errors.hpp"
#include "motifsearch/expectation.hpp"
#include "motifsearch/network.hpp"
#include "motifsearch/symmetric.hpp"

namespace motifsearch {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(Errc::invalid_config, what);
}

std::vector<double> grid_from(const json& j, const std::string& key) {
  std::vector<double> out;
  if (!j.contains(key)) return out;
  const auto& g = j.at(key);
  if (g.is_array()) {
    for (const auto& v : g) out.push_back(v.get<double>());
  } else if (g.is_object()) {
    const double lo = g.at("min").get<double>();
    const double hi = g.at("max").get<double>();
    const int points = g.at("points").get<int>();
    require(points >= 1, key + ".points must be >= 1");
    for (int i = 0; i < points; ++i)
      out.push_back(points == 1 ? lo : lo + (hi - lo) * i / (points - 1));
  } else {
    throw Error(Errc::invalid_config, key + " must be an array or {min,max,points}");
  }
  return out;
}

void write_text(const std::filesystem::path& file, const std::string& text) {
  std::ofstream os(file, std::ios::binary);
  if (!os) throw Error(Errc::invalid_config, "cannot write " + file.string());
  os << text;
}

void persist_provenance(const RunConfig& cfg) {
  std::filesystem::create_directories(cfg.out_dir);
  write_text(cfg.out_dir / "config.json", cfg.raw_json);
  write_text(cfg.out_dir / "version.txt", std::string(kCodeVersion) + "\n");
}

Motif resolve_ansatz(const std::string& name) {
  if (name == "psi_o" || name == "original") return ansatz_original();
  if (name == "psi_x" || name == "xy") return ansatz_xy_competitor();
  if (name == "psi_l" || name == "ladder") return ansatz_ladder();
  if (name == "mean-field" || name == "meanfield") return ansatz_mean_field();
  return parse_motif(name);  // inline genome text
}

double meanfield_product_energy(double phi, int n, Model model, double coupling, double field) {
  const double f = std::cos(phi), v = std::sin(phi);
  if (model == Model::lmg) return -(coupling * (n - 1) / (8.0 * n)) * f * f - (field / 2) * v;
  return -(coupling / 4) * f * f - (field / 2) * v;
}

double optimize_meanfield_product(int n, Model model, double coupling, double field,
                                  const OptimizerConfig& opt) {
  auto objective = [&](const Eigen::VectorXd& x) {
    return meanfield_product_energy(x[0], n, model, coupling, field);
  };
  std::vector<Eigen::VectorXd> warm;
  Eigen::VectorXd w(1);
  w << std::asin(std::clamp(2 * field / coupling, -1.0, 1.0));
  warm.push_back(w);
  return minimize_simplex(objective, 1, opt, warm).value;
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const std::exception& e) {
    throw Error(Errc::invalid_config, std::string("config is not valid JSON: ") + e.what());
  }
  RunConfig cfg;
  cfg.raw_json = json_text;
  require(j.contains("command"), "missing 'command'");
  cfg.command = j.at("command").get<std::string>();

  SearchConfig& s = cfg.search;
  if (j.contains("model")) {
    const std::string m = j.at("model").get<std::string>();
    if (m == "LMG" || m == "lmg")
      s.model = Model::lmg;
    else if (m == "TFIM" || m == "tfim")
      s.model = Model::tfim;
    else
      throw Error(Errc::invalid_config, "model must be LMG or TFIM");
  }
  if (j.contains("J")) s.coupling = j.at("J").get<double>();
  if (j.contains("h")) s.field = j.at("h").get<double>();
  if (j.contains("sizes")) s.sizes = j.at("sizes").get<std::vector<int>>();
  if (j.contains("weights")) s.weights = j.at("weights").get<std::vector<double>>();
  if (j.contains("l1")) s.l1 = j.at("l1").get<double>();
  if (j.contains("l2")) s.l2 = j.at("l2").get<double>();
  if (j.contains("rho")) s.rho = j.at("rho").get<double>();
  if (j.contains("epsilon")) s.epsilon = j.at("epsilon").get<double>();
  if (j.contains("pool_seed_count")) s.pool_seed_count = j.at("pool_seed_count").get<int>();
  if (j.contains("budget_steps")) s.budget_steps = j.at("budget_steps").get<int>();
  if (j.contains("seed")) s.seed = j.at("seed").get<uint64_t>();
  if (j.contains("workers")) s.workers = j.at("workers").get<int>();
  if (j.contains("max_genome_nodes")) s.max_genome_nodes = j.at("max_genome_nodes").get<int>();
  if (j.contains("operator_basis")) {
    const std::string b = j.at("operator_basis").get<std::string>();
    if (b == "pauli")
      s.operator_basis = PoolBasis::pauli;
    else if (b == "ladder")
      s.operator_basis = PoolBasis::ladder;
    else
      throw Error(Errc::invalid_config, "operator_basis must be pauli or ladder");
  }
  if (j.contains("optimizer")) {
    const auto& o = j.at("optimizer");
    if (o.contains("restarts")) s.eval_opt.restarts = o.at("restarts").get<int>();
    if (o.contains("max_evals")) s.eval_opt.max_evals = o.at("max_evals").get<int>();
    if (o.contains("tolerance")) s.eval_opt.tolerance = o.at("tolerance").get<double>();
  }

  require(!s.sizes.empty(), "sizes must be nonempty");
  for (int n : s.sizes) require(n >= 2 && n <= kMaxDenseSites, "sizes must lie in [2, 14]");
  require(s.rho >= 0 && s.rho <= 1, "rho must lie in [0, 1]");
  require(s.epsilon >= 0 && s.epsilon <= 1, "epsilon must lie in [0, 1]");
  require(s.pool_seed_count >= 2, "pool_seed_count must be >= 2");
  require(s.budget_steps >= 0, "budget_steps must be >= 0");
  require(s.workers >= 1, "workers must be >= 1");
  require(s.eval_opt.restarts >= 1, "optimizer.restarts must be >= 1");
  require(s.eval_opt.tolerance > 0, "optimizer.tolerance must be > 0");
  if (!s.weights.empty()) s.normalized_weights();  // validates

  if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();
  if (j.contains("ansatz")) cfg.eval_ansatz = j.at("ansatz").get<std::string>();

  cfg.h_grid = grid_from(j, "h_grid");
  if (j.contains("n_grid")) cfg.n_grid = j.at("n_grid").get<std::vector<int>>();

  if (j.contains("penalty_pairs")) {
    for (const auto& p : j.at("penalty_pairs")) {
      require(p.is_array() && p.size() == 2, "penalty_pairs entries must be [l1, l2]");
      cfg.penalty_pairs.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
  }
  if (j.contains("seeds")) {
    for (const auto& v : j.at("seeds")) cfg.seeds.push_back(v.get<uint64_t>());
  } else if (j.contains("seed_count")) {
    const int k = j.at("seed_count").get<int>();
    for (int i = 1; i <= k; ++i) cfg.seeds.push_back(static_cast<uint64_t>(i));
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& file) {
  std::ifstream is(file, std::ios::binary);
  if (!is) throw Error(Errc::invalid_config, "cannot read " + file.string());
  std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  return parse_run_config(text);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void ResultTable::add_row(std::vector<std::string> row) {
  if (row.size() != header.size())
    throw Error(Errc::invalid_grid, "row width does not match header");
  rows.push_back(std::move(row));
}

void ResultTable::write(const std::filesystem::path& file) const {
  std::ofstream os(file, std::ios::binary);
  if (!os) throw Error(Errc::invalid_config, "cannot write " + file.string());
  for (size_t i = 0; i < header.size(); ++i) os << header[i] << (i + 1 < header.size() ? "," : "");
  os << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) os << row[i] << (i + 1 < row.size() ? "," : "");
    os << "\n";
  }
}

std::string pool_jsonl(const SearchState& state) {
  std::string out;
  for (const auto& ind : state.pool) {
    ordered_json j;
    j["genome"] = ind.canonical;
    j["fitness"] = ind.fitness;
    ordered_json sizes = ordered_json::array();
    for (const auto& r : ind.per_size) {
      ordered_json e;
      e["n"] = r.sites;
      e["E"] = r.energy;
      e["S"] = r.structural;
      e["V"] = r.variational;
      sizes.push_back(e);
    }
    j["per_size"] = sizes;
    j["multiplicity"] = ind.multiplicity;
    j["class"] = class_name(ind.cls);
    out += j.dump();
    out += '\n';
  }
  return out;
}

int cmd_search(const RunConfig& cfg) {
  persist_provenance(cfg);
  const SearchState state = run_search(cfg.search);

  write_text(cfg.out_dir / "pool.jsonl", pool_jsonl(state));

  ResultTable log;
  log.header = {"step", "best_fitness", "best_class", "pool_unique", "wallclock_s"};
  for (const auto& r : state.log)
    log.add_row({std::to_string(r.step), format_double(r.best_fitness), class_name(r.best_class),
                 std::to_string(r.pool_unique), format_double(r.wallclock_s)});
  log.write(cfg.out_dir / "log.csv");

  const Individual* best = nullptr;
  for (const auto& ind : state.pool)
    if (!best || ind.fitness < best->fitness) best = &ind;
  write_text(cfg.out_dir / "best_genome.txt", best ? best->canonical + "\n" : "");
  return 0;
}

int cmd_eval(const RunConfig& cfg) {
  persist_provenance(cfg);
  require(!cfg.eval_ansatz.empty(), "eval needs an 'ansatz'");
  const Motif genome = resolve_ansatz(cfg.eval_ansatz);

  SearchConfig sc = cfg.search;
  sc.eval_opt = OptimizerConfig{};  // full-strength optimizer for reporting
  const Individual ind = evaluate_individual(genome, sc);

  ResultTable t;
  t.header = {"n", "E", "S", "V"};
  for (const auto& r : ind.per_size)
    t.add_row({std::to_string(r.sites), format_double(r.energy), format_double(r.structural),
               std::to_string(r.variational)});
  t.write(cfg.out_dir / "eval.csv");

  ordered_json j;
  j["ansatz"] = cfg.eval_ansatz;
  j["genome"] = ind.canonical;
  j["fitness"] = ind.fitness;
  j["class"] = class_name(ind.cls);
  write_text(cfg.out_dir / "eval.json", j.dump(2) + "\n");
  return 0;
}

int cmd_lmg_figures(const RunConfig& cfg) {
  persist_provenance(cfg);
  require(!cfg.h_grid.empty() && !cfg.n_grid.empty(), "lmg-figures needs h_grid and n_grid");

  ResultTable fig2;
  fig2.header = {"N", "h", "m_rms_ansatz", "m_rms_exact"};
  ResultTable fig3;
  fig3.header = {"N", "h", "rel_err_symmetrized", "rel_err_meanfield"};

  OptimizerConfig opt;
  opt.seed = cfg.search.seed;
  const double coupling = cfg.search.coupling;
  for (int n : cfg.n_grid) {
    for (double h : cfg.h_grid) {
      const ExactSolution exact = lmg_exact_dicke(n, coupling, h);
      const double e_exact = exact.ground_energy / n;

      const SymOptimum sym = optimize_symmetrized(n, coupling, h, opt);
      const DickeState st = project_symmetric(sym.angles, n);
      const SymObservables obs = symmetrized_observables(st, coupling, h);

      const double e_mf = optimize_meanfield_product(n, Model::lmg, coupling, h, opt);

      fig2.add_row({std::to_string(n), format_double(h), format_double(obs.m_rms),
                    format_double(exact.m_rms)});
      fig3.add_row({std::to_string(n), format_double(h),
                    format_double(std::abs(sym.energy_per_site - e_exact) / std::abs(e_exact)),
                    format_double(std::abs(e_mf - e_exact) / std::abs(e_exact))});
    }
  }
  fig2.write(cfg.out_dir / "fig2.csv");
  fig3.write(cfg.out_dir / "fig3.csv");
  return 0;
}

int cmd_tfim_figures(const RunConfig& cfg) {
  persist_provenance(cfg);
  require(!cfg.h_grid.empty() && !cfg.n_grid.empty(), "tfim-figures needs h_grid and n_grid");
  for (int n : cfg.n_grid) {
    if (n % 2 != 0)
      throw Error(Errc::invalid_grid, "half-chain correlation needs even N");
    if (n > kMaxDenseSites)
      throw Error(Errc::invalid_grid, "exact column needs N <= 14");
  }

  ResultTable tab;
  tab.header = {"N", "h", "corr_parity_ansatz", "corr_exact", "corr_meanfield",
                "corr_thermo_ansatz"};
  OptimizerConfig opt;
  opt.seed = cfg.search.seed;
  const double coupling = cfg.search.coupling;

  for (int n : cfg.n_grid) {
    for (double h : cfg.h_grid) {
      // parity-projected ansatz optimized on its own closed-form energy
      auto objective = [&](const Eigen::VectorXd& x) {
        try {
          const Angles ang{x[0], x[1]};
          const double zz = expval_parity(ang, n, Observable::zz, 1);
          const double xv = expval_parity(ang, n, Observable::x);
          return -(coupling / 4) * zz - (h / 2) * xv;
        } catch (const Error&) {
          return 1e9;
        }
      };
      const OptResult r = minimize_simplex(objective, 2, opt);
      const double corr_ansatz =
          0.25 * expval_parity({r.params[0], r.params[1]}, n, Observable::zz, n / 2);

      const ExactSolution exact = exact_ground(build(Model::tfim, n, coupling, h));

      auto mf_obj = [&](const Eigen::VectorXd& x) {
        return meanfield_product_energy(x[0], n, Model::tfim, coupling, h);
      };
      std::vector<Eigen::VectorXd> warm;
      Eigen::VectorXd w(1);
      w << std::asin(std::clamp(h / coupling, -1.0, 1.0));
      warm.push_back(w);
      const OptResult mf = minimize_simplex(mf_obj, 1, opt, warm);
      const double fmf = std::cos(mf.params[0]);
      const double corr_mf = 0.25 * fmf * fmf;

      const TfimThermoMinimum thermo = minimize_tfim_thermo(h / coupling);
      const double corr_thermo = 0.25 * thermo.z_expectation * thermo.z_expectation;

      tab.add_row({std::to_string(n), format_double(h), format_double(corr_ansatz),
                   format_double(exact.corr_half.value()), format_double(corr_mf),
                   format_double(corr_thermo)});
    }
  }
  tab.write(cfg.out_dir / "figA1.csv");
  return 0;
}

int cmd_robustness(const RunConfig& cfg) {
  persist_provenance(cfg);
  require(!cfg.penalty_pairs.empty(), "robustness needs penalty_pairs");
  require(!cfg.seeds.empty(), "robustness needs seeds (or seed_count)");

  constexpr StructureClass kAll[] = {StructureClass::white, StructureClass::red,
                                     StructureClass::green, StructureClass::blue,
                                     StructureClass::yellow, StructureClass::pink};
  ResultTable tab;
  tab.header = {"l1", "l2", "step", "class", "fraction"};

  for (const auto& [l1, l2] : cfg.penalty_pairs) {
    // best class per (seed, step)
    std::vector<std::vector<StructureClass>> per_seed;
    for (uint64_t seed : cfg.seeds) {
      SearchConfig sc = cfg.search;
      sc.l1 = l1;
      sc.l2 = l2;
      sc.seed = seed;
      const SearchState state = run_search(sc);
      std::vector<StructureClass> classes;
      for (const auto& r : state.log) classes.push_back(r.best_class);
      per_seed.push_back(std::move(classes));
    }
    const size_t steps = per_seed.empty() ? 0 : per_seed.front().size();
    for (size_t s = 0; s < steps; ++s) {
      for (StructureClass c : kAll) {
        int count = 0;
        for (const auto& classes : per_seed)
          if (s < classes.size() && classes[s] == c) ++count;
        tab.add_row({format_double(l1), format_double(l2), std::to_string(s + 1), class_name(c),
                     format_double(double(count) / double(per_seed.size()))});
      }
    }
  }
  tab.write(cfg.out_dir / "robustness.csv");
  return 0;
}

int run_command(const RunConfig& cfg) {
  if (cfg.out_dir.empty()) throw Error(Errc::invalid_config, "missing output directory");
  if (cfg.command == "search") return cmd_search(cfg);
  if (cfg.command == "eval") return cmd_eval(cfg);
  if (cfg.command == "lmg-figures") return cmd_lmg_figures(cfg);
  if (cfg.command == "tfim-figures") return cmd_tfim_figures(cfg);
  if (cfg.command == "robustness") return cmd_robustness(cfg);
  throw Error(Errc::invalid_config, "unknown command '" + cfg.command + "'");
}

}  // namespace motifsearch

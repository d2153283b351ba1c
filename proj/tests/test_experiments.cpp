#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "motifsearch/errors.hpp"
#include "motifsearch/experiments.hpp"

using namespace motifsearch;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  REQUIRE(is.good());
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

std::filesystem::path fresh_dir(const std::string& tag) {
  const auto dir = std::filesystem::temp_directory_path() / ("motifsearch_test_" + tag);
  std::filesystem::remove_all(dir);
  return dir;
}

constexpr const char* kTinySearch = R"({
  "command": "search",
  "model": "TFIM", "J": 1.0, "h": 0.5,
  "sizes": [3, 4],
  "l1": 7e-4, "l2": 7e-4,
  "rho": 0.1, "epsilon": 0.33,
  "pool_seed_count": 6, "budget_steps": 1, "seed": 5,
  "optimizer": {"restarts": 2, "max_evals": 120, "tolerance": 1e-6}
})";

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("parses and validates") {
    const RunConfig cfg = parse_run_config(kTinySearch);
    CHECK(cfg.command == "search");
    CHECK(cfg.search.sizes == std::vector<int>{3, 4});
    CHECK(cfg.search.l1 == doctest::Approx(7e-4));
    CHECK(cfg.search.seed == 5);

    CHECK_THROWS_AS(parse_run_config("{"), Error);
    CHECK_THROWS_AS(parse_run_config(R"({"command":"search","rho":1.5})"), Error);
    CHECK_THROWS_AS(parse_run_config(R"({"command":"search","sizes":[1]})"), Error);
    CHECK_THROWS_AS(parse_run_config(R"({"no_command":1})"), Error);
  }

  TEST_CASE("grid forms") {
    const auto cfg = parse_run_config(
        R"({"command":"lmg-figures","h_grid":{"min":0,"max":1,"points":5},"n_grid":[10]})");
    REQUIRE(cfg.h_grid.size() == 5);
    CHECK(cfg.h_grid.front() == 0.0);
    CHECK(cfg.h_grid.back() == 1.0);
    const auto cfg2 =
        parse_run_config(R"({"command":"lmg-figures","h_grid":[0.5,0.7],"n_grid":[10]})");
    CHECK(cfg2.h_grid == std::vector<double>{0.5, 0.7});
  }
}

TEST_SUITE("commands") {
  TEST_CASE("search writes its artifacts and reproduces byte-for-byte") {
    RunConfig cfg = parse_run_config(kTinySearch);
    cfg.out_dir = fresh_dir("search_a");
    REQUIRE(run_command(cfg) == 0);
    for (const char* f : {"pool.jsonl", "log.csv", "best_genome.txt", "config.json", "version.txt"})
      CHECK(std::filesystem::exists(cfg.out_dir / f));

    CHECK(first_line(slurp(cfg.out_dir / "log.csv")) ==
          "step,best_fitness,best_class,pool_unique,wallclock_s");

    RunConfig again = parse_run_config(kTinySearch);
    again.out_dir = fresh_dir("search_b");
    REQUIRE(run_command(again) == 0);
    CHECK(slurp(cfg.out_dir / "pool.jsonl") == slurp(again.out_dir / "pool.jsonl"));
    CHECK(slurp(cfg.out_dir / "best_genome.txt") == slurp(again.out_dir / "best_genome.txt"));
  }

  TEST_CASE("zero-budget search returns the seeded pool") {
    RunConfig cfg = parse_run_config(kTinySearch);
    cfg.search.budget_steps = 0;
    cfg.out_dir = fresh_dir("search_zero");
    REQUIRE(run_command(cfg) == 0);
    const std::string pool = slurp(cfg.out_dir / "pool.jsonl");
    const long lines = std::count(pool.begin(), pool.end(), '\n');
    CHECK(lines == cfg.search.pool_seed_count);
  }

  TEST_CASE("eval emits the schema and classifies builtins") {
    RunConfig cfg = parse_run_config(
        R"({"command":"eval","ansatz":"psi_o","sizes":[3,4],"model":"TFIM","h":0.5})");
    cfg.out_dir = fresh_dir("eval");
    REQUIRE(run_command(cfg) == 0);
    const std::string csv = slurp(cfg.out_dir / "eval.csv");
    CHECK(first_line(csv) == "n,E,S,V");
    const std::string j = slurp(cfg.out_dir / "eval.json");
    CHECK(j.find("\"class\": \"White\"") != std::string::npos);
  }

  TEST_CASE("lmg figures: schema and physics spot checks") {
    RunConfig cfg = parse_run_config(
        R"({"command":"lmg-figures","h_grid":[0.0,0.5],"n_grid":[10,25],"seed":2})");
    cfg.out_dir = fresh_dir("lmg");
    REQUIRE(run_command(cfg) == 0);
    const std::string fig2 = slurp(cfg.out_dir / "fig2.csv");
    CHECK(first_line(fig2) == "N,h,m_rms_ansatz,m_rms_exact");
    const std::string fig3 = slurp(cfg.out_dir / "fig3.csv");
    CHECK(first_line(fig3) == "N,h,rel_err_symmetrized,rel_err_meanfield");

    // h = 0 rows carry m_rms = 0.5 in both columns; errors keep the ordering
    std::istringstream is(fig3);
    std::string line;
    std::getline(is, line);
    while (std::getline(is, line)) {
      double n, h, rs, rm;
      REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &n, &h, &rs, &rm) == 4);
      if (h > 0) {
        CHECK(rs < rm);
      } else {
        CHECK(rs <= rm + 1e-12);  // the classical point is exact for both
      }
      if (n == 25 && h == 0.5) CHECK(rs <= 1e-5);
    }
    std::istringstream is2(fig2);
    std::getline(is2, line);
    while (std::getline(is2, line)) {
      double n, h, ma, me;
      REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &n, &h, &ma, &me) == 4);
      if (h == 0.0) {
        CHECK(ma == doctest::Approx(0.5).epsilon(1e-6));
        CHECK(me == doctest::Approx(0.5).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("tfim figures: schema, trivial rows and critical-field columns") {
    RunConfig cfg = parse_run_config(
        R"({"command":"tfim-figures","h_grid":[0.0,0.7,1.2],"n_grid":[6],"seed":2})");
    cfg.out_dir = fresh_dir("tfim");
    REQUIRE(run_command(cfg) == 0);
    const std::string tab = slurp(cfg.out_dir / "figA1.csv");
    CHECK(first_line(tab) == "N,h,corr_parity_ansatz,corr_exact,corr_meanfield,corr_thermo_ansatz");
    std::istringstream is(tab);
    std::string line;
    std::getline(is, line);
    while (std::getline(is, line)) {
      double n, h, ca, ce, cm, ct;
      REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf", &n, &h, &ca, &ce, &cm, &ct) ==
              6);
      if (h == 0.0) {
        CHECK(ca == doctest::Approx(0.25).epsilon(1e-8));
        CHECK(ce == doctest::Approx(0.25).epsilon(1e-8));
      }
      if (h == 0.7) {  // above the ansatz critical field, below mean-field's
        CHECK(ct == doctest::Approx(0.0));
        CHECK(cm > 0.05);
      }
      if (h == 1.2) CHECK(cm == doctest::Approx(0.0).epsilon(1e-9));
    }

    RunConfig odd = parse_run_config(
        R"({"command":"tfim-figures","h_grid":[0.5],"n_grid":[5]})");
    odd.out_dir = fresh_dir("tfim_odd");
    CHECK_THROWS_AS(run_command(odd), Error);
  }

  TEST_CASE("robustness: fractions sum to one per pair and step") {
    RunConfig cfg = parse_run_config(R"({
      "command": "robustness",
      "model": "TFIM", "h": 0.5, "sizes": [3],
      "rho": 0.1, "epsilon": 0.33,
      "pool_seed_count": 5, "budget_steps": 1,
      "penalty_pairs": [[0.0007, 0.0007], [0, 0]],
      "seeds": [1, 2],
      "optimizer": {"restarts": 1, "max_evals": 80, "tolerance": 1e-5}
    })");
    cfg.out_dir = fresh_dir("robust");
    REQUIRE(run_command(cfg) == 0);
    const std::string tab = slurp(cfg.out_dir / "robustness.csv");
    CHECK(first_line(tab) == "l1,l2,step,class,fraction");
    std::istringstream is(tab);
    std::string line;
    std::getline(is, line);
    std::map<std::string, double> sums;  // key = "l1,l2,step"
    while (std::getline(is, line)) {
      const auto last_comma = line.rfind(',');
      const double frac = std::stod(line.substr(last_comma + 1));
      const auto class_comma = line.rfind(',', last_comma - 1);
      sums[line.substr(0, class_comma)] += frac;
    }
    CHECK(!sums.empty());
    for (const auto& [key, total] : sums) CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("unknown command and missing out dir fail with config errors") {
    CHECK_THROWS_AS(run_command(parse_run_config(R"({"command":"fly"})")), Error);
    RunConfig cfg = parse_run_config(kTinySearch);
    cfg.out_dir.clear();
    CHECK_THROWS_AS(run_command(cfg), Error);
  }
}

#include <CLI11.hpp>

#include <iostream>

#include "motifsearch/errors.hpp"
#include "motifsearch/experiments.hpp"

namespace {

int dispatch(const std::string& command, const std::string& config_file, const std::string& out,
             int workers, long long seed) {
  using namespace motifsearch;
  RunConfig cfg = load_run_config(config_file);
  cfg.command = command;
  if (!out.empty()) cfg.out_dir = out;
  if (workers > 0) cfg.search.workers = workers;
  if (seed >= 0) cfg.search.seed = static_cast<uint64_t>(seed);
  return run_command(cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evolutionary tensor-network ansatz search and analytic evaluation"};
  app.require_subcommand(1);

  std::string config_file;
  std::string out_dir;
  int workers = 0;
  long long seed = -1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_file, "JSON config file")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--workers", workers, "parallel fitness workers");
    sub->add_option("--seed", seed, "override the config seed");
  };

  const char* commands[] = {"search", "eval", "lmg-figures", "tfim-figures", "robustness"};
  const char* descriptions[] = {
      "run the evolutionary ansatz search",
      "optimize and measure a named or inline ansatz",
      "emit fig2.csv / fig3.csv for the LMG model",
      "emit figA1.csv for the TFIM",
      "class-density grid over penalty pairs and seeds",
  };
  for (size_t i = 0; i < 5; ++i) add_common(app.add_subcommand(commands[i], descriptions[i]));

  CLI11_PARSE(app, argc, argv);

  const std::string chosen = app.get_subcommands().front()->get_name();
  try {
    return dispatch(chosen, config_file, out_dir, workers, seed);
  } catch (const motifsearch::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    const auto c = e.code();
    return (c == motifsearch::Errc::invalid_config || c == motifsearch::Errc::parse_error ||
            c == motifsearch::Errc::invalid_grid)
               ? 2
               : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "motifsearch/evolution.hpp"

namespace motifsearch {

inline constexpr const char* kCodeVersion = "motifsearch 0.1.0";

/// Parsed command file: which command to run plus every knob it needs.
/// Flat JSON keys mirror SearchConfig; grids and penalty pairs are arrays.
struct RunConfig {
  std::string command;  // search | eval | lmg-figures | tfim-figures | robustness
  SearchConfig search;
  std::filesystem::path out_dir;

  // eval
  std::string eval_ansatz;  // builtin name (psi_o, psi_x, psi_l, mean-field) or genome text

  // figure grids
  std::vector<double> h_grid;
  std::vector<int> n_grid;

  // robustness
  std::vector<std::pair<double, double>> penalty_pairs;
  std::vector<uint64_t> seeds;

  std::string raw_json;  // verbatim config for provenance
};

RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::filesystem::path& file);

/// Write-once CSV with a fixed header; rows render doubles with %.17g.
struct ResultTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  void write(const std::filesystem::path& file) const;
};

std::string format_double(double v);

// Each command writes its outputs under cfg.out_dir and returns process exit
// code 0 on success. The config text and code version are always persisted.
int cmd_search(const RunConfig& cfg);
int cmd_eval(const RunConfig& cfg);
int cmd_lmg_figures(const RunConfig& cfg);
int cmd_tfim_figures(const RunConfig& cfg);
int cmd_robustness(const RunConfig& cfg);

int run_command(const RunConfig& cfg);

/// One JSONL line per pool individual, canonical key order; byte-deterministic.
std::string pool_jsonl(const SearchState& state);

}  // namespace motifsearch

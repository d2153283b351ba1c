#pragma once

#include <cstdint>
#include <deque>
#include <limits>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "motifsearch/hamiltonian.hpp"
#include "motifsearch/motif.hpp"
#include "motifsearch/optimizer.hpp"

namespace motifsearch {

enum class StructureClass { white, red, green, blue, yellow, pink };
const char* class_name(StructureClass c);

struct SearchConfig {
  std::vector<int> sizes{3, 4, 5};
  std::vector<double> weights;  // empty -> uniform; normalised on use
  double l1 = 7e-4;             // structural penalty
  double l2 = 7e-4;             // variational penalty
  double rho = 0.01;            // selection pressure
  double epsilon = 0.33;        // exploration probability
  int pool_seed_count = 20;
  int budget_steps = 200;
  uint64_t seed = 1;
  PoolBasis operator_basis = PoolBasis::pauli;
  Model model = Model::tfim;
  double coupling = 1.0;
  double field = 0.5;
  OptimizerConfig eval_opt{3, 400, 1e-8, 0};  // per-fitness-evaluation budget
  int workers = 1;
  int max_genome_nodes = 16;  // larger genomes are culled

  std::vector<double> normalized_weights() const;
};

struct PerSizeRecord {
  int sites = 0;
  double energy = 0.0;      // optimized per-site energy
  double structural = 0.0;  // S
  int variational = 0;      // V
};

struct Individual {
  Motif genome;
  std::string canonical;
  double fitness = std::numeric_limits<double>::infinity();
  std::vector<PerSizeRecord> per_size;
  int multiplicity = 1;
  StructureClass cls = StructureClass::pink;
  long insertion_order = 0;

  bool evaluated() const { return !per_size.empty(); }
};

struct StepRecord {
  int step = 0;
  double best_fitness = 0.0;
  StructureClass best_class = StructureClass::pink;
  long pool_unique = 0;
  double wallclock_s = 0.0;
};

struct SearchState {
  std::vector<Individual> pool;  // insertion order; canonical genomes unique
  std::unordered_map<std::string, size_t> pool_index;
  std::unordered_set<std::string> culled;
  std::deque<Motif> queue;
  long unique_added = 0;  // unique evaluated additions after seeding
  long merged_total = 0;  // every offspring/seed that reached the pool merge
  long culled_hits = 0;   // merges that landed on invalid genomes
  int step_count = 0;
  std::mt19937_64 rng;
  std::vector<StepRecord> log;
};

double fitness_of(const std::vector<PerSizeRecord>& per_size, const SearchConfig& cfg);

/// Optimize and measure a genome at every configured size. Throws Error if the
/// genome fails to instantiate anywhere (the caller culls it).
Individual evaluate_individual(const Motif& genome, const SearchConfig& cfg);

/// Sample max(2, ceil(rho * pool)) distinct contestants; with probability
/// epsilon two random contestants win, otherwise the two fittest (ties broken
/// by insertion order). Returns pool indices.
std::pair<size_t, size_t> tournament(SearchState& state, const SearchConfig& cfg);

Motif random_motif(std::mt19937_64& rng, PoolBasis basis, int min_prims = 1, int max_prims = 3);
Motif mutate(const Motif& m, std::mt19937_64& rng, PoolBasis basis);
Motif crossover(const Motif& a, const Motif& b, std::mt19937_64& rng);

/// Structure class relative to the discovered two-cycle ansatz: exact genome
/// matches are White (original) and Red (mean field); otherwise per-size
/// structural complexity against the reference decides Green/Blue, and the
/// more complex individuals split into Yellow (contains the original ansatz as
/// a contiguous building block) and Pink.
StructureClass classify(const Individual& ind, const std::vector<double>& reference_structural);
StructureClass classify(const Individual& ind, const SearchConfig& cfg);

SearchState init_search(const SearchConfig& cfg);
/// Advance until step_count crosses the next multiple (10 unique additions).
void search_step(SearchState& state, const SearchConfig& cfg);
SearchState run_search(const SearchConfig& cfg);

uint64_t fnv1a64(const std::string& text, uint64_t seed);

}  // namespace motifsearch

#include "motifsearch/evolution.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <thread>

#include "motifsearch/errors.hpp"
#include "motifsearch/network.hpp"

namespace motifsearch {

const char* class_name(StructureClass c) {
  switch (c) {
    case StructureClass::white: return "White";
    case StructureClass::red: return "Red";
    case StructureClass::green: return "Green";
    case StructureClass::blue: return "Blue";
    case StructureClass::yellow: return "Yellow";
    case StructureClass::pink: return "Pink";
  }
  return "?";
}

uint64_t fnv1a64(const std::string& text, uint64_t seed) {
  uint64_t h = 14695981039346656037ull ^ seed;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::vector<double> SearchConfig::normalized_weights() const {
  std::vector<double> w = weights;
  if (w.empty()) w.assign(sizes.size(), 1.0);
  if (w.size() != sizes.size())
    throw Error(Errc::invalid_config, "weights must match sizes");
  double sum = 0.0;
  for (double v : w) sum += v;
  if (sum <= 0) throw Error(Errc::invalid_config, "weights must have positive sum");
  for (double& v : w) v /= sum;
  return w;
}

double fitness_of(const std::vector<PerSizeRecord>& per_size, const SearchConfig& cfg) {
  const auto w = cfg.normalized_weights();
  double f = 0.0;
  for (size_t i = 0; i < per_size.size(); ++i)
    f += (per_size[i].energy + cfg.l1 * per_size[i].structural + cfg.l2 * per_size[i].variational) *
         w[i];
  return f;
}

Individual evaluate_individual(const Motif& genome, const SearchConfig& cfg) {
  Individual ind;
  ind.genome = genome;
  ind.canonical = canonical_serialize(genome);
  if (static_cast<int>(flatten(genome).size()) > cfg.max_genome_nodes)
    throw Error(Errc::size_limit, "genome exceeds the node cap");

  for (int n : cfg.sizes) {
    const NetworkProgram prog = instantiate(genome, n);  // throws on failure
    const Hamiltonian ham = build(cfg.model, n, cfg.coupling, cfg.field);
    OptimizerConfig opt = cfg.eval_opt;
    opt.seed = fnv1a64(ind.canonical, cfg.seed) ^ static_cast<uint64_t>(n);
    auto objective = [&](const Eigen::VectorXd& x) {
      try {
        const StateVector s = evaluate_network(
            prog, std::span<const double>(x.data(), static_cast<size_t>(x.size())));
        return energy_per_site(s, ham);
      } catch (const Error&) {
        return 1e9;  // annihilated states lose
      }
    };
    const OptResult r = minimize_simplex(objective, prog.total_params, opt);
    PerSizeRecord rec;
    rec.sites = n;
    rec.energy = r.value;
    rec.structural = structural_complexity(prog);
    rec.variational = variational_complexity(prog);
    ind.per_size.push_back(rec);
  }
  ind.fitness = fitness_of(ind.per_size, cfg);
  ind.cls = classify(ind, cfg);
  return ind;
}

std::pair<size_t, size_t> tournament(SearchState& state, const SearchConfig& cfg) {
  const size_t pool_size = state.pool.size();
  if (pool_size < 2) throw Error(Errc::need_more_individuals, "tournament needs a pool of two");
  const size_t contestants =
      std::max<size_t>(2, static_cast<size_t>(std::ceil(cfg.rho * double(pool_size))));

  // partial Fisher-Yates over pool indices
  std::vector<size_t> idx(pool_size);
  for (size_t i = 0; i < pool_size; ++i) idx[i] = i;
  for (size_t i = 0; i < contestants; ++i) {
    std::uniform_int_distribution<size_t> pick(i, pool_size - 1);
    std::swap(idx[i], idx[pick(state.rng)]);
  }
  idx.resize(contestants);

  std::uniform_real_distribution<double> uni(0.0, 1.0);
  if (uni(state.rng) < cfg.epsilon) {
    std::uniform_int_distribution<size_t> pick(0, contestants - 1);
    const size_t a = pick(state.rng);
    size_t b = pick(state.rng);
    while (b == a) b = pick(state.rng);
    return {idx[a], idx[b]};
  }
  auto better = [&](size_t a, size_t b) {
    const auto& ia = state.pool[a];
    const auto& ib = state.pool[b];
    if (ia.fitness != ib.fitness) return ia.fitness < ib.fitness;
    return ia.insertion_order < ib.insertion_order;
  };
  std::sort(idx.begin(), idx.end(), better);
  return {idx[0], idx[1]};
}

// --- genetic operators ------------------------------------------------------

namespace {

const TensorSpec& random_spec(std::mt19937_64& rng, PoolBasis basis, int arity) {
  const auto& pool = pool_specs(basis);
  std::vector<const TensorSpec*> fit;
  for (const auto& s : pool)
    if (s.arity == arity) fit.push_back(&s);
  std::uniform_int_distribution<size_t> pick(0, fit.size() - 1);
  return *fit[pick(rng)];
}

int pick_from(std::mt19937_64& rng, std::initializer_list<int> values) {
  std::uniform_int_distribution<size_t> pick(0, values.size() - 1);
  return *(values.begin() + pick(rng));
}

Primitive random_primitive(std::mt19937_64& rng, PoolBasis basis) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double kind = uni(rng);
  Primitive p;
  if (kind < 0.6) {
    Cycle c;
    c.stride = pick_from(rng, {1, 1, 2, 3});
    c.step = pick_from(rng, {1, 1, 1, 2});
    c.offset = pick_from(rng, {0, 0, 0, 1});
    c.boundary = uni(rng) < 0.9 ? Boundary::periodic : Boundary::open;
    p.variant = c;
    const int arity = uni(rng) < 0.5 ? 1 : 2;
    p.mapping = random_spec(rng, basis, arity);
  } else if (kind < 0.85) {
    Pivot v;
    v.pattern = parse_pattern(uni(rng) < 0.5 ? "1*" : "*1");
    p.variant = v;
    p.mapping = random_spec(rng, basis, 2);
  } else {
    Mask k;
    const double which = uni(rng);
    k.pattern = parse_pattern(which < 0.5 ? "!*" : (which < 0.75 ? "1*" : "*1"));
    p.variant = k;
  }
  return p;
}

std::vector<Primitive*> collect_primitives(Motif& m) {
  std::vector<Primitive*> out;
  auto walk = [&](auto&& self, std::vector<MotifNode>& nodes) -> void {
    for (auto& n : nodes) {
      if (n.is_group)
        self(self, n.children);
      else
        out.push_back(&n.prim);
    }
  };
  walk(walk, m.nodes);
  return out;
}

void edit_property(Primitive& p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  if (auto* c = std::get_if<Cycle>(&p.variant)) {
    switch (static_cast<int>(uni(rng) * 4)) {
      case 0: c->stride = pick_from(rng, {1, 2, 3}); break;
      case 1: c->step = pick_from(rng, {1, 2, 3}); break;
      case 2: c->offset = pick_from(rng, {0, 1, 2}); break;
      default:
        c->boundary = c->boundary == Boundary::periodic ? Boundary::open : Boundary::periodic;
    }
  } else if (auto* v = std::get_if<Pivot>(&p.variant)) {
    v->pattern = parse_pattern(v->pattern.source == "1*" ? "*1" : "1*");
  } else if (auto* k = std::get_if<Mask>(&p.variant)) {
    const double which = uni(rng);
    k->pattern = parse_pattern(which < 0.5 ? "!*" : (which < 0.75 ? "1*" : "*1"));
  }
}

}  // namespace

Motif random_motif(std::mt19937_64& rng, PoolBasis basis, int min_prims, int max_prims) {
  std::uniform_int_distribution<int> count(min_prims, max_prims);
  const int c = count(rng);
  Motif m;
  for (int i = 0; i < c; ++i) {
    MotifNode n;
    n.prim = random_primitive(rng, basis);
    m.nodes.push_back(std::move(n));
  }
  return m;
}

Motif mutate(const Motif& m, std::mt19937_64& rng, PoolBasis basis) {
  Motif out = m;
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  int edit = static_cast<int>(uni(rng) * 4);
  if (edit == 3 && out.nodes.size() <= 1) edit = 0;  // deletion guard

  if (edit == 0) {
    auto prims = collect_primitives(out);
    if (prims.empty()) return out;
    std::uniform_int_distribution<size_t> pick(0, prims.size() - 1);
    edit_property(*prims[pick(rng)], rng);
  } else if (edit == 1) {
    auto prims = collect_primitives(out);
    std::vector<Primitive*> mapped;
    for (auto* p : prims)
      if (p->mapping.has_value() && p->mapping->basis != BasisTag::nested) mapped.push_back(p);
    if (mapped.empty()) {
      if (!prims.empty()) {
        std::uniform_int_distribution<size_t> pick(0, prims.size() - 1);
        edit_property(*prims[pick(rng)], rng);
      }
      return out;
    }
    std::uniform_int_distribution<size_t> pick(0, mapped.size() - 1);
    Primitive* target = mapped[pick(rng)];
    const int arity = target->mapping->arity;
    for (int tries = 0; tries < 8; ++tries) {
      const TensorSpec& repl = random_spec(rng, basis, arity);
      if (!(repl == *target->mapping)) {
        target->mapping = repl;
        break;
      }
    }
  } else if (edit == 2) {
    MotifNode n;
    n.prim = random_primitive(rng, basis);
    std::uniform_int_distribution<size_t> pos(0, out.nodes.size());
    out.nodes.insert(out.nodes.begin() + static_cast<long>(pos(rng)), std::move(n));
  } else {
    std::uniform_int_distribution<size_t> pos(0, out.nodes.size() - 1);
    out.nodes.erase(out.nodes.begin() + static_cast<long>(pos(rng)));
  }
  return out;
}

Motif crossover(const Motif& a, const Motif& b, std::mt19937_64& rng) {
  auto section = [&](const Motif& m) {
    const size_t n = std::max<size_t>(1, m.nodes.size());
    if (m.nodes.empty()) return std::vector<MotifNode>{};
    std::uniform_int_distribution<size_t> lo_pick(0, n - 1);
    const size_t lo = lo_pick(rng);
    std::uniform_int_distribution<size_t> hi_pick(lo + 1, n);
    const size_t hi = hi_pick(rng);
    return std::vector<MotifNode>(m.nodes.begin() + static_cast<long>(lo),
                                  m.nodes.begin() + static_cast<long>(hi));
  };
  Motif out;
  auto sa = section(a);
  auto sb = section(b);
  out.nodes.insert(out.nodes.end(), sa.begin(), sa.end());
  out.nodes.insert(out.nodes.end(), sb.begin(), sb.end());
  return out;
}

// --- classification ---------------------------------------------------------

namespace {

std::vector<std::string> canonical_lines(const std::string& canonical) {
  std::vector<std::string> lines;
  size_t start = 0;
  while (start <= canonical.size()) {
    const size_t nl = canonical.find('\n', start);
    if (nl == std::string::npos) {
      if (start < canonical.size()) lines.push_back(canonical.substr(start));
      break;
    }
    lines.push_back(canonical.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

bool contains_contiguous(const std::vector<std::string>& haystack,
                         const std::vector<std::string>& needle) {
  if (needle.empty() || haystack.size() < needle.size()) return false;
  for (size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
    bool all = true;
    for (size_t j = 0; j < needle.size(); ++j)
      if (haystack[i + j] != needle[j]) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return false;
}

}  // namespace

StructureClass classify(const Individual& ind, const std::vector<double>& reference_structural) {
  if (!ind.evaluated()) throw Error(Errc::not_evaluated, "classify needs an evaluated individual");
  static const std::string white_ref = canonical_serialize(ansatz_original());
  static const std::string red_ref = canonical_serialize(ansatz_mean_field());
  if (ind.canonical == white_ref) return StructureClass::white;
  if (ind.canonical == red_ref) return StructureClass::red;

  constexpr double tol = 1e-9;
  bool all_below = true, all_equal = true, all_above = true;
  for (size_t i = 0; i < ind.per_size.size(); ++i) {
    const double s = ind.per_size[i].structural, ref = reference_structural[i];
    if (!(s < ref - tol)) all_below = false;
    if (std::abs(s - ref) > tol) all_equal = false;
    if (!(s > ref + tol)) all_above = false;
  }
  if (all_below) return StructureClass::green;
  if (all_equal) return StructureClass::blue;
  if (all_above) {
    const auto hay = canonical_lines(ind.canonical);
    const auto needle = canonical_lines(white_ref);
    if (contains_contiguous(hay, needle)) return StructureClass::yellow;
    return StructureClass::pink;
  }
  return StructureClass::pink;
}

StructureClass classify(const Individual& ind, const SearchConfig& cfg) {
  std::vector<double> ref;
  const Motif original = ansatz_original();
  for (int n : cfg.sizes) ref.push_back(structural_complexity(instantiate(original, n)));
  return classify(ind, ref);
}

// --- orchestration ----------------------------------------------------------

namespace {

struct EvalOutcome {
  bool ok = false;
  Individual ind;
};

/// Evaluate all genomes in parallel, then hand results back keyed by queue
/// slot; scheduling order cannot leak into the trajectory.
std::vector<EvalOutcome> evaluate_batch(const std::vector<Motif>& genomes,
                                        const SearchConfig& cfg) {
  std::vector<EvalOutcome> out(genomes.size());
  const int workers = std::max(1, cfg.workers);
  if (workers == 1 || genomes.size() <= 1) {
    for (size_t i = 0; i < genomes.size(); ++i) {
      try {
        out[i].ind = evaluate_individual(genomes[i], cfg);
        out[i].ok = true;
      } catch (const Error&) {
        out[i].ok = false;
        out[i].ind.canonical = canonical_serialize(genomes[i]);
      }
    }
    return out;
  }
  std::atomic<size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= genomes.size()) return;
      try {
        out[i].ind = evaluate_individual(genomes[i], cfg);
        out[i].ok = true;
      } catch (const Error&) {
        out[i].ok = false;
        out[i].ind.canonical = canonical_serialize(genomes[i]);
      }
    }
  };
  std::vector<std::thread> threads;
  for (int t = 0; t < workers; ++t) threads.emplace_back(work);
  for (auto& t : threads) t.join();
  return out;
}

/// Drain the queue through batch evaluation and merge into the pool in
/// canonical-genome order; duplicates only bump multiplicities.
void flush_queue(SearchState& state, const SearchConfig& cfg) {
  std::vector<Motif> fresh;
  std::vector<std::string> fresh_keys;
  std::map<std::string, int> fresh_extra;  // within-batch duplicate counts
  while (!state.queue.empty()) {
    Motif g = std::move(state.queue.front());
    state.queue.pop_front();
    const std::string key = canonical_serialize(g);
    ++state.merged_total;
    if (auto it = state.pool_index.find(key); it != state.pool_index.end()) {
      ++state.pool[it->second].multiplicity;
      continue;
    }
    if (state.culled.count(key)) {
      ++state.culled_hits;
      continue;
    }
    if (auto it = fresh_extra.find(key); it != fresh_extra.end()) {
      ++it->second;
      continue;
    }
    fresh.push_back(std::move(g));
    fresh_keys.push_back(key);
    fresh_extra[key] = 0;
  }
  if (fresh.empty()) return;

  auto outcomes = evaluate_batch(fresh, cfg);
  std::vector<size_t> order(outcomes.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return outcomes[a].ind.canonical < outcomes[b].ind.canonical;
  });
  for (size_t i : order) {
    auto& oc = outcomes[i];
    const int extra = fresh_extra[oc.ind.canonical];
    if (!oc.ok) {
      state.culled.insert(oc.ind.canonical);
      state.culled_hits += 1 + extra;
      continue;
    }
    oc.ind.multiplicity = 1 + extra;
    oc.ind.insertion_order = static_cast<long>(state.pool.size());
    state.pool_index[oc.ind.canonical] = state.pool.size();
    state.pool.push_back(std::move(oc.ind));
    ++state.unique_added;
  }
}

}  // namespace

SearchState init_search(const SearchConfig& cfg) {
  SearchState state;
  state.rng.seed(cfg.seed);
  int guard = 0;
  while (static_cast<int>(state.pool.size()) < cfg.pool_seed_count) {
    if (++guard > 200 * cfg.pool_seed_count)
      throw Error(Errc::need_more_individuals, "could not seed a valid initial pool");
    state.queue.push_back(random_motif(state.rng, cfg.operator_basis));
    flush_queue(state, cfg);
  }
  state.unique_added = 0;  // seeding does not count toward steps
  return state;
}

void search_step(SearchState& state, const SearchConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const int target = state.step_count + 1;
  while (state.unique_added / 10 < target) {
    const auto [a, b] = tournament(state, cfg);
    state.queue.push_back(mutate(state.pool[a].genome, state.rng, cfg.operator_basis));
    state.queue.push_back(mutate(state.pool[b].genome, state.rng, cfg.operator_basis));
    state.queue.push_back(crossover(state.pool[a].genome, state.pool[b].genome, state.rng));
    flush_queue(state, cfg);
  }
  state.step_count = static_cast<int>(state.unique_added / 10);

  const Individual* best = nullptr;
  for (const auto& ind : state.pool)
    if (!best || ind.fitness < best->fitness ||
        (ind.fitness == best->fitness && ind.insertion_order < best->insertion_order))
      best = &ind;
  StepRecord rec;
  rec.step = state.step_count;
  rec.best_fitness = best->fitness;
  rec.best_class = best->cls;
  rec.pool_unique = static_cast<long>(state.pool.size());
  rec.wallclock_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  state.log.push_back(rec);
}

SearchState run_search(const SearchConfig& cfg) {
  SearchState state = init_search(cfg);
  while (state.step_count < cfg.budget_steps) search_step(state, cfg);
  return state;
}

}  // namespace motifsearch

#include "motifsearch/network.hpp"

#include <algorithm>

#include "motifsearch/errors.hpp"

namespace motifsearch {

std::vector<std::vector<int>> cycle_edges(int n_active, int arity, int stride, int step,
                                          int offset, Boundary boundary) {
  if (n_active < arity) throw Error(Errc::too_few_sites, "cycle needs at least arity sites");
  std::vector<std::vector<int>> edges;
  const int count = n_active / step;
  for (int m = 0; m < count; ++m) {
    const int start = offset + m * step;
    std::vector<int> tuple(static_cast<size_t>(arity));
    bool in_range = true;
    for (int leg = 0; leg < arity; ++leg) {
      const int raw = start + leg * stride;
      if (boundary == Boundary::periodic) {
        tuple[static_cast<size_t>(leg)] = raw % n_active;
      } else {
        if (raw > n_active - 1) {
          in_range = false;
          break;
        }
        tuple[static_cast<size_t>(leg)] = raw;
      }
    }
    if (!in_range) continue;
    // periodic wrap can fold distinct legs onto one site when arity*stride
    // overshoots a small ring; such degenerate tuples are dropped
    bool distinct = true;
    for (size_t i = 0; i < tuple.size() && distinct; ++i)
      for (size_t j = i + 1; j < tuple.size(); ++j)
        if (tuple[i] == tuple[j]) {
          distinct = false;
          break;
        }
    if (distinct) edges.push_back(std::move(tuple));
  }
  return edges;
}

std::vector<std::vector<int>> pivot_edges(const Pattern& pattern, int n_active, int arity) {
  if (arity != 2) throw Error(Errc::too_few_sites, "pivot mappings must touch two sites");
  if (n_active < 2) throw Error(Errc::too_few_sites, "pivot needs at least two sites");
  const auto bits = pattern.resolve(n_active);
  int pivot = -1;
  int selected = 0;
  for (int i = 0; i < n_active; ++i) {
    if (bits[static_cast<size_t>(i)]) {
      ++selected;
      pivot = i;
    }
  }
  if (selected == 0) throw Error(Errc::empty_pivot, "pattern selects no pivot site");
  if (selected > 1) throw Error(Errc::empty_pivot, "pattern selects more than one pivot site");
  std::vector<std::vector<int>> edges;
  for (int j = 0; j < n_active; ++j)
    if (j != pivot) edges.push_back({pivot, j});
  return edges;
}

std::vector<int> apply_mask(const Pattern& pattern, const std::vector<int>& active) {
  const int k = static_cast<int>(active.size());
  const auto bits = pattern.resolve(k);
  std::vector<int> kept;
  for (int i = 0; i < k; ++i) {
    const bool selected = bits[static_cast<size_t>(i)];
    const bool keep = pattern.kind == PatternKind::select ? selected : !selected;
    if (keep) kept.push_back(active[static_cast<size_t>(i)]);
  }
  return kept;
}

NetworkProgram instantiate(const Motif& m, int n) {
  if (n < 1) throw Error(Errc::too_few_sites, "need at least one site");
  const auto prims = flatten(m);

  NetworkProgram prog;
  prog.sites = n;
  std::vector<int> active(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) active[static_cast<size_t>(i)] = i;

  auto tensor_bearing_after = [&](size_t idx) {
    for (size_t j = idx + 1; j < prims.size(); ++j)
      if (prims[j].mapping.has_value()) return true;
    return false;
  };

  int next_slot = 0;
  for (size_t pi = 0; pi < prims.size(); ++pi) {
    const Primitive& p = prims[pi];
    if (std::holds_alternative<Init>(p.variant)) {
      prog.active_trace.push_back(active);
      continue;
    }
    if (const auto* mask = std::get_if<Mask>(&p.variant)) {
      active = apply_mask(mask->pattern, active);
      if (active.empty() && tensor_bearing_after(pi))
        throw Error(Errc::all_sites_masked, "mask removed every site with tensors still pending");
      prog.active_trace.push_back(active);
      continue;
    }

    const TensorSpec& spec = *p.mapping;
    std::vector<std::vector<int>> edges;
    if (const auto* c = std::get_if<Cycle>(&p.variant)) {
      edges = cycle_edges(static_cast<int>(active.size()), spec.arity, c->stride, c->step,
                          c->offset, c->boundary);
    } else {
      edges = pivot_edges(std::get<Pivot>(p.variant).pattern, static_cast<int>(active.size()),
                          spec.arity);
    }

    int shared_begin = -1;
    for (const auto& e : edges) {
      ProgramStep step;
      step.tensor = spec;
      step.sites.reserve(e.size());
      for (int local : e) step.sites.push_back(active[static_cast<size_t>(local)]);
      if (p.shared_weights) {
        if (shared_begin < 0) {
          shared_begin = next_slot;
          next_slot += spec.param_slots;
        }
        step.slot_begin = shared_begin;
      } else {
        step.slot_begin = next_slot;
        next_slot += spec.param_slots;
      }
      step.slot_count = spec.param_slots;
      prog.steps.push_back(std::move(step));
    }
    prog.active_trace.push_back(active);
  }
  prog.total_params = next_slot;
  return prog;
}

TensorSpec promote(const Motif& network, int sub_sites, const std::string& name) {
  const NetworkProgram probe = instantiate(network, sub_sites);  // throws on failure
  TensorSpec spec;
  spec.id = name.empty() ? "net" : name;
  spec.arity = sub_sites;
  spec.param_slots = probe.total_params;
  spec.basis = BasisTag::nested;
  spec.network = std::make_shared<Motif>(network);
  spec.sub_sites = sub_sites;
  return spec;
}

double structural_complexity(const NetworkProgram& prog) {
  double rank_sum = 0;
  for (const auto& s : prog.steps) rank_sum += 2.0 * s.tensor.arity;
  return rank_sum / (2.0 * prog.sites);
}

int variational_complexity(const NetworkProgram& prog) { return prog.total_params; }

}  // namespace motifsearch

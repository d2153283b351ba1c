#pragma once

#include <vector>

#include "motifsearch/motif.hpp"

namespace motifsearch {

/// One tensor application: which spec, which physical sites (tuple length ==
/// arity), and which slice of the parameter vector feeds it.
struct ProgramStep {
  TensorSpec tensor;
  std::vector<int> sites;
  int slot_begin = 0;
  int slot_count = 0;
};

/// A motif made concrete for n sites: the ordered tensor applications plus the
/// active-site trace recorded as masks fire.
struct NetworkProgram {
  int sites = 0;
  std::vector<ProgramStep> steps;
  int total_params = 0;
  std::vector<std::vector<int>> active_trace;  // active set after each primitive
};

/// Site tuples for a strided cycle over n_active re-indexed sites. Emits
/// floor(n_active/step) tuples starting at `offset`, spaced `step`; periodic
/// boundaries wrap indices mod n_active, open boundaries drop any tuple whose
/// raw index runs past the last site.
std::vector<std::vector<int>> cycle_edges(int n_active, int arity, int stride, int step,
                                          int offset, Boundary boundary);

/// (pivot, j) tuples from the single pattern-selected site to every other
/// active site, j increasing.
std::vector<std::vector<int>> pivot_edges(const Pattern& pattern, int n_active, int arity);

/// Sites kept after a mask fires; order preserved.
std::vector<int> apply_mask(const Pattern& pattern, const std::vector<int>& active);

NetworkProgram instantiate(const Motif& m, int n);

/// Promote an instantiable sub-network into a tensor usable as a mapping.
TensorSpec promote(const Motif& network, int sub_sites, const std::string& name);

/// Sum of tensor ranks (2 x arity per generated edge) over 2n.
double structural_complexity(const NetworkProgram& prog);
/// Number of independent parameter slots.
int variational_complexity(const NetworkProgram& prog);

}  // namespace motifsearch

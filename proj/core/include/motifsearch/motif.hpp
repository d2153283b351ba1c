#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "motifsearch/pattern.hpp"

namespace motifsearch {

struct Motif;

enum class BasisTag { pauli_exponential, ladder, nested };

/// A symbolic tensor: its identity, how many physical sites it touches, and
/// how many real parameters its concrete matrix takes. Pool tensors are
/// resolved by id; promoted sub-networks carry their motif payload.
struct TensorSpec {
  std::string id;
  int arity = 1;
  int param_slots = 1;
  BasisTag basis = BasisTag::pauli_exponential;
  std::shared_ptr<const Motif> network;  // nested payload, basis == nested only
  int sub_sites = 0;

  bool operator==(const TensorSpec& o) const;
};

/// Concrete 2^arity x 2^arity matrix for a spec at the given parameter values.
/// Gate leg 0 maps to the most significant bit of the matrix index.
Eigen::MatrixXcd tensor_matrix(const TensorSpec& spec, std::span<const double> params);

enum class Boundary { periodic, open };

struct Cycle {
  int stride = 1;
  int step = 1;
  int offset = 0;
  Boundary boundary = Boundary::periodic;
};
struct Pivot {
  Pattern pattern;
};
struct Mask {
  Pattern pattern;
};
struct Init {
  int sites = 0;
};

struct Primitive {
  std::variant<Cycle, Pivot, Mask, Init> variant;
  std::optional<TensorSpec> mapping;  // Cycle/Pivot only
  bool shared_weights = true;         // one slot range for all generated edges
};

/// A size-independent genome: an ordered tree whose leaves are primitives.
/// Sequencing is the only composition; nested groups are semantically the
/// same as their inlined children (canonical form flattens them).
struct MotifNode {
  bool is_group = false;
  Primitive prim;                   // valid when !is_group
  std::vector<MotifNode> children;  // valid when is_group
};

struct Motif {
  std::vector<MotifNode> nodes;
  std::string name;

  static Motif of(std::vector<Primitive> prims) {
    Motif m;
    for (auto& p : prims) {
      MotifNode n;
      n.prim = std::move(p);
      m.nodes.push_back(std::move(n));
    }
    return m;
  }
};

/// Sequence two motifs; associative up to canonical flattening.
Motif compose(const Motif& a, const Motif& b);

/// Structure-preserving text form (nested groups bracketed), one node per line.
std::string serialize_motif(const Motif& m);
/// Flattened text form; equal canonical forms identify equal genomes.
std::string canonical_serialize(const Motif& m);
/// Flat list of the primitives in tree order.
std::vector<Primitive> flatten(const Motif& m);

Motif parse_motif(const std::string& text);

bool motifs_equal(const Motif& a, const Motif& b);  // canonical-form equality

// --- operator pools -------------------------------------------------------

enum class PoolBasis { pauli, ladder };

/// All pool tensors for a basis. The pauli pool holds the single-site
/// rotations rX/rY/rZ, the two-site exponentials eXX..eZZ and the fused
/// rotate-then-couple blocks bXX..bZZ; the ladder pool holds lM/lD and
/// lZZ/lHop built from {I, raise, lower, Z}.
const std::vector<TensorSpec>& pool_specs(PoolBasis basis);

/// Look up a builtin pool tensor by id (nullptr if unknown).
const TensorSpec* find_pool_spec(const std::string& id);

// --- named ansatz genomes ---------------------------------------------------

Motif ansatz_original();       // rY cycle then fused bZY cycle; 2 parameters
Motif ansatz_mean_field();     // single rY cycle
Motif ansatz_xy_competitor();  // eXY cycle then rY cycle
Motif ansatz_ladder();         // lM cycle then lZZ cycle; 2 parameters

}  // namespace motifsearch

#include "motifsearch/motif.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <sstream>

#include "motifsearch/errors.hpp"
#include "motifsearch/network.hpp"
#include "motifsearch/statevector.hpp"

namespace motifsearch {

namespace {

using Complex = std::complex<double>;
using Eigen::Matrix2cd;
using Eigen::MatrixXcd;

Matrix2cd pauli(char axis) {
  Matrix2cd m;
  switch (axis) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw Error(Errc::parse_error, std::string("unknown pauli axis '") + axis + "'");
  }
  return m;
}

MatrixXcd kron2(const Matrix2cd& a, const Matrix2cd& b) {
  MatrixXcd out(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block(2 * i, 2 * j, 2, 2) = a(i, j) * b;
  return out;
}

Matrix2cd rotation(char axis, double alpha) {
  // exp(-i alpha/2 sigma)
  return std::cos(alpha / 2) * Matrix2cd::Identity() -
         Complex(0, 1) * std::sin(alpha / 2) * pauli(axis);
}

MatrixXcd pair_exponential(char a0, char a1, double alpha) {
  // exp(+i alpha/2 sigma (x) sigma'); the product squares to identity
  return std::cos(alpha / 2) * MatrixXcd::Identity(4, 4) +
         Complex(0, 1) * std::sin(alpha / 2) * kron2(pauli(a0), pauli(a1));
}

MatrixXcd fused_block(char a0, char a1, double alpha) {
  // couple after rotating the second leg with the same angle
  return pair_exponential(a0, a1, alpha) * kron2(Matrix2cd::Identity(), rotation(a1, alpha));
}

MatrixXcd ladder_matrix(const std::string& id, std::span<const double> p) {
  if (id == "lM") {
    Matrix2cd m;
    m << 1, 1, p[0], -p[0];
    return m / std::sqrt(2.0);
  }
  if (id == "lD") {
    Matrix2cd m;
    m << 1, 0, 0, p[0];
    return m;
  }
  if (id == "lZZ") {
    MatrixXcd m = MatrixXcd::Zero(4, 4);
    const double e = std::exp(p[0]), einv = std::exp(-p[0]);
    m(0, 0) = e;
    m(1, 1) = einv;
    m(2, 2) = einv;
    m(3, 3) = e;
    return m;
  }
  if (id == "lHop") {
    // exp(b (raise (x) lower + lower (x) raise)): cosh/sinh block on {|01>,|10>}
    MatrixXcd m = MatrixXcd::Identity(4, 4);
    m(1, 1) = std::cosh(p[0]);
    m(2, 2) = std::cosh(p[0]);
    m(1, 2) = std::sinh(p[0]);
    m(2, 1) = std::sinh(p[0]);
    return m;
  }
  throw Error(Errc::parse_error, "unknown ladder tensor '" + id + "'");
}

std::vector<TensorSpec> make_pauli_pool() {
  std::vector<TensorSpec> pool;
  for (char a : {'X', 'Y', 'Z'})
    pool.push_back({std::string("r") + a, 1, 1, BasisTag::pauli_exponential, nullptr, 0});
  for (char a : {'X', 'Y', 'Z'})
    for (char b : {'X', 'Y', 'Z'})
      pool.push_back({std::string("e") + a + b, 2, 1, BasisTag::pauli_exponential, nullptr, 0});
  for (char a : {'X', 'Y', 'Z'})
    for (char b : {'X', 'Y', 'Z'})
      pool.push_back({std::string("b") + a + b, 2, 1, BasisTag::pauli_exponential, nullptr, 0});
  return pool;
}

std::vector<TensorSpec> make_ladder_pool() {
  return {
      {"lM", 1, 1, BasisTag::ladder, nullptr, 0},
      {"lD", 1, 1, BasisTag::ladder, nullptr, 0},
      {"lZZ", 2, 1, BasisTag::ladder, nullptr, 0},
      {"lHop", 2, 1, BasisTag::ladder, nullptr, 0},
  };
}

}  // namespace

bool TensorSpec::operator==(const TensorSpec& o) const {
  if (id != o.id || arity != o.arity || param_slots != o.param_slots || basis != o.basis)
    return false;
  if (basis != BasisTag::nested) return true;
  if (sub_sites != o.sub_sites) return false;
  if (!network || !o.network) return network == o.network;
  return canonical_serialize(*network) == canonical_serialize(*o.network);
}

Eigen::MatrixXcd tensor_matrix(const TensorSpec& spec, std::span<const double> params) {
  if (static_cast<int>(params.size()) != spec.param_slots)
    throw Error(Errc::size_limit, "parameter count mismatch for tensor '" + spec.id + "'");
  switch (spec.basis) {
    case BasisTag::pauli_exponential: {
      if (spec.id.size() == 2 && spec.id[0] == 'r') return rotation(spec.id[1], params[0]);
      if (spec.id.size() == 3 && spec.id[0] == 'e')
        return pair_exponential(spec.id[1], spec.id[2], params[0]);
      if (spec.id.size() == 3 && spec.id[0] == 'b')
        return fused_block(spec.id[1], spec.id[2], params[0]);
      throw Error(Errc::parse_error, "unknown pauli tensor '" + spec.id + "'");
    }
    case BasisTag::ladder:
      return ladder_matrix(spec.id, params);
    case BasisTag::nested: {
      // contract the sub-network into a dense operator, column by column
      const NetworkProgram sub = instantiate(*spec.network, spec.sub_sites);
      const int64_t dim = int64_t{1} << spec.sub_sites;
      MatrixXcd out(dim, dim);
      std::vector<double> p(params.begin(), params.end());
      for (int64_t col = 0; col < dim; ++col) {
        StateVector s;
        s.sites = spec.sub_sites;
        s.amps = Eigen::VectorXcd::Zero(dim);
        // the sub-network's leg m is the promoted tensor's leg m
        int64_t idx = 0;
        for (int m = 0; m < spec.sub_sites; ++m)
          if ((col >> (spec.sub_sites - 1 - m)) & 1) idx |= int64_t{1} << m;
        s.amps[idx] = 1.0;
        for (const auto& step : sub.steps) {
          const auto m = tensor_matrix(step.tensor,
                                       std::span<const double>(p).subspan(
                                           static_cast<size_t>(step.slot_begin),
                                           static_cast<size_t>(step.slot_count)));
          apply_tensor(s, m, step.sites);
        }
        for (int64_t row = 0; row < dim; ++row) {
          int64_t ridx = 0;
          for (int m = 0; m < spec.sub_sites; ++m)
            if ((row >> (spec.sub_sites - 1 - m)) & 1) ridx |= int64_t{1} << m;
          out(row, col) = s.amps[ridx];
        }
      }
      return out;
    }
  }
  throw Error(Errc::parse_error, "bad basis tag");
}

Motif compose(const Motif& a, const Motif& b) {
  Motif out;
  MotifNode na;
  na.is_group = true;
  na.children = a.nodes;
  MotifNode nb;
  nb.is_group = true;
  nb.children = b.nodes;
  out.nodes.push_back(std::move(na));
  out.nodes.push_back(std::move(nb));
  return out;
}

// --- serialization ----------------------------------------------------------

namespace {

std::string serialize_spec(const TensorSpec& s) {
  if (s.basis != BasisTag::nested) return s.id;
  std::string inner;
  auto prims = flatten(*s.network);
  Motif flat = Motif::of(prims);
  std::string lines = serialize_motif(flat);
  for (char c : lines) inner += (c == '\n') ? ';' : c;
  return "net(" + std::to_string(s.sub_sites) + "){" + inner + "}";
}

std::string serialize_primitive(const Primitive& p) {
  std::ostringstream os;
  if (const auto* c = std::get_if<Cycle>(&p.variant)) {
    os << "cycle(stride=" << c->stride << ",step=" << c->step << ",offset=" << c->offset
       << ",boundary=" << (c->boundary == Boundary::periodic ? "periodic" : "open")
       << ",map=" << serialize_spec(*p.mapping);
    if (!p.shared_weights) os << ",share=off";
    os << ")";
  } else if (const auto* v = std::get_if<Pivot>(&p.variant)) {
    os << "pivot(pattern=" << v->pattern.source << ",map=" << serialize_spec(*p.mapping);
    if (!p.shared_weights) os << ",share=off";
    os << ")";
  } else if (const auto* m = std::get_if<Mask>(&p.variant)) {
    os << "mask(pattern=" << m->pattern.source << ")";
  } else {
    os << "init(n=" << std::get<Init>(p.variant).sites << ")";
  }
  return os.str();
}

void serialize_nodes(const std::vector<MotifNode>& nodes, std::vector<std::string>& lines) {
  for (const auto& n : nodes) {
    if (n.is_group) {
      lines.push_back("[");
      serialize_nodes(n.children, lines);
      lines.push_back("]");
    } else {
      lines.push_back(serialize_primitive(n.prim));
    }
  }
}

void flatten_into(const std::vector<MotifNode>& nodes, std::vector<Primitive>& out) {
  for (const auto& n : nodes) {
    if (n.is_group)
      flatten_into(n.children, out);
    else
      out.push_back(n.prim);
  }
}

}  // namespace

std::string serialize_motif(const Motif& m) {
  std::vector<std::string> lines;
  serialize_nodes(m.nodes, lines);
  std::string out;
  for (size_t i = 0; i < lines.size(); ++i) {
    out += lines[i];
    if (i + 1 < lines.size()) out += '\n';
  }
  return out;
}

std::vector<Primitive> flatten(const Motif& m) {
  std::vector<Primitive> out;
  flatten_into(m.nodes, out);
  return out;
}

std::string canonical_serialize(const Motif& m) {
  return serialize_motif(Motif::of(flatten(m)));
}

bool motifs_equal(const Motif& a, const Motif& b) {
  return canonical_serialize(a) == canonical_serialize(b);
}

// --- parsing ----------------------------------------------------------------

namespace {

// key=value arguments; the map value may itself contain (){} groups
std::map<std::string, std::string> parse_args(const std::string& body, const std::string& ctx) {
  std::map<std::string, std::string> args;
  size_t i = 0;
  while (i < body.size()) {
    size_t eq = body.find('=', i);
    if (eq == std::string::npos) throw Error(Errc::parse_error, "expected key=value in " + ctx);
    std::string key = body.substr(i, eq - i);
    size_t j = eq + 1;
    int depth = 0;
    while (j < body.size() && (depth > 0 || body[j] != ',')) {
      if (body[j] == '(' || body[j] == '{') ++depth;
      if (body[j] == ')' || body[j] == '}') --depth;
      ++j;
    }
    args[key] = body.substr(eq + 1, j - (eq + 1));
    i = (j < body.size()) ? j + 1 : j;
  }
  return args;
}

int parse_int(const std::map<std::string, std::string>& args, const std::string& key,
              const std::string& ctx) {
  auto it = args.find(key);
  if (it == args.end()) throw Error(Errc::parse_error, "missing '" + key + "' in " + ctx);
  try {
    return std::stoi(it->second);
  } catch (const std::exception&) {
    throw Error(Errc::parse_error, "bad integer for '" + key + "' in " + ctx);
  }
}

TensorSpec parse_spec(const std::string& text);

Primitive parse_primitive(const std::string& line) {
  const size_t open = line.find('(');
  if (open == std::string::npos || line.back() != ')')
    throw Error(Errc::parse_error, "bad primitive '" + line + "'");
  const std::string head = line.substr(0, open);
  const std::string body = line.substr(open + 1, line.size() - open - 2);
  const auto args = parse_args(body, head);

  Primitive p;
  if (auto it = args.find("share"); it != args.end() && it->second == "off")
    p.shared_weights = false;

  if (head == "cycle") {
    Cycle c;
    c.stride = parse_int(args, "stride", head);
    c.step = parse_int(args, "step", head);
    c.offset = parse_int(args, "offset", head);
    auto b = args.find("boundary");
    if (b == args.end()) throw Error(Errc::parse_error, "missing boundary");
    if (b->second == "periodic")
      c.boundary = Boundary::periodic;
    else if (b->second == "open")
      c.boundary = Boundary::open;
    else
      throw Error(Errc::parse_error, "bad boundary '" + b->second + "'");
    if (c.stride < 1 || c.step < 1 || c.offset < 0)
      throw Error(Errc::parse_error, "cycle parameters out of range in '" + line + "'");
    p.variant = c;
    auto m = args.find("map");
    if (m == args.end()) throw Error(Errc::parse_error, "cycle needs a mapping");
    p.mapping = parse_spec(m->second);
  } else if (head == "pivot") {
    Pivot v;
    auto pat = args.find("pattern");
    if (pat == args.end()) throw Error(Errc::parse_error, "pivot needs a pattern");
    v.pattern = parse_pattern(pat->second);
    p.variant = v;
    auto m = args.find("map");
    if (m == args.end()) throw Error(Errc::parse_error, "pivot needs a mapping");
    p.mapping = parse_spec(m->second);
  } else if (head == "mask") {
    Mask k;
    auto pat = args.find("pattern");
    if (pat == args.end()) throw Error(Errc::parse_error, "mask needs a pattern");
    k.pattern = parse_pattern(pat->second);
    p.variant = k;
  } else if (head == "init") {
    Init ini;
    ini.sites = parse_int(args, "n", head);
    p.variant = ini;
  } else {
    throw Error(Errc::parse_error, "unknown primitive '" + head + "'");
  }
  return p;
}

TensorSpec parse_spec(const std::string& text) {
  if (text.rfind("net(", 0) == 0) {
    const size_t close = text.find(')');
    const size_t brace = text.find('{');
    if (close == std::string::npos || brace == std::string::npos || text.back() != '}')
      throw Error(Errc::parse_error, "bad nested spec '" + text + "'");
    const int sub_sites = std::stoi(text.substr(4, close - 4));
    std::string inner = text.substr(brace + 1, text.size() - brace - 2);
    for (char& c : inner)
      if (c == ';') c = '\n';
    auto sub = std::make_shared<Motif>(parse_motif(inner));
    TensorSpec s;
    s.id = "net";
    s.arity = sub_sites;
    s.basis = BasisTag::nested;
    s.network = sub;
    s.sub_sites = sub_sites;
    s.param_slots = instantiate(*sub, sub_sites).total_params;
    return s;
  }
  const TensorSpec* found = find_pool_spec(text);
  if (!found) throw Error(Errc::parse_error, "unknown tensor id '" + text + "'");
  return *found;
}

}  // namespace

Motif parse_motif(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) {
    // trim
    const auto a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    const auto b = line.find_last_not_of(" \t\r");
    lines.push_back(line.substr(a, b - a + 1));
  }
  size_t pos = 0;
  // recursive group parser
  auto parse_nodes = [&](auto&& self, bool in_group) -> std::vector<MotifNode> {
    std::vector<MotifNode> nodes;
    while (pos < lines.size()) {
      if (lines[pos] == "]") {
        if (!in_group) throw Error(Errc::parse_error, "unbalanced ']'");
        ++pos;
        return nodes;
      }
      if (lines[pos] == "[") {
        ++pos;
        MotifNode g;
        g.is_group = true;
        g.children = self(self, true);
        nodes.push_back(std::move(g));
      } else {
        MotifNode n;
        n.prim = parse_primitive(lines[pos]);
        nodes.push_back(std::move(n));
        ++pos;
      }
    }
    if (in_group) throw Error(Errc::parse_error, "missing ']'");
    return nodes;
  };
  Motif m;
  m.nodes = parse_nodes(parse_nodes, false);
  return m;
}

// --- pools and named ansatzes -----------------------------------------------

const std::vector<TensorSpec>& pool_specs(PoolBasis basis) {
  static const std::vector<TensorSpec> pauli = make_pauli_pool();
  static const std::vector<TensorSpec> ladder = make_ladder_pool();
  return basis == PoolBasis::pauli ? pauli : ladder;
}

const TensorSpec* find_pool_spec(const std::string& id) {
  for (auto b : {PoolBasis::pauli, PoolBasis::ladder})
    for (const auto& s : pool_specs(b))
      if (s.id == id) return &s;
  return nullptr;
}

namespace {

Primitive plain_cycle(const std::string& map_id) {
  Primitive p;
  p.variant = Cycle{};
  p.mapping = *find_pool_spec(map_id);
  return p;
}

}  // namespace

Motif ansatz_original() { return Motif::of({plain_cycle("rY"), plain_cycle("bZY")}); }
Motif ansatz_mean_field() { return Motif::of({plain_cycle("rY")}); }
Motif ansatz_xy_competitor() { return Motif::of({plain_cycle("eXY"), plain_cycle("rY")}); }
Motif ansatz_ladder() { return Motif::of({plain_cycle("lM"), plain_cycle("lZZ")}); }

}  // namespace motifsearch

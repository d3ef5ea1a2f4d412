#include "grpdouble/group.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <memory>
#include <numeric>
#include <random>
#include <sstream>

#include <json.hpp>

#include "grpdouble/error.hpp"

namespace grpdouble {

std::string AxiomReport::first_failure() const {
  if (!closure.pass) return "closure";
  if (!identity.pass) return "identity";
  if (!inverses.pass) return "inverses";
  if (!associativity.pass) return "associativity";
  return {};
}

AxiomReport verify_group_axioms(const CayleyTable& t, const AxiomOptions& options) {
  AxiomReport report;
  const std::uint64_t n = t.order;
  if (n == 0 || t.entries.size() != n * n) {
    report.closure.pass = false;
    report.identity.pass = report.inverses.pass = report.associativity.pass = false;
    return report;
  }
  auto at = [&](Element a, Element b) { return t.entries[a * n + b]; };

  for (Element a = 0; a < n && report.closure.pass; ++a) {
    for (Element b = 0; b < n; ++b) {
      if (at(a, b) >= n) {
        report.closure = {false, std::array<Element, 3>{a, b, 0}};
        break;
      }
    }
  }
  if (!report.closure.pass) {
    // Remaining axioms cannot be evaluated on an open table.
    report.identity.pass = report.inverses.pass = report.associativity.pass = false;
    return report;
  }

  const Element e = t.identity;
  if (e >= n) {
    report.identity.pass = false;
  } else {
    for (Element a = 0; a < n; ++a) {
      if (at(e, a) != a || at(a, e) != a) {
        report.identity = {false, std::array<Element, 3>{a, 0, 0}};
        break;
      }
    }
  }

  if (!report.identity.pass) {
    report.inverses.pass = false;
  } else {
    for (Element a = 0; a < n; ++a) {
      bool found = false;
      for (Element b = 0; b < n; ++b) {
        if (at(a, b) == e && at(b, a) == e) {
          found = true;
          break;
        }
      }
      if (!found) {
        report.inverses = {false, std::array<Element, 3>{a, 0, 0}};
        break;
      }
    }
  }

  auto check_triple = [&](Element a, Element b, Element c) {
    if (at(at(a, b), c) != at(a, at(b, c))) {
      report.associativity = {false, std::array<Element, 3>{a, b, c}};
      return false;
    }
    return true;
  };
  if (n <= options.exhaustive_max_order) {
    report.associativity_exhaustive = true;
    report.associativity_triples = n * n * n;
    for (Element a = 0; a < n; ++a) {
      for (Element b = 0; b < n; ++b) {
        for (Element c = 0; c < n; ++c) {
          if (!check_triple(a, b, c)) return report;
        }
      }
    }
  } else {
    report.associativity_exhaustive = false;
    report.associativity_triples = options.sampled_triples;
    std::mt19937_64 rng(options.seed);
    for (std::uint64_t i = 0; i < options.sampled_triples; ++i) {
      const auto a = static_cast<Element>(rng() % n);
      const auto b = static_cast<Element>(rng() % n);
      const auto c = static_cast<Element>(rng() % n);
      if (!check_triple(a, b, c)) return report;
    }
  }
  return report;
}

Group Group::from_table(CayleyTable table, std::string label, const AxiomOptions& options) {
  const AxiomReport report = verify_group_axioms(table, options);
  if (!report.ok()) {
    std::string msg = "table '" + label + "' fails group axiom: " + report.first_failure();
    const AxiomCheck* failed[] = {&report.closure, &report.identity, &report.inverses,
                                  &report.associativity};
    for (const AxiomCheck* c : failed) {
      if (!c->pass && c->witness) {
        const auto& w = *c->witness;
        msg += " at (" + std::to_string(w[0]) + "," + std::to_string(w[1]) + "," +
               std::to_string(w[2]) + ")";
        break;
      }
    }
    throw AxiomError(msg);
  }

  Group g;
  g.order_ = table.order;
  g.identity_ = table.identity;
  g.label_ = std::move(label);
  g.table_ = std::move(table.entries);
  g.inv_table_.assign(g.order_, 0);
  for (Element a = 0; a < g.order_; ++a) {
    const auto r = g.row(a);
    g.inv_table_[a] = static_cast<Element>(std::find(r.begin(), r.end(), g.identity_) - r.begin());
  }
  g.abelian_ = true;
  for (Element a = 0; a < g.order_ && g.abelian_; ++a) {
    for (Element b = a + 1; b < g.order_; ++b) {
      if (g.mul_unchecked(a, b) != g.mul_unchecked(b, a)) {
        g.abelian_ = false;
        break;
      }
    }
  }
  g.build_translation_tables();
  return g;
}

void Group::build_translation_tables() {
  if (order_ > 64) return;
  byte_count_ = (order_ + 7) / 8;
  left_bytes_.assign(static_cast<std::size_t>(order_) * byte_count_ * 256, 0);
  right_bytes_.assign(left_bytes_.size(), 0);
  for (Element a = 0; a < order_; ++a) {
    for (std::uint32_t k = 0; k < byte_count_; ++k) {
      std::uint64_t* left = &left_bytes_[(static_cast<std::size_t>(a) * byte_count_ + k) * 256];
      std::uint64_t* right = &right_bytes_[(static_cast<std::size_t>(a) * byte_count_ + k) * 256];
      for (std::uint32_t v = 1; v < 256; ++v) {
        const std::uint32_t low = static_cast<std::uint32_t>(std::countr_zero(v));
        const Element b = 8 * k + low;
        const std::uint32_t rest = v & (v - 1);
        left[v] = left[rest];
        right[v] = right[rest];
        if (b < order_) {
          left[v] |= std::uint64_t{1} << mul_unchecked(a, b);
          right[v] |= std::uint64_t{1} << mul_unchecked(b, a);
        }
      }
    }
  }
}

namespace {

inline void translate_bits(const Group& g, Element a, const std::uint64_t* in, std::uint64_t* out,
                           bool left) {
  const std::size_t words = g.word_count();
  for (std::size_t i = 0; i < words; ++i) {
    std::uint64_t w = in[i];
    while (w != 0) {
      const Element b = static_cast<Element>(i * 64 + std::countr_zero(w));
      w &= w - 1;
      const Element p = left ? g.mul_unchecked(a, b) : g.mul_unchecked(b, a);
      out[p >> 6] |= std::uint64_t{1} << (p & 63);
    }
  }
}

}  // namespace

void Group::left_translate_or(Element a, const std::uint64_t* in, std::uint64_t* out) const noexcept {
  if (!left_bytes_.empty()) {
    const std::uint64_t w = in[0];
    const std::uint64_t* base = &left_bytes_[static_cast<std::size_t>(a) * byte_count_ * 256];
    std::uint64_t acc = 0;
    for (std::uint32_t k = 0; k < byte_count_; ++k) {
      acc |= base[k * 256 + ((w >> (8 * k)) & 0xff)];
    }
    out[0] |= acc;
    return;
  }
  translate_bits(*this, a, in, out, true);
}

void Group::right_translate_or(Element a, const std::uint64_t* in, std::uint64_t* out) const noexcept {
  if (!right_bytes_.empty()) {
    const std::uint64_t w = in[0];
    const std::uint64_t* base = &right_bytes_[static_cast<std::size_t>(a) * byte_count_ * 256];
    std::uint64_t acc = 0;
    for (std::uint32_t k = 0; k < byte_count_; ++k) {
      acc |= base[k * 256 + ((w >> (8 * k)) & 0xff)];
    }
    out[0] |= acc;
    return;
  }
  translate_bits(*this, a, in, out, false);
}

Element Group::mul(Element a, Element b) const {
  if (a >= order_ || b >= order_) {
    throw std::out_of_range("mul: element index out of range for " + label_);
  }
  return mul_unchecked(a, b);
}

Element Group::inv(Element a) const {
  if (a >= order_) {
    throw std::out_of_range("inv: element index out of range for " + label_);
  }
  return inv_table_[a];
}

CayleyTable Group::table() const { return CayleyTable{order_, identity_, table_}; }

std::uint64_t Group::element_order(Element a) const {
  if (a >= order_) throw std::out_of_range("element_order: index out of range");
  std::uint64_t k = 1;
  for (Element x = a; x != identity_; x = mul_unchecked(x, a)) ++k;
  return k;
}

// ---------------------------------------------------------------------------
// Spec parsing
// ---------------------------------------------------------------------------

namespace {

struct SpecNode {
  enum class Kind { kCyclic, kDihedral, kSymmetric, kQuaternion, kProduct, kFile };
  Kind kind = Kind::kCyclic;
  std::uint32_t n = 0;
  std::string path;
  std::unique_ptr<SpecNode> left;
  std::unique_ptr<SpecNode> right;
};

std::uint32_t parse_count(std::string_view& rest, std::string_view whole) {
  std::size_t len = 0;
  while (len < rest.size() && rest[len] >= '0' && rest[len] <= '9') ++len;
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + len, v);
  if (len == 0 || ec != std::errc{}) {
    throw SpecError("bad group spec '" + std::string(whole) + "': expected a positive integer");
  }
  rest.remove_prefix(len);
  return v;
}

// Consumes one spec from the front of `rest`. File paths stop at a comma
// when an enclosing product still expects its right factor.
std::unique_ptr<SpecNode> parse_node(std::string_view& rest, bool stop_at_comma,
                                     std::string_view whole) {
  const auto colon = rest.find(':');
  if (colon == std::string_view::npos) {
    throw SpecError("bad group spec '" + std::string(whole) + "'");
  }
  const std::string_view head = rest.substr(0, colon);
  rest.remove_prefix(colon + 1);
  auto node = std::make_unique<SpecNode>();
  if (head == "cyclic" || head == "dihedral" || head == "symmetric" || head == "quaternion") {
    node->n = parse_count(rest, whole);
    if (node->n == 0) {
      throw SpecError("bad group spec '" + std::string(whole) + "': parameter must be >= 1");
    }
    if (head == "cyclic") {
      node->kind = SpecNode::Kind::kCyclic;
    } else if (head == "dihedral") {
      node->kind = SpecNode::Kind::kDihedral;
    } else if (head == "symmetric") {
      node->kind = SpecNode::Kind::kSymmetric;
      if (node->n > 6) {
        throw CapExceeded("symmetric:n supports n <= 6, got " + std::to_string(node->n));
      }
    } else {
      node->kind = SpecNode::Kind::kQuaternion;
      if (node->n != 8) throw SpecError("only quaternion:8 is supported");
    }
  } else if (head == "product") {
    node->kind = SpecNode::Kind::kProduct;
    node->left = parse_node(rest, true, whole);
    if (rest.empty() || rest.front() != ',') {
      throw SpecError("bad group spec '" + std::string(whole) + "': product needs two factors");
    }
    rest.remove_prefix(1);
    node->right = parse_node(rest, stop_at_comma, whole);
  } else if (head == "file") {
    node->kind = SpecNode::Kind::kFile;
    const auto end = stop_at_comma ? rest.find(',') : std::string_view::npos;
    node->path = std::string(rest.substr(0, end));
    rest.remove_prefix(end == std::string_view::npos ? rest.size() : end);
    if (node->path.empty()) throw SpecError("file: spec needs a path");
  } else {
    throw SpecError("unknown group spec '" + std::string(whole) + "'");
  }
  return node;
}

std::unique_ptr<SpecNode> parse_spec(std::string_view spec) {
  std::string_view rest = spec;
  auto node = parse_node(rest, false, spec);
  if (!rest.empty()) {
    throw SpecError("trailing input in group spec '" + std::string(spec) + "'");
  }
  return node;
}

std::string canonical_label(const SpecNode& node) {
  switch (node.kind) {
    case SpecNode::Kind::kCyclic: return "cyclic:" + std::to_string(node.n);
    case SpecNode::Kind::kDihedral: return "dihedral:" + std::to_string(node.n);
    case SpecNode::Kind::kSymmetric: return "symmetric:" + std::to_string(node.n);
    case SpecNode::Kind::kQuaternion: return "quaternion:8";
    case SpecNode::Kind::kProduct:
      return "product:" + canonical_label(*node.left) + "," + canonical_label(*node.right);
    case SpecNode::Kind::kFile: return "file:" + node.path;
  }
  return {};
}

std::uint64_t node_order(const SpecNode& node, std::uint64_t cap) {
  std::uint64_t order = 0;
  switch (node.kind) {
    case SpecNode::Kind::kCyclic: order = node.n; break;
    case SpecNode::Kind::kDihedral: order = 2ull * node.n; break;
    case SpecNode::Kind::kSymmetric:
      order = 1;
      for (std::uint32_t i = 2; i <= node.n; ++i) order *= i;
      break;
    case SpecNode::Kind::kQuaternion: order = 8; break;
    case SpecNode::Kind::kProduct: {
      const std::uint64_t l = node_order(*node.left, cap);
      const std::uint64_t r = node_order(*node.right, cap);
      order = l * r;  // both factors are already <= cap <= 2^32
      break;
    }
    case SpecNode::Kind::kFile: order = read_cayley_table(node.path).order; break;
  }
  if (order > cap) {
    throw CapExceeded("group order " + std::to_string(order) + " exceeds cap " +
                      std::to_string(cap));
  }
  return order;
}

CayleyTable cyclic_table(std::uint32_t n) {
  CayleyTable t{n, 0, std::vector<Element>(static_cast<std::size_t>(n) * n)};
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) t.entries[a * n + b] = (a + b) % n;
  }
  return t;
}

// Index a + b*n encodes r^a s^b, with s r s = r^{-1}.
CayleyTable dihedral_table(std::uint32_t n) {
  const std::uint32_t order = 2 * n;
  CayleyTable t{order, 0, std::vector<Element>(static_cast<std::size_t>(order) * order)};
  for (Element x = 0; x < order; ++x) {
    const std::uint32_t a = x % n, b = x / n;
    for (Element y = 0; y < order; ++y) {
      const std::uint32_t c = y % n, d = y / n;
      const std::uint32_t rot = b == 0 ? (a + c) % n : (a + n - c) % n;
      t.entries[x * order + y] = rot + ((b + d) % 2) * n;
    }
  }
  return t;
}

// Permutations of {0..n-1} in lexicographic order (identity first);
// (ab)(i) = a(b(i)).
CayleyTable symmetric_table(std::uint32_t n) {
  std::vector<std::vector<std::uint8_t>> perms;
  std::vector<std::uint8_t> p(n);
  std::iota(p.begin(), p.end(), std::uint8_t{0});
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  std::vector<std::uint32_t> factorial(n + 1, 1);
  for (std::uint32_t i = 1; i <= n; ++i) factorial[i] = factorial[i - 1] * i;
  auto rank = [&](const std::vector<std::uint8_t>& q) {
    std::uint32_t r = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
      std::uint32_t smaller = 0;
      for (std::uint32_t j = i + 1; j < n; ++j) smaller += q[j] < q[i];
      r += smaller * factorial[n - 1 - i];
    }
    return r;
  };

  const auto order = static_cast<std::uint32_t>(perms.size());
  CayleyTable t{order, 0, std::vector<Element>(static_cast<std::size_t>(order) * order)};
  std::vector<std::uint8_t> q(n);
  for (Element a = 0; a < order; ++a) {
    for (Element b = 0; b < order; ++b) {
      for (std::uint32_t i = 0; i < n; ++i) q[i] = perms[a][perms[b][i]];
      t.entries[a * order + b] = rank(q);
    }
  }
  return t;
}

// Index 2u + s encodes (-1)^s * unit u, units ordered 1, i, j, k.
CayleyTable quaternion_table() {
  // unit_mul[u][v] = {sign flip, unit}
  static constexpr std::uint32_t kUnit[4][4] = {
      {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr std::uint32_t kFlip[4][4] = {
      {0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  CayleyTable t{8, 0, std::vector<Element>(64)};
  for (Element x = 0; x < 8; ++x) {
    for (Element y = 0; y < 8; ++y) {
      const std::uint32_t u = x / 2, v = y / 2;
      const std::uint32_t sign = (x % 2) ^ (y % 2) ^ kFlip[u][v];
      t.entries[x * 8 + y] = 2 * kUnit[u][v] + sign;
    }
  }
  return t;
}

CayleyTable product_table(const CayleyTable& g, const CayleyTable& h) {
  const std::uint32_t n1 = g.order, n2 = h.order, order = n1 * n2;
  CayleyTable t{order, g.identity * n2 + h.identity,
                std::vector<Element>(static_cast<std::size_t>(order) * order)};
  for (Element x = 0; x < order; ++x) {
    const Element x1 = x / n2, x2 = x % n2;
    for (Element y = 0; y < order; ++y) {
      const Element y1 = y / n2, y2 = y % n2;
      t.entries[static_cast<std::size_t>(x) * order + y] =
          g.entries[static_cast<std::size_t>(x1) * n1 + y1] * n2 +
          h.entries[static_cast<std::size_t>(x2) * n2 + y2];
    }
  }
  return t;
}

CayleyTable build_table(const SpecNode& node, const AxiomOptions& axioms) {
  switch (node.kind) {
    case SpecNode::Kind::kCyclic: return cyclic_table(node.n);
    case SpecNode::Kind::kDihedral: return dihedral_table(node.n);
    case SpecNode::Kind::kSymmetric: return symmetric_table(node.n);
    case SpecNode::Kind::kQuaternion: return quaternion_table();
    case SpecNode::Kind::kProduct:
      return product_table(build_table(*node.left, axioms), build_table(*node.right, axioms));
    case SpecNode::Kind::kFile: {
      CayleyTable t = read_cayley_table(node.path);
      const AxiomReport report = verify_group_axioms(t, axioms);
      if (!report.ok()) {
        throw AxiomError("table file '" + node.path +
                         "' fails group axiom: " + report.first_failure());
      }
      return t;
    }
  }
  return {};
}

}  // namespace

std::uint64_t spec_order(std::string_view spec) {
  return node_order(*parse_spec(spec), std::numeric_limits<std::uint32_t>::max());
}

Group build_group(std::string_view spec, const BuildOptions& options) {
  const auto node = parse_spec(spec);
  node_order(*node, options.max_order);
  return Group::from_table(build_table(*node, options.axioms), canonical_label(*node),
                           options.axioms);
}

// ---------------------------------------------------------------------------
// Cayley-table files
// ---------------------------------------------------------------------------

CayleyTable parse_cayley_table(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw AxiomError(std::string("malformed Cayley-table file: ") + e.what());
  }
  auto as_index = [](const nlohmann::json& v, const char* what) -> std::uint64_t {
    if (!v.is_number_unsigned()) {
      throw AxiomError(std::string("malformed Cayley-table file: ") + what +
                       " must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
  };
  if (!doc.is_object() || !doc.contains("order") || !doc.contains("identity") ||
      !doc.contains("table")) {
    throw AxiomError("malformed Cayley-table file: need fields order, identity, table");
  }
  const std::uint64_t n = as_index(doc["order"], "order");
  if (n == 0 || n > std::numeric_limits<std::uint32_t>::max()) {
    throw AxiomError("malformed Cayley-table file: bad order");
  }
  CayleyTable t;
  t.order = static_cast<std::uint32_t>(n);
  t.identity = static_cast<Element>(as_index(doc["identity"], "identity"));
  const auto& table = doc["table"];
  if (!table.is_array()) throw AxiomError("malformed Cayley-table file: table must be an array");
  t.entries.reserve(n * n);
  if (table.size() == n && table[0].is_array()) {
    for (const auto& row : table) {
      if (!row.is_array() || row.size() != n) {
        throw AxiomError("malformed Cayley-table file: every row needs " + std::to_string(n) +
                         " entries");
      }
      for (const auto& v : row) t.entries.push_back(static_cast<Element>(as_index(v, "entry")));
    }
  } else if (table.size() == n * n) {
    for (const auto& v : table) t.entries.push_back(static_cast<Element>(as_index(v, "entry")));
  } else {
    throw AxiomError("malformed Cayley-table file: table is not " + std::to_string(n) + "x" +
                     std::to_string(n));
  }
  return t;
}

CayleyTable read_cayley_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw AxiomError("cannot read Cayley-table file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_cayley_table(buf.str());
}

std::string cayley_table_json(const Group& g) {
  std::string out = "{\n  \"order\": " + std::to_string(g.order()) +
                    ",\n  \"identity\": " + std::to_string(g.identity()) + ",\n  \"table\": [\n";
  for (Element a = 0; a < g.order(); ++a) {
    out += "    [";
    const auto r = g.row(a);
    for (Element b = 0; b < g.order(); ++b) {
      if (b) out += ", ";
      out += std::to_string(r[b]);
    }
    out += a + 1 < g.order() ? "],\n" : "]\n";
  }
  out += "  ]\n}\n";
  return out;
}

void write_cayley_table(const Group& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write Cayley-table file '" + path.string() + "'");
  out << cayley_table_json(g);
}

}  // namespace grpdouble

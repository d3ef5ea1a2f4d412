#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace grpdouble {

// Elements are dense indices 0..order-1 into the Cayley table.
using Element = std::uint32_t;

// Raw row-major multiplication table, not yet validated.
// entries[a * order + b] is the index of the product ab.
struct CayleyTable {
  std::uint32_t order = 0;
  Element identity = 0;
  std::vector<Element> entries;
};

struct AxiomCheck {
  bool pass = true;
  // First offending tuple. Closure records (a, b, 0), identity and inverses
  // record (a, 0, 0), associativity records (a, b, c).
  std::optional<std::array<Element, 3>> witness;
};

struct AxiomReport {
  AxiomCheck closure;
  AxiomCheck identity;
  AxiomCheck inverses;
  AxiomCheck associativity;
  // False when associativity was checked on a random sample of triples.
  bool associativity_exhaustive = true;
  std::uint64_t associativity_triples = 0;

  bool ok() const {
    return closure.pass && identity.pass && inverses.pass && associativity.pass;
  }
  // Name of the first failing axiom, or empty.
  std::string first_failure() const;
};

struct AxiomOptions {
  // Orders up to this bound are checked over all n^3 triples.
  std::uint32_t exhaustive_max_order = 64;
  std::uint64_t sampled_triples = 100000;
  std::uint64_t seed = 0x5eed;
};

AxiomReport verify_group_axioms(const CayleyTable& table, const AxiomOptions& options = {});

// A finite group given by its multiplication and inverse tables. Immutable
// after construction, so it is safe to share between threads. Subsets and
// group functions keep a non-owning pointer to their group: the Group must
// outlive them and must not be moved while they exist.
class Group {
 public:
  // Validates the table (throws AxiomError with the first failing axiom).
  static Group from_table(CayleyTable table, std::string label,
                          const AxiomOptions& options = {});

  std::uint32_t order() const noexcept { return order_; }
  Element identity() const noexcept { return identity_; }
  const std::string& label() const noexcept { return label_; }
  bool is_abelian() const noexcept { return abelian_; }

  // Checked table lookups; throw std::out_of_range.
  Element mul(Element a, Element b) const;
  Element inv(Element a) const;

  Element mul_unchecked(Element a, Element b) const noexcept {
    return table_[static_cast<std::size_t>(a) * order_ + b];
  }
  Element inv_unchecked(Element a) const noexcept { return inv_table_[a]; }

  // Left translation row: row(a)[b] == ab.
  std::span<const Element> row(Element a) const noexcept {
    return {table_.data() + static_cast<std::size_t>(a) * order_, order_};
  }

  // Number of 64-bit words in a subset bit-vector of this group.
  std::size_t word_count() const noexcept { return (order_ + 63) / 64; }

  // out |= a·in, resp. out |= in·a, on bit-vectors of word_count() words.
  void left_translate_or(Element a, const std::uint64_t* in, std::uint64_t* out) const noexcept;
  void right_translate_or(Element a, const std::uint64_t* in, std::uint64_t* out) const noexcept;

  CayleyTable table() const;
  std::uint64_t element_order(Element a) const;

 private:
  Group() = default;
  void build_translation_tables();

  std::uint32_t order_ = 0;
  Element identity_ = 0;
  std::string label_;
  bool abelian_ = false;
  std::vector<Element> table_;
  std::vector<Element> inv_table_;
  // Byte-indexed translation masks, only for order <= 64:
  // left_bytes_[(a * byte_count + k) * 256 + v] = a · {8k + bits of v}.
  std::vector<std::uint64_t> left_bytes_;
  std::vector<std::uint64_t> right_bytes_;
  std::uint32_t byte_count_ = 0;
};

struct BuildOptions {
  std::uint32_t max_order = 4096;
  AxiomOptions axioms;
};

// Builds a group from a spec string:
//   cyclic:n | dihedral:n (order 2n) | symmetric:n (n <= 6) | quaternion:8 |
//   product:<spec>,<spec> | file:<path>
// Builders place the identity at index 0. Throws SpecError, CapExceeded or
// AxiomError.
Group build_group(std::string_view spec, const BuildOptions& options = {});

// Order a spec would produce, without building tables. File specs are read.
std::uint64_t spec_order(std::string_view spec);

// Cayley-table files: {"order": n, "identity": e, "table": [[...], ...]}.
// A flat row-major "table" array of n*n integers is also accepted.
CayleyTable read_cayley_table(const std::filesystem::path& path);
CayleyTable parse_cayley_table(std::string_view json_text);
void write_cayley_table(const Group& g, const std::filesystem::path& path);
std::string cayley_table_json(const Group& g);

}  // namespace grpdouble

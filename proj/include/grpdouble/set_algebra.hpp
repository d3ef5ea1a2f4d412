#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "grpdouble/group.hpp"
#include "grpdouble/rational.hpp"
#include "grpdouble/subset.hpp"

namespace grpdouble {

// AB = {ab : a in A, b in B}. Throws GroupMismatch.
Subset product_set(const Subset& a, const Subset& b);

// {a^{-1} : a in A}
Subset inverse_set(const Subset& a);

// xA and Ax.
Subset left_translate(Element x, const Subset& a);
Subset right_translate(const Subset& a, Element x);

// X^k by repeated squaring; X^0 = {e}. Stops early once a power is stable
// under squaring. Throws PreconditionError for k above kMaxSetPower.
inline constexpr std::uint64_t kMaxSetPower = std::uint64_t{1} << 32;
Subset set_power(const Subset& x, std::uint64_t k);

struct DoublingReport {
  std::size_t set_size = 0;      // |A|
  std::size_t product_size = 0;  // |AA^{-1}|
  Rational ratio;                // |AA^{-1}| / |A|
  bool symmetric_agreement = false;  // AA^{-1} == A^{-1}A
};

DoublingReport doubling_report(const Subset& a);

// Smallest subgroup containing S. Throws EmptySet.
Subset subgroup_closure(const Subset& s);

// Subgroup generated by `gens` (the trivial subgroup for an empty list).
Subset generated_subgroup(const Group& g, std::span<const Element> gens);

bool is_subgroup(const Subset& a);

// Every subgroup of g exactly once, sorted by size then bitmask order.
// Breadth-first extension from the trivial subgroup. Throws CapExceeded when
// the group order exceeds `cap`.
inline constexpr std::uint32_t kDefaultSubgroupCap = 256;
std::vector<Subset> enumerate_subgroups(const Group& g, std::uint32_t cap = kDefaultSubgroupCap);

// Every subgroup contained in S (empty when S lacks the identity).
std::vector<Subset> enumerate_subgroups_within(const Subset& s,
                                               std::uint32_t cap = kDefaultSubgroupCap);

// Enumerated subgroups together with a small generating set for each, so
// stability checks (XH == X) only need to test generators.
class SubgroupCatalog {
 public:
  explicit SubgroupCatalog(const Group& g, std::uint32_t cap = kDefaultSubgroupCap);
  SubgroupCatalog(const Subset& within, std::uint32_t cap);

  const Group& group() const noexcept { return *group_; }
  std::size_t size() const noexcept { return subgroups_.size(); }
  const Subset& operator[](std::size_t i) const { return subgroups_[i]; }
  std::span<const Subset> subgroups() const noexcept { return subgroups_; }
  std::span<const Element> generators(std::size_t i) const { return generators_[i]; }

 private:
  void enumerate(const Subset& within);

  const Group* group_;
  std::vector<Subset> subgroups_;
  std::vector<std::vector<Element>> generators_;
};

struct CosetTrace {
  std::size_t coset_count = 0;  // R: left cosets xH meeting A
  // One per coset, the smallest element of A in it, ascending.
  std::vector<Element> representatives;
  std::size_t max_intersection = 0;  // max |A ∩ xH|
};

// Throws PreconditionError when H is not a subgroup.
CosetTrace coset_trace(const Subset& a, const Subset& h);

// H as a standalone group, elements relabeled in increasing index order.
Group subgroup_as_group(const Subset& h, std::string label);

}  // namespace grpdouble

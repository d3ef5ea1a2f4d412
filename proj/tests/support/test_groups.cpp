#include "test_groups.hpp"

#include <algorithm>
#include <stdexcept>

#include "grpdouble/set_algebra.hpp"
#include "grpdouble/subset.hpp"

namespace grpdouble::testing {

namespace {

const std::vector<std::string>& product_specs() {
  static const std::vector<std::string> specs = {
      "product:cyclic:2,cyclic:2",
      "product:cyclic:2,cyclic:4",
      "product:cyclic:2,product:cyclic:2,cyclic:2",
      "product:cyclic:3,cyclic:3",
      "product:cyclic:2,cyclic:6",
      "product:cyclic:2,symmetric:3",
      "product:cyclic:4,cyclic:4",
      "product:cyclic:2,cyclic:8",
      "product:cyclic:2,dihedral:4",
      "product:cyclic:2,quaternion:8",
      "product:cyclic:2,product:cyclic:2,cyclic:4",
      "product:cyclic:2,product:cyclic:2,product:cyclic:2,cyclic:2",
      "product:cyclic:3,cyclic:6",
      "product:cyclic:3,symmetric:3",
      "product:cyclic:2,cyclic:10",
      "product:cyclic:2,cyclic:12",
      "product:cyclic:2,product:cyclic:2,cyclic:6",
      "product:cyclic:3,dihedral:4",
      "product:cyclic:3,quaternion:8",
      "product:cyclic:2,cyclic:16",
      "product:cyclic:4,cyclic:8",
      "product:cyclic:2,product:cyclic:4,cyclic:4",
      "product:cyclic:2,product:cyclic:2,product:cyclic:2,product:cyclic:2,cyclic:2",
      "product:cyclic:2,dihedral:8",
      "product:cyclic:4,quaternion:8",
      "product:cyclic:2,product:cyclic:2,dihedral:4",
  };
  return specs;
}

bool keep(const Group& g, const CatalogFilter& f) {
  if (g.order() < f.min_order || g.order() > f.max_order) return false;
  if (f.abelian_only && !g.is_abelian()) return false;
  if (f.non_abelian_only && g.is_abelian()) return false;
  return true;
}

// Even permutations of symmetric:4 as a standalone group.
std::unique_ptr<Group> alternating4() {
  static const Group s4 = build_group("symmetric:4");
  // A4 is the unique subgroup of order 12 in S4.
  for (const Subset& h : enumerate_subgroups(s4)) {
    if (h.size() == 12) return std::make_unique<Group>(subgroup_as_group(h, "alternating:4"));
  }
  throw std::logic_error("symmetric:4 has no subgroup of order 12");
}

}  // namespace

std::unique_ptr<Group> make_group(const std::string& spec) {
  return std::make_unique<Group>(build_group(spec));
}

std::vector<TestGroup> test_groups(const CatalogFilter& filter) {
  std::vector<std::string> specs;
  for (int n = 2; n <= 32; ++n) specs.push_back("cyclic:" + std::to_string(n));
  for (int n = 2; n <= 16; ++n) specs.push_back("dihedral:" + std::to_string(n));
  specs.push_back("quaternion:8");
  specs.push_back("symmetric:3");
  specs.push_back("symmetric:4");
  for (const std::string& s : product_specs()) specs.push_back(s);

  std::vector<TestGroup> out;
  for (const std::string& spec : specs) {
    if (spec_order(spec) > filter.max_order || spec_order(spec) < filter.min_order) continue;
    auto g = make_group(spec);
    if (keep(*g, filter)) out.push_back({spec, std::move(g)});
  }
  if (filter.max_order >= 12 && filter.min_order <= 12) {
    auto a4 = alternating4();
    if (keep(*a4, filter)) out.push_back({"alternating:4", std::move(a4)});
  }
  std::stable_sort(out.begin(), out.end(), [](const TestGroup& a, const TestGroup& b) {
    return a.group->order() < b.group->order();
  });
  return out;
}

void for_each_nonempty_subset(const Group& g, const std::function<void(std::uint64_t)>& f) {
  if (g.order() > 32) throw std::invalid_argument("for_each_nonempty_subset: order > 32");
  const std::uint64_t end = std::uint64_t{1} << g.order();
  for (std::uint64_t mask = 1; mask < end; ++mask) f(mask);
}

}  // namespace grpdouble::testing

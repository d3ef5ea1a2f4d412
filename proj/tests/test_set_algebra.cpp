#include <random>

#include <gtest/gtest.h>

#include "grpdouble/error.hpp"
#include "grpdouble/set_algebra.hpp"
#include "oracles.hpp"
#include "test_groups.hpp"

namespace {

using namespace grpdouble;
using grpdouble::testing::test_groups;

Subset random_set(const Group& g, std::mt19937_64& rng, double density) {
  std::bernoulli_distribution coin(density);
  Subset s(g);
  for (Element x = 0; x < g.order(); ++x) {
    if (coin(rng)) s.insert(x);
  }
  if (s.empty()) s.insert(static_cast<Element>(rng() % g.order()));
  return s;
}

TEST(SubsetBasics, ConstructionAndQueries) {
  const Group g = build_group("cyclic:70");
  Subset s = Subset::of(g, {3, 65, 3, 69});
  EXPECT_EQ(s.size(), 3u);
  EXPECT_EQ(s.elements(), (std::vector<Element>{3, 65, 69}));
  EXPECT_EQ(s.first(), 3u);
  EXPECT_EQ(s.to_string(), "{3,65,69}");
  EXPECT_TRUE(s.contains(65));
  EXPECT_FALSE(s.contains(64));
  EXPECT_THROW(s.contains(70), std::out_of_range);
  EXPECT_THROW(s.insert(70), std::out_of_range);
  s.erase(65);
  EXPECT_EQ(s.size(), 2u);
  EXPECT_THROW(Subset(g).first(), EmptySet);
  EXPECT_EQ(Subset::full(g).size(), 70u);
  EXPECT_EQ(Subset::identity_set(g), Subset::of(g, {0}));
  EXPECT_THROW(Subset::from_mask(g, 1), std::exception);
}

TEST(SubsetBasics, MaskRoundTripAndOrder) {
  const Group g = build_group("cyclic:9");
  const Subset a = Subset::from_mask(g, 0b10110);
  EXPECT_EQ(a.elements(), (std::vector<Element>{1, 2, 4}));
  EXPECT_EQ(a.mask(), 0b10110u);
  EXPECT_TRUE(bitmask_less(Subset::from_mask(g, 0b10000000), Subset::from_mask(g, 0b100000001)));
  EXPECT_TRUE(bitmask_less(Subset::from_mask(g, 3), Subset::from_mask(g, 4)));
  EXPECT_FALSE(bitmask_less(a, a));
}

TEST(SubsetBasics, BooleanOperationsAndMismatch) {
  const Group g = build_group("cyclic:10");
  const Group other = build_group("cyclic:10");
  const Subset a = Subset::of(g, {1, 2, 3});
  const Subset b = Subset::of(g, {3, 4});
  EXPECT_EQ(a | b, Subset::of(g, {1, 2, 3, 4}));
  EXPECT_EQ(a & b, Subset::of(g, {3}));
  EXPECT_EQ(a - b, Subset::of(g, {1, 2}));
  EXPECT_EQ(a.intersection_size(b), 1u);
  EXPECT_TRUE(a.intersects(b));
  EXPECT_TRUE(Subset::of(g, {3}).is_subset_of(a));
  const Subset foreign = Subset::of(other, {1});
  EXPECT_FALSE(foreign == Subset::of(g, {1}));
  EXPECT_THROW(a.is_subset_of(foreign), GroupMismatch);
  EXPECT_THROW(product_set(a, foreign), GroupMismatch);
}

TEST(ProductSet, MatchesOracleOnRandomSets) {
  std::mt19937_64 rng(7);
  for (const auto& tg : test_groups({.max_order = 32})) {
    const Group& g = *tg.group;
    for (int trial = 0; trial < 20; ++trial) {
      const Subset a = random_set(g, rng, 0.2);
      const Subset b = random_set(g, rng, 0.3);
      EXPECT_EQ(product_set(a, b).elements(), oracle::product(g, a.elements(), b.elements())) << tg.name;
      EXPECT_EQ(inverse_set(a).elements(), oracle::inverse(g, a.elements())) << tg.name;
    }
  }
}

TEST(ProductSet, LargeGroupsFallBackToBitIteration) {
  std::mt19937_64 rng(11);
  const Group g = build_group("product:dihedral:5,cyclic:9");
  ASSERT_GT(g.order(), 64u);
  for (int trial = 0; trial < 10; ++trial) {
    const Subset a = random_set(g, rng, 0.05);
    const Subset b = random_set(g, rng, 0.1);
    EXPECT_EQ(product_set(a, b).elements(), oracle::product(g, a.elements(), b.elements()));
  }
}

TEST(ProductSet, TranslatesAndInverses) {
  const Group g = build_group("symmetric:3");
  const Subset a = Subset::of(g, {1, 2, 4});
  for (Element x = 0; x < g.order(); ++x) {
    EXPECT_EQ(left_translate(x, a), product_set(Subset::of(g, {x}), a));
    EXPECT_EQ(right_translate(a, x), product_set(a, Subset::of(g, {x})));
    EXPECT_EQ(left_translate(x, a).size(), a.size());
  }
  EXPECT_EQ(inverse_set(inverse_set(a)), a);
  // (AB)^{-1} = B^{-1} A^{-1}
  const Subset b = Subset::of(g, {0, 3});
  EXPECT_EQ(inverse_set(product_set(a, b)), product_set(inverse_set(b), inverse_set(a)));
}

TEST(SetPower, MatchesIteratedProducts) {
  const Group g = build_group("dihedral:6");
  const Subset x = Subset::of(g, {0, 1, 6});
  Subset iter = Subset::identity_set(g);
  for (std::uint64_t k = 0; k <= 7; ++k) {
    EXPECT_EQ(set_power(x, k), iter) << "k = " << k;
    iter = product_set(iter, x);
  }
  // Stable powers short-circuit without changing the answer.
  EXPECT_EQ(set_power(x, 1'000'000), Subset::full(g));
  EXPECT_EQ(set_power(x, kMaxSetPower), Subset::full(g));
  EXPECT_THROW(set_power(x, kMaxSetPower + 1), PreconditionError);
}

TEST(Doubling, PaperExampleAndCosets) {
  const Group z4 = build_group("cyclic:4");
  const DoublingReport r = doubling_report(Subset::of(z4, {0, 1}));
  EXPECT_EQ(r.set_size, 2u);
  EXPECT_EQ(r.product_size, 3u);
  EXPECT_EQ(r.ratio, make_rational(3, 2));
  EXPECT_TRUE(r.symmetric_agreement);
  EXPECT_THROW(doubling_report(Subset(z4)), EmptySet);

  const Group d4 = build_group("dihedral:4");
  for (const Subset& h : enumerate_subgroups(d4)) {
    for (Element x = 0; x < d4.order(); ++x) {
      EXPECT_EQ(doubling_report(left_translate(x, h)).ratio, Rational(1));
    }
  }
}

// |AA^{-1}| = |A| holds exactly for left cosets of subgroups.
TEST(Doubling, RatioOneCharacterizesCosets) {
  for (const auto& tg : test_groups({.max_order = 10})) {
    const Group& g = *tg.group;
    grpdouble::testing::for_each_nonempty_subset(g, [&](std::uint64_t mask) {
      const Subset a = Subset::from_mask(g, mask);
      const bool ratio_one = product_set(a, inverse_set(a)).size() == a.size();
      const bool coset = is_subgroup(product_set(inverse_set(a), a)) &&
                         product_set(inverse_set(a), a).size() == a.size();
      EXPECT_EQ(ratio_one, coset) << tg.name << " " << a.to_string();
    });
  }
}

TEST(Doubling, RightCosetsOfNonNormalSubgroupsAreNotBalanced) {
  // A = Hx has AA^{-1} = H but A^{-1}A = x^{-1}Hx, so the two quotient sets
  // differ even though |AA^{-1}| = |A| < 2|A|.
  const Group s3 = build_group("symmetric:3");
  int seen = 0;
  for (const Subset& h : enumerate_subgroups(s3)) {
    for (Element x = 0; x < s3.order(); ++x) {
      const Subset a = right_translate(h, x);
      const Subset conj = product_set(product_set(Subset::of(s3, {s3.inv(x)}), h), Subset::of(s3, {x}));
      EXPECT_EQ(product_set(a, inverse_set(a)), h);
      EXPECT_EQ(product_set(inverse_set(a), a), conj);
      if (conj != h) ++seen;
    }
  }
  // Three subgroups of order 2, each moved by four of the six elements.
  EXPECT_EQ(seen, 12);
}

TEST(Subgroups, ClosureAndGenerators) {
  const Group z8 = build_group("cyclic:8");
  EXPECT_EQ(subgroup_closure(Subset::of(z8, {2})), Subset::of(z8, {0, 2, 4, 6}));
  EXPECT_EQ(subgroup_closure(Subset::of(z8, {4, 6})), Subset::of(z8, {0, 2, 4, 6}));
  EXPECT_EQ(subgroup_closure(Subset::of(z8, {3})), Subset::full(z8));
  EXPECT_THROW(subgroup_closure(Subset(z8)), EmptySet);
  const std::vector<Element> none;
  EXPECT_EQ(generated_subgroup(z8, none), Subset::identity_set(z8));

  std::mt19937_64 rng(3);
  for (const auto& tg : test_groups({.max_order = 24})) {
    const Subset s = random_set(*tg.group, rng, 0.1);
    EXPECT_EQ(subgroup_closure(s).elements(), oracle::closure(*tg.group, s.elements())) << tg.name;
  }
}

TEST(Subgroups, EnumerationMatchesBruteForce) {
  for (const auto& tg : test_groups({.max_order = 16})) {
    const Group& g = *tg.group;
    const std::vector<Subset> subs = enumerate_subgroups(g);
    std::vector<oracle::Set> got;
    for (const Subset& h : subs) {
      EXPECT_TRUE(is_subgroup(h));
      got.push_back(h.elements());
    }
    std::vector<oracle::Set> expected = oracle::all_subgroups(g);
    std::sort(got.begin(), got.end());
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(got, expected) << tg.name;
    for (std::size_t i = 1; i < subs.size(); ++i) {
      const bool ordered = subs[i - 1].size() < subs[i].size() ||
                           (subs[i - 1].size() == subs[i].size() && bitmask_less(subs[i - 1], subs[i]));
      EXPECT_TRUE(ordered) << tg.name;
    }
  }
}

TEST(Subgroups, KnownCounts) {
  const std::pair<const char*, std::size_t> cases[] = {
      {"cyclic:12", 6},    {"symmetric:3", 6},  {"dihedral:4", 10},
      {"quaternion:8", 6}, {"product:cyclic:2,product:cyclic:2,cyclic:2", 16},
      {"symmetric:4", 30}, {"product:cyclic:2,product:cyclic:2,product:cyclic:2,product:cyclic:2,cyclic:2", 374},
  };
  for (const auto& [spec, count] : cases) {
    EXPECT_EQ(enumerate_subgroups(build_group(spec)).size(), count) << spec;
  }
  EXPECT_THROW(enumerate_subgroups(build_group("cyclic:300")), CapExceeded);
  EXPECT_EQ(enumerate_subgroups(build_group("cyclic:300"), 512).size(), 18u);
}

TEST(Subgroups, CatalogGeneratorsGenerate) {
  for (const auto& tg : test_groups({.max_order = 24})) {
    const SubgroupCatalog cat(*tg.group);
    for (std::size_t i = 0; i < cat.size(); ++i) {
      EXPECT_EQ(generated_subgroup(*tg.group, cat.generators(i)), cat[i]) << tg.name;
    }
  }
}

TEST(Subgroups, WithinASet) {
  const Group z12 = build_group("cyclic:12");
  const Subset s = Subset::of(z12, {0, 3, 4, 6, 8, 9});
  std::vector<oracle::Set> got;
  for (const Subset& h : enumerate_subgroups_within(s)) got.push_back(h.elements());
  EXPECT_EQ(got, (std::vector<oracle::Set>{{0}, {0, 6}, {0, 4, 8}, {0, 3, 6, 9}}));
  EXPECT_TRUE(enumerate_subgroups_within(Subset::of(z12, {1, 2})).empty());
}

TEST(Cosets, TraceCountsAndRepresentatives) {
  const Group d4 = build_group("dihedral:4");
  const Subset h = generated_subgroup(d4, std::vector<Element>{4});  // a reflection
  ASSERT_EQ(h.size(), 2u);
  const Subset a = Subset::of(d4, {0, 1, 2, 4});
  const CosetTrace t = coset_trace(a, h);
  EXPECT_EQ(t.coset_count, oracle::cosets_meeting(d4, a.elements(), h.elements()));
  EXPECT_EQ(t.representatives.size(), t.coset_count);
  for (Element r : t.representatives) {
    EXPECT_TRUE(a.contains(r));
    // r is the smallest element of A in its coset.
    left_translate(r, h).for_each([&](Element y) {
      if (a.contains(y)) {
        EXPECT_LE(r, y);
      }
    });
  }
  EXPECT_TRUE(a.is_subset_of(product_set(Subset::from_elements(d4, t.representatives), h)));
  EXPECT_EQ(coset_trace(h, h).coset_count, 1u);
  EXPECT_EQ(t.max_intersection, 2u);
  EXPECT_THROW(coset_trace(a, Subset::of(d4, {0, 1})), PreconditionError);
}

}  // namespace

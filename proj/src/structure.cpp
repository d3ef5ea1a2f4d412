#include "grpdouble/structure.hpp"

#include <algorithm>
#include <numeric>

#include "grpdouble/convolution.hpp"
#include "grpdouble/error.hpp"

namespace grpdouble {

namespace {

void require_catalog_group(const Subset& a, const SubgroupCatalog& subgroups) {
  if (&a.group() != &subgroups.group()) throw GroupMismatch();
}

std::int64_t isize(const Subset& s) { return static_cast<std::int64_t>(s.size()); }

// X·h == X for every listed h (hence for the subgroup they generate).
bool right_stable(const Subset& x, std::span<const Element> gens) {
  const Group& g = x.group();
  Subset moved(g);
  for (Element h : gens) {
    std::fill(moved.word_data(), moved.word_data() + g.word_count(), 0);
    g.right_translate_or(h, x.words().data(), moved.word_data());
    if (!std::equal(x.words().begin(), x.words().end(), moved.word_data())) return false;
  }
  return true;
}

std::size_t count_left_cosets(const Subset& a, const Subset& h) {
  const Group& g = a.group();
  Subset covered(g);
  std::size_t r = 0;
  a.for_each([&](Element x) {
    if (covered.contains_unchecked(x)) return;
    ++r;
    g.left_translate_or(x, h.words().data(), covered.word_data());
  });
  return r;
}

}  // namespace

const char* to_string(FreimanStatus s) {
  switch (s) {
    case FreimanStatus::kFound: return "found";
    case FreimanStatus::kNotApplicable: return "not-applicable";
    case FreimanStatus::kRefuted: return "refuted";
  }
  return "";
}

const char* to_string(Theorem t) {
  switch (t) {
    case Theorem::kKneser: return "kneser";
    case Theorem::kHamidoune1: return "hamidoune-1";
    case Theorem::kHamidoune2: return "hamidoune-2";
    case Theorem::kFreiman: return "freiman";
  }
  return "";
}

FreimanResult freiman_coset(const Subset& a) {
  if (a.empty()) throw EmptySet("freiman_coset");
  const Subset a_inv = inverse_set(a);
  const std::size_t product_size = product_set(a, a_inv).size();
  FreimanResult r;
  r.ratio = make_rational(static_cast<std::int64_t>(product_size), isize(a));
  if (r.ratio >= make_rational(3, 2)) {
    r.status = FreimanStatus::kNotApplicable;
    return r;
  }
  Subset h = product_set(a_inv, a);
  r.representative = a.first();
  r.closure_holds = is_subgroup(h);
  r.coset_contains_set = a.is_subset_of(left_translate(r.representative, h));
  // |H| <= K|A| with K|A| = |AA^{-1}|
  r.size_bound_holds = h.size() <= product_size;
  r.status = r.closure_holds && r.coset_contains_set && r.size_bound_holds
                 ? FreimanStatus::kFound
                 : FreimanStatus::kRefuted;
  r.subgroup = std::move(h);
  return r;
}

JumpReport jump_check(const Subset& a) {
  if (a.empty()) throw EmptySet("jump_check");
  const Subset a_inv = inverse_set(a);
  const std::vector<std::int64_t> conv = indicator_convolution(a_inv, a);
  JumpReport r;
  r.bound = 2 * isize(a) - isize(product_set(a, a_inv));
  r.min_value = std::numeric_limits<std::int64_t>::max();
  const Subset support = product_set(a_inv, a);
  support.for_each([&](Element x) {
    if (conv[x] < r.min_value) {
      r.min_value = conv[x];
      r.argmin = x;
    }
  });
  r.pass = r.min_value >= r.bound;
  return r;
}

CoveringFrontier covering_frontier(const Subset& a, const SubgroupCatalog& subgroups) {
  require_catalog_group(a, subgroups);
  if (a.empty()) throw EmptySet("covering_frontier");
  struct Candidate {
    std::size_t index;
    std::size_t size;
    std::size_t cosets;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(subgroups.size());
  for (std::size_t i = 0; i < subgroups.size(); ++i) {
    candidates.push_back({i, subgroups[i].size(), count_left_cosets(a, subgroups[i])});
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
    return x.size != y.size ? x.size < y.size : x.cosets < y.cosets;
  });
  CoveringFrontier frontier;
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (const Candidate& c : candidates) {
    if (c.cosets >= best) continue;
    best = c.cosets;
    const Subset& h = subgroups[c.index];
    CosetTrace trace = coset_trace(a, h);
    frontier.entries.push_back({h, trace.coset_count, std::move(trace.representatives)});
  }
  return frontier;
}

CoveringFrontier covering_frontier(const Subset& a) {
  return covering_frontier(a, SubgroupCatalog(a.group()));
}

std::optional<CoverEntry> bounded_cover(const CoveringFrontier& frontier, const Subset& a,
                                        const Rational& epsilon) {
  if (epsilon <= Rational(0)) return std::nullopt;
  const Rational max_cosets = Rational(2) / epsilon;
  for (const CoverEntry& e : frontier.entries) {
    if (make_rational(static_cast<std::int64_t>(e.coset_count)) <= max_cosets &&
        e.subgroup.size() <= 2 * a.size()) {
      return e;
    }
  }
  return std::nullopt;
}

std::size_t smallest_containing_coset(const Subset& a, const SubgroupCatalog& subgroups) {
  require_catalog_group(a, subgroups);
  if (a.empty()) throw EmptySet("smallest_containing_coset");
  const Element first = a.first();
  for (const Subset& h : subgroups.subgroups()) {
    if (a.is_subset_of(left_translate(first, h))) return h.size();
  }
  return a.group().order();
}

WitnessReport kneser_witness(const Subset& a, const SubgroupCatalog& subgroups) {
  require_catalog_group(a, subgroups);
  if (a.empty()) throw EmptySet("kneser_witness");
  if (!a.group().is_abelian()) {
    throw PreconditionError("kneser_witness: group " + a.group().label() + " is not abelian");
  }
  const Subset diff = product_set(a, inverse_set(a));
  WitnessReport report;
  report.theorem = Theorem::kKneser;
  // G itself passes whenever A-A = G, so it is kept as a last resort.
  std::vector<std::size_t> order;
  for (std::size_t i = subgroups.size(); i-- > 0;) {
    if (subgroups[i].size() < a.group().order()) order.push_back(i);
  }
  for (std::size_t i = subgroups.size(); i-- > 0;) {
    if (subgroups[i].size() == a.group().order()) order.push_back(i);
  }
  for (std::size_t i : order) {
    if (!right_stable(diff, subgroups.generators(i))) continue;
    const Subset& h = subgroups[i];
    const Subset a_plus_h = product_set(a, h);
    const std::int64_t rhs = 2 * isize(a_plus_h) - isize(h);
    if (isize(diff) < rhs) continue;
    report.found = true;
    report.subgroup = h;
    report.checks.push_back({"A-A+H = A-A", isize(product_set(diff, h)), isize(diff), true});
    report.checks.push_back({"|A-A| >= 2|A+H| - |H|", isize(diff), rhs, true});
    return report;
  }
  return report;
}

WitnessReport kneser_witness(const Subset& a) {
  return kneser_witness(a, SubgroupCatalog(a.group()));
}

namespace {

struct HamidouneContext {
  const Subset& a;
  Subset a_inv;
  Subset left_quotient;   // A^{-1}A
  Subset right_quotient;  // AA^{-1}
};

// Branch (1): A^{-1}HA = A^{-1}A and |A^{-1}A| >= 2|HA| - |H|.
std::optional<WitnessReport> try_first_branch(const HamidouneContext& c, const Subset& h) {
  const Subset ha = product_set(h, c.a);
  const std::int64_t rhs = 2 * isize(ha) - isize(h);
  if (isize(c.left_quotient) < rhs) return std::nullopt;
  const Subset sandwich = product_set(c.a_inv, ha);
  if (sandwich != c.left_quotient) return std::nullopt;
  WitnessReport r;
  r.theorem = Theorem::kHamidoune1;
  r.found = true;
  r.subgroup = h;
  r.checks.push_back({"A^{-1}HA = A^{-1}A", isize(sandwich), isize(c.left_quotient), true});
  r.checks.push_back({"|A^{-1}A| >= 2|HA| - |H|", isize(c.left_quotient), rhs, true});
  return r;
}

// Branch (2): AHA^{-1} = AA^{-1} and |AA^{-1}| >= 2|AH| - |H|.
std::optional<WitnessReport> try_second_branch(const HamidouneContext& c, const Subset& h) {
  const Subset ah = product_set(c.a, h);
  const std::int64_t rhs = 2 * isize(ah) - isize(h);
  if (isize(c.right_quotient) < rhs) return std::nullopt;
  const Subset sandwich = product_set(ah, c.a_inv);
  if (sandwich != c.right_quotient) return std::nullopt;
  WitnessReport r;
  r.theorem = Theorem::kHamidoune2;
  r.found = true;
  r.subgroup = h;
  r.checks.push_back({"AHA^{-1} = AA^{-1}", isize(sandwich), isize(c.right_quotient), true});
  r.checks.push_back({"|AA^{-1}| >= 2|AH| - |H|", isize(c.right_quotient), rhs, true});
  return r;
}

}  // namespace

WitnessReport hamidoune_witness(const Subset& a, const SubgroupCatalog& subgroups,
                                BranchPreference prefer) {
  require_catalog_group(a, subgroups);
  if (a.empty()) throw EmptySet("hamidoune_witness");
  HamidouneContext c{a, inverse_set(a), Subset(a.group()), Subset(a.group())};
  c.left_quotient = product_set(c.a_inv, a);
  c.right_quotient = product_set(a, c.a_inv);

  if (prefer == BranchPreference::kSecond) {
    for (const Subset& h : subgroups.subgroups()) {
      if (auto r = try_second_branch(c, h)) return *r;
    }
  }
  for (const Subset& h : subgroups.subgroups()) {
    if (auto r = try_first_branch(c, h)) return *r;
    if (auto r = try_second_branch(c, h)) return *r;
  }
  WitnessReport none;
  none.theorem = Theorem::kHamidoune1;
  return none;
}

WitnessReport hamidoune_witness(const Subset& a) {
  return hamidoune_witness(a, SubgroupCatalog(a.group()));
}

CoveringBoundReport covering_bound_check(const Subset& a, const SubgroupCatalog& subgroups) {
  require_catalog_group(a, subgroups);
  if (a.empty()) throw EmptySet("covering_bound_check");
  const DoublingReport d = doubling_report(a);
  CoveringBoundReport r;
  r.epsilon = Rational(2) - d.ratio;
  if (r.epsilon <= Rational(0)) return r;
  r.applicable = true;
  r.witness = hamidoune_witness(a, subgroups, BranchPreference::kSecond);
  if (!r.witness.found) return r;
  const Subset& h = *r.witness.subgroup;
  r.subgroup_size = h.size();
  r.size_bound = r.epsilon * make_rational(isize(a));
  r.size_ok = make_rational(isize(h)) >= r.size_bound;
  CosetTrace trace = coset_trace(a, h);
  r.coset_count = trace.coset_count;
  r.representatives = std::move(trace.representatives);
  r.coset_bound = Rational(2) / r.epsilon - Rational(1);
  r.coset_ok = make_rational(static_cast<std::int64_t>(r.coset_count)) <= r.coset_bound;
  return r;
}

CoveringBoundReport covering_bound_check(const Subset& a) {
  return covering_bound_check(a, SubgroupCatalog(a.group()));
}

}  // namespace grpdouble

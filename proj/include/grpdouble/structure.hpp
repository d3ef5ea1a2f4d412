#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grpdouble/rational.hpp"
#include "grpdouble/set_algebra.hpp"
#include "grpdouble/subset.hpp"

namespace grpdouble {

// ---------------------------------------------------------------------------
// Freiman coset detector: |AA^{-1}| < 1.5|A| forces A into a coset aH of
// H = A^{-1}A with |H| <= |AA^{-1}|.
// ---------------------------------------------------------------------------

enum class FreimanStatus { kFound, kNotApplicable, kRefuted };

struct FreimanResult {
  FreimanStatus status = FreimanStatus::kNotApplicable;
  Rational ratio;
  // A^{-1}A; also filled in for a refutation so it can be inspected.
  std::optional<Subset> subgroup;
  Element representative = 0;
  bool closure_holds = false;
  bool coset_contains_set = false;
  bool size_bound_holds = false;
};

// Not applicable for ratio >= 3/2 (the boundary is excluded). Throws EmptySet.
FreimanResult freiman_coset(const Subset& a);

const char* to_string(FreimanStatus s);

// ---------------------------------------------------------------------------
// Jump inequality: on A^{-1}A, 1_{A^{-1}} * 1_A >= 2|A| - |AA^{-1}|.
// ---------------------------------------------------------------------------

struct JumpReport {
  std::int64_t min_value = 0;  // min over A^{-1}A
  std::int64_t bound = 0;      // 2|A| - |AA^{-1}|
  Element argmin = 0;
  bool pass = false;
};

JumpReport jump_check(const Subset& a);

// ---------------------------------------------------------------------------
// Coverings A ⊆ XH
// ---------------------------------------------------------------------------

struct CoverEntry {
  Subset subgroup;
  std::size_t coset_count = 0;          // R = |X|
  std::vector<Element> representatives; // X
};

// Pareto-optimal (|H|, R) pairs, ascending in |H| and strictly descending in R.
struct CoveringFrontier {
  std::vector<CoverEntry> entries;
};

CoveringFrontier covering_frontier(const Subset& a, const SubgroupCatalog& subgroups);
CoveringFrontier covering_frontier(const Subset& a);

// First frontier entry (smallest |H|) with R <= 2/epsilon and |H| <= 2|A|.
std::optional<CoverEntry> bounded_cover(const CoveringFrontier& frontier, const Subset& a,
                                        const Rational& epsilon);

// Size of the smallest coset of a subgroup that contains A.
std::size_t smallest_containing_coset(const Subset& a, const SubgroupCatalog& subgroups);

// ---------------------------------------------------------------------------
// Kneser / Hamidoune witnesses
// ---------------------------------------------------------------------------

enum class Theorem { kKneser, kHamidoune1, kHamidoune2, kFreiman };
const char* to_string(Theorem t);

struct WitnessCheck {
  std::string relation;
  std::int64_t left = 0;
  std::int64_t right = 0;
  bool pass = false;
};

struct WitnessReport {
  Theorem theorem = Theorem::kKneser;
  bool found = false;
  std::optional<Subset> subgroup;
  std::vector<WitnessCheck> checks;
};

// Searches subgroups from largest to smallest for H with A-A+H = A-A and
// |A-A| >= 2|A+H| - |H|. Throws PreconditionError for non-abelian groups.
WitnessReport kneser_witness(const Subset& a, const SubgroupCatalog& subgroups);
WitnessReport kneser_witness(const Subset& a);

enum class BranchPreference { kAny, kSecond };

// Searches subgroups from smallest to largest, testing branch (1)
// A^{-1}HA = A^{-1}A, |A^{-1}A| >= 2|HA| - |H| and then branch (2)
// AHA^{-1} = AA^{-1}, |AA^{-1}| >= 2|AH| - |H|. With kSecond, branch (2) is
// searched over all subgroups first and the search falls back to kAny.
WitnessReport hamidoune_witness(const Subset& a, const SubgroupCatalog& subgroups,
                                BranchPreference prefer = BranchPreference::kAny);
WitnessReport hamidoune_witness(const Subset& a);

// ---------------------------------------------------------------------------
// Covering bound derived from the second Hamidoune branch:
// |H| >= eps|A| and R <= 2/eps - 1 where eps = 2 - |AA^{-1}|/|A|.
// ---------------------------------------------------------------------------

struct CoveringBoundReport {
  bool applicable = false;  // false when the doubling ratio is >= 2
  Rational epsilon;
  WitnessReport witness;
  std::size_t subgroup_size = 0;
  Rational size_bound;   // eps|A|
  bool size_ok = false;
  std::size_t coset_count = 0;
  Rational coset_bound;  // 2/eps - 1
  bool coset_ok = false;
  std::vector<Element> representatives;
  bool pass() const { return applicable && witness.found && size_ok && coset_ok; }
};

CoveringBoundReport covering_bound_check(const Subset& a, const SubgroupCatalog& subgroups);
CoveringBoundReport covering_bound_check(const Subset& a);

}  // namespace grpdouble

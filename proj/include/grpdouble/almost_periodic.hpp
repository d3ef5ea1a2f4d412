#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "grpdouble/convolution.hpp"
#include "grpdouble/rational.hpp"
#include "grpdouble/set_algebra.hpp"
#include "grpdouble/subset.hpp"

namespace grpdouble {

// g = 1_{A^{-1}} * 1_A * 1_{A^{-1}} * 1_A, exact. Total mass |A|^4.
GroupFunction fourfold(const Subset& a);
std::vector<std::int64_t> fourfold_counts(const Subset& a);

// A symmetric neighbourhood X of the identity with g >= |A|^3/2K on X^k,
// K = |AA^{-1}|/|A|.
struct CSWitness {
  Subset x;
  std::uint64_t k = 0;
  Rational threshold;      // |A|^3 / 2K
  Rational density_ratio;  // |X| / |A|
  Subset level_set;        // T = {g >= threshold}
  GroupFunction fourfold;
};

// Greedy search: starting from {e}, visit inverse pairs {x, x^{-1}} of T in
// decreasing g order (ties by smaller index) and keep a pair when the k-th
// power of the enlarged set stays inside T. Never fails; reports what it
// found. Throws EmptySet, or PreconditionError for k == 0 or k too large.
CSWitness cs_witness(const Subset& a, std::uint64_t k);

// True when X^k ⊆ T, computed by repeated squaring with early exit. X must
// contain the identity so that every partial power lies inside X^k.
bool power_within(const Subset& x, std::uint64_t k, const Subset& t);

struct ContinuityWitness {
  Subset b;
  Subset bp;                   // B' ⊆ B, a subgroup
  std::uint64_t b_power = 0;   // B = X^b_power
  GroupFunction autocorrelation;  // f * f~
  GroupFunction smoothed;         // F = f * f~ * P_B~ * P_B
  Rational sup_norm;              // ||f * f~||_inf
  Rational bound;                 // nu ||f * f~||_inf
  Rational max_oscillation;       // sup_x max_{y in xB'} |F(y) - F(x)|
  Rational max_l2_deviation_sq;   // sup_x ||f*f~ - F||^2 in L2(P_{xB'})
};

struct ContinuityOptions {
  std::uint32_t subgroup_cap = 4096;
};

// Scans B in {X^j : 0 <= j <= 4} and B' in {subgroups inside X^4}, B' ⊆ B,
// ordered by decreasing |B'| (ties: bitmask order of B', then smaller j),
// and returns the first pair meeting both bounds:
//   sup_x max_{y in xB'} |F(y) - F(x)|           <= nu ||f*f~||_inf
//   sup_x ||f*f~ - F||_{L2(P_{xB'})}             <= nu ||f*f~||_inf
// Throws PreconditionError when X is not a symmetric neighbourhood of the
// identity or nu is outside (0, 1].
std::optional<ContinuityWitness> continuity_witness(const Subset& x, const GroupFunction& f,
                                                    const Rational& nu,
                                                    const ContinuityOptions& options = {});

struct PipelineStep {
  std::string name;
  std::string claim;
  std::vector<std::pair<std::string, std::string>> measured;
  bool pass = false;
};

struct PipelineReport {
  Rational epsilon;
  Rational nu;  // epsilon / 10
  Rational ratio;
  std::optional<Subset> x;
  Rational x4_ratio;  // |X^4| / |X|
  std::optional<Subset> b;
  std::optional<Subset> bp;
  std::optional<Subset> s;
  std::optional<Subset> h;  // <B'>
  std::size_t coset_count = 0;
  std::vector<Element> cover_reps;
  Rational fourfold_mass;
  std::vector<PipelineStep> steps;
  bool success = false;
  std::string failed_step;  // first failing step, empty on success
};

struct PipelineOptions {
  std::uint64_t k = 8;
  ContinuityOptions continuity;
};

// Runs the covering argument step by step on A with exact arithmetic and
// logs every inequality it relies on. Throws PreconditionError unless
// 0 < epsilon < 1 and |AA^{-1}| <= (2 - epsilon)|A|.
PipelineReport analytic_pipeline(const Subset& a, const Rational& epsilon,
                                 const PipelineOptions& options = {});

}  // namespace grpdouble

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "grpdouble/group.hpp"
#include "grpdouble/rational.hpp"
#include "grpdouble/serialize.hpp"
#include "grpdouble/subset.hpp"

namespace grpdouble {

// Random draws use std::mt19937_64 seeded with the 64-bit seed. Bounded
// integers in [0, n) come from raw 64-bit outputs by rejection: discard
// outputs >= 2^64 - (2^64 mod n), then reduce mod n.
using Prng = std::mt19937_64;
std::uint64_t bounded(Prng& rng, std::uint64_t n);

// k distinct elements by a partial Fisher-Yates shuffle of 0..order-1.
Subset random_subset(const Group& g, std::size_t k, std::uint64_t seed);

// "0,1,5" | "gen:1,2" (subgroup closure) | "random:<k>:<seed>".
// Throws SpecError on bad grammar, out-of-range indices or an empty result.
Subset parse_set_spec(const Group& g, const std::string& spec);

enum class SubsetMode { kExhaustive, kRandom, kAllOfSize };
enum class Check { kJump, kFreiman, kKneser, kHamidoune, kCovering, kPipeline };
enum class ReportFormat { kTable, kCsv, kJson };

inline constexpr std::size_t kExhaustiveMaxOrder = 20;
inline constexpr std::uint64_t kMaxSurveyRows = std::uint64_t{1} << 24;

const char* to_string(SubsetMode m);
SubsetMode parse_subset_mode(const std::string& name);
const char* to_string(Check c);
Check parse_check(const std::string& name);
const char* to_string(ReportFormat f);
ReportFormat parse_format(const std::string& name);

struct SurveyConfig {
  std::vector<std::string> groups;
  SubsetMode mode = SubsetMode::kExhaustive;
  std::uint64_t count = 0;               // random mode: number of draws
  std::optional<std::uint64_t> seed;     // random mode
  std::size_t size = 0;                  // all-of-size mode
  std::vector<Check> checks;             // kept sorted and unique
  std::optional<Rational> epsilon;       // covering / pipeline; default 2 - ratio and 1/2
  std::string output_path;               // empty: no file
  ReportFormat format = ReportFormat::kCsv;
  unsigned workers = 1;
};

// Throws SpecError when a field is out of range or inconsistent.
void validate(const SurveyConfig& cfg);
void normalize_checks(std::vector<Check>& checks);

SurveyConfig survey_config_from_json(const Json& j);
Json to_json(const SurveyConfig& cfg);

// A check column: passed, failed, or not applicable to this row.
enum class Outcome { kNotRun, kPass, kFail, kNotApplicable };
const char* to_string(Outcome o);

struct SurveyRow {
  std::string group_label;
  std::vector<Element> set;
  std::size_t set_size = 0;
  std::size_t product_size = 0;  // |AA^{-1}|
  Rational ratio;

  Outcome jump = Outcome::kNotRun;
  std::int64_t jump_min = 0;
  std::int64_t jump_bound = 0;

  Outcome freiman = Outcome::kNotRun;  // kFail means refuted
  std::size_t freiman_subgroup = 0;

  Outcome kneser = Outcome::kNotRun;
  std::size_t kneser_subgroup = 0;

  Outcome hamidoune = Outcome::kNotRun;
  std::string hamidoune_branch;
  std::size_t hamidoune_subgroup = 0;

  Outcome covering = Outcome::kNotRun;
  Rational covering_epsilon;
  std::size_t cover_subgroup = 0;  // frontier entry meeting R <= 2/eps, |H| <= 2|A|
  std::size_t cover_cosets = 0;

  Outcome pipeline = Outcome::kNotRun;
  std::size_t pipeline_cosets = 0;
  std::string pipeline_failed_step;

  bool operator==(const SurveyRow&) const = default;
};

struct CheckTally {
  std::uint64_t pass = 0;
  std::uint64_t fail = 0;
  std::uint64_t not_applicable = 0;
};

struct SurveySummary {
  std::uint64_t rows = 0;
  std::vector<std::pair<Check, CheckTally>> tallies;  // in check order
  // A jump failure, Freiman refutation, or missing Kneser/Hamidoune witness.
  bool guaranteed_failure = false;
};

// Evaluates the selected checks on one set. `catalog` is the group's
// subgroup catalog, needed by kneser, hamidoune and covering.
SurveyRow evaluate_row(const Subset& a, const std::vector<Check>& checks,
                       const std::optional<Rational>& epsilon, const SubgroupCatalog* catalog);

// The sets a config visits in one group, in the order rows are emitted.
std::vector<Subset> survey_sets(const Group& g, const SurveyConfig& cfg);

// All rows, ordered by group (config order) and then bitmask order of the set.
// Identical for any worker count.
std::vector<SurveyRow> collect_rows(const SurveyConfig& cfg);

SurveySummary summarize(const std::vector<SurveyRow>& rows, const std::vector<Check>& checks);

// Writes the rows to cfg.output_path (if set) in cfg.format and returns the
// summary. Throws Error when the output cannot be written.
SurveySummary run_survey(const SurveyConfig& cfg);

std::string emit_report(const std::vector<SurveyRow>& rows, const std::vector<Check>& checks,
                        ReportFormat format);
void write_report(const std::string& path, const std::string& text);

Json to_json(const SurveyRow& row, const std::vector<Check>& checks);
Json to_json(const SurveySummary& s);

}  // namespace grpdouble

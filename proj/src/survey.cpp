#include "grpdouble/survey.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <exception>
#include <fstream>
#include <limits>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include "grpdouble/error.hpp"
#include "grpdouble/set_algebra.hpp"
#include "grpdouble/structure.hpp"

namespace grpdouble {

std::uint64_t bounded(Prng& rng, std::uint64_t n) {
  if (n == 0) throw PreconditionError("bounded: empty range");
  // Largest multiple of n that fits, as 2^64 - (2^64 mod n).
  const std::uint64_t rem = (std::numeric_limits<std::uint64_t>::max() % n + 1) % n;
  const std::uint64_t limit = std::uint64_t{0} - rem;
  while (true) {
    const std::uint64_t r = rng();
    if (rem == 0 || r < limit) return r % n;
  }
}

Subset random_subset(const Group& g, std::size_t k, std::uint64_t seed) {
  if (k == 0 || k > g.order()) {
    throw SpecError("random subset size " + std::to_string(k) + " outside 1.." +
                    std::to_string(g.order()));
  }
  Prng rng(seed);
  std::vector<Element> pool(g.order());
  for (Element x = 0; x < g.order(); ++x) pool[x] = x;
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(pool[i], pool[i + bounded(rng, pool.size() - i)]);
  }
  pool.resize(k);
  return Subset::from_elements(g, pool);
}

namespace {

std::uint64_t parse_uint(std::string_view text, const std::string& what) {
  std::uint64_t v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw SpecError("bad " + what + " '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) return parts;
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Subset parse_index_list(const Group& g, std::string_view list) {
  Subset s(g);
  for (std::string_view part : split(list, ',')) {
    const std::uint64_t x = parse_uint(trim(part), "element index");
    if (x >= g.order()) {
      throw SpecError("element index " + std::to_string(x) + " out of range for order " +
                      std::to_string(g.order()));
    }
    s.insert(static_cast<Element>(x));
  }
  return s;
}

}  // namespace

Subset parse_set_spec(const Group& g, const std::string& spec) {
  const std::string_view text = trim(spec);
  Subset s(g);
  if (text.starts_with("gen:")) {
    s = subgroup_closure(parse_index_list(g, text.substr(4)));
  } else if (text.starts_with("random:")) {
    const auto parts = split(text.substr(7), ':');
    if (parts.size() != 2) throw SpecError("expected random:<k>:<seed>, got '" + spec + "'");
    s = random_subset(g, parse_uint(parts[0], "size"), parse_uint(parts[1], "seed"));
  } else {
    s = parse_index_list(g, text);
  }
  if (s.empty()) throw SpecError("set spec '" + spec + "' is empty");
  return s;
}

// ---------------------------------------------------------------------------

const char* to_string(Check c) {
  switch (c) {
    case Check::kJump: return "jump";
    case Check::kFreiman: return "freiman";
    case Check::kKneser: return "kneser";
    case Check::kHamidoune: return "hamidoune";
    case Check::kCovering: return "covering";
    case Check::kPipeline: return "pipeline";
  }
  return "";
}

Check parse_check(const std::string& name) {
  for (Check c : {Check::kJump, Check::kFreiman, Check::kKneser, Check::kHamidoune,
                  Check::kCovering, Check::kPipeline}) {
    if (name == to_string(c)) return c;
  }
  throw SpecError("unknown check '" + name + "'");
}

const char* to_string(ReportFormat f) {
  switch (f) {
    case ReportFormat::kTable: return "table";
    case ReportFormat::kCsv: return "csv";
    case ReportFormat::kJson: return "json";
  }
  return "";
}

ReportFormat parse_format(const std::string& name) {
  for (ReportFormat f : {ReportFormat::kTable, ReportFormat::kCsv, ReportFormat::kJson}) {
    if (name == to_string(f)) return f;
  }
  throw SpecError("unknown format '" + name + "'");
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::kNotRun: return "";
    case Outcome::kPass: return "pass";
    case Outcome::kFail: return "fail";
    case Outcome::kNotApplicable: return "not-applicable";
  }
  return "";
}

void normalize_checks(std::vector<Check>& checks) {
  std::sort(checks.begin(), checks.end());
  checks.erase(std::unique(checks.begin(), checks.end()), checks.end());
}

const char* to_string(SubsetMode m) {
  switch (m) {
    case SubsetMode::kExhaustive: return "exhaustive";
    case SubsetMode::kRandom: return "random";
    case SubsetMode::kAllOfSize: return "all-of-size";
  }
  return "";
}

SubsetMode parse_subset_mode(const std::string& name) {
  for (SubsetMode m : {SubsetMode::kExhaustive, SubsetMode::kRandom, SubsetMode::kAllOfSize}) {
    if (name == to_string(m)) return m;
  }
  throw SpecError("unknown subset_mode '" + name + "'");
}

namespace {

// n choose k, saturating at max().
std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace

void validate(const SurveyConfig& cfg) {
  if (cfg.groups.empty()) throw SpecError("survey: no groups");
  if (cfg.checks.empty()) throw SpecError("survey: no checks");
  if (cfg.workers == 0) throw SpecError("survey: workers must be >= 1");
  if (cfg.epsilon && (*cfg.epsilon <= Rational(0) || *cfg.epsilon >= Rational(1))) {
    throw SpecError("survey: epsilon must satisfy 0 < epsilon < 1");
  }
  for (const std::string& spec : cfg.groups) {
    const std::uint64_t order = spec_order(spec);
    switch (cfg.mode) {
      case SubsetMode::kExhaustive:
        if (order > kExhaustiveMaxOrder) {
          throw SpecError("survey: exhaustive mode needs order <= " +
                          std::to_string(kExhaustiveMaxOrder) + ", " + spec + " has " +
                          std::to_string(order));
        }
        break;
      case SubsetMode::kRandom:
        if (!cfg.seed) throw SpecError("survey: random mode needs a seed");
        if (cfg.count == 0 || cfg.count > kMaxSurveyRows) {
          throw SpecError("survey: random count must lie in 1.." + std::to_string(kMaxSurveyRows));
        }
        break;
      case SubsetMode::kAllOfSize:
        if (order > 64) throw SpecError("survey: all-of-size mode needs order <= 64");
        if (cfg.size == 0 || cfg.size > order) {
          throw SpecError("survey: subset size must lie in 1.." + std::to_string(order));
        }
        if (choose(order, cfg.size) > kMaxSurveyRows) {
          throw SpecError("survey: too many subsets of size " + std::to_string(cfg.size) +
                          " in " + spec);
        }
        break;
    }
  }
}

SurveyConfig survey_config_from_json(const Json& j) {
  if (!j.is_object()) throw SpecError("survey config must be an object");
  SurveyConfig cfg;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "groups") {
        cfg.groups = value.get<std::vector<std::string>>();
      } else if (key == "subset_mode") {
        cfg.mode = parse_subset_mode(value.get<std::string>());
      } else if (key == "count") {
        cfg.count = value.get<std::uint64_t>();
      } else if (key == "seed") {
        cfg.seed = value.get<std::uint64_t>();
      } else if (key == "size") {
        cfg.size = value.get<std::size_t>();
      } else if (key == "checks") {
        for (const auto& c : value) cfg.checks.push_back(parse_check(c.get<std::string>()));
      } else if (key == "epsilon") {
        if (!value.is_null()) cfg.epsilon = parse_rational(value.get<std::string>());
      } else if (key == "output_path") {
        cfg.output_path = value.get<std::string>();
      } else if (key == "format") {
        cfg.format = parse_format(value.get<std::string>());
      } else if (key == "workers") {
        cfg.workers = value.get<unsigned>();
      } else {
        throw SpecError("unknown survey config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw SpecError(std::string("survey config: ") + e.what());
  }
  normalize_checks(cfg.checks);
  return cfg;
}

Json to_json(const SurveyConfig& cfg) {
  std::vector<Check> sorted = cfg.checks;
  normalize_checks(sorted);
  Json checks = Json::array();
  for (Check c : sorted) checks.push_back(to_string(c));
  Json out{{"groups", cfg.groups}, {"subset_mode", to_string(cfg.mode)}};
  if (cfg.mode == SubsetMode::kRandom) out["count"] = cfg.count;
  if (cfg.seed) out["seed"] = *cfg.seed;
  if (cfg.mode == SubsetMode::kAllOfSize) out["size"] = cfg.size;
  out["checks"] = std::move(checks);
  out["epsilon"] = cfg.epsilon ? Json(to_string(*cfg.epsilon)) : Json(nullptr);
  out["output_path"] = cfg.output_path;
  out["format"] = to_string(cfg.format);
  out["workers"] = cfg.workers;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

bool selected(const std::vector<Check>& checks, Check c) {
  return std::find(checks.begin(), checks.end(), c) != checks.end();
}

Outcome pass_fail(bool ok) { return ok ? Outcome::kPass : Outcome::kFail; }

}  // namespace

SurveyRow evaluate_row(const Subset& a, const std::vector<Check>& checks,
                       const std::optional<Rational>& epsilon, const SubgroupCatalog* catalog) {
  const Group& g = a.group();
  const DoublingReport d = doubling_report(a);
  SurveyRow row;
  row.group_label = g.label();
  row.set = a.elements();
  row.set_size = d.set_size;
  row.product_size = d.product_size;
  row.ratio = d.ratio;

  auto need_catalog = [&]() -> const SubgroupCatalog& {
    if (!catalog) throw PreconditionError("evaluate_row: subgroup catalog required");
    return *catalog;
  };

  if (selected(checks, Check::kJump)) {
    const JumpReport j = jump_check(a);
    row.jump = pass_fail(j.pass);
    row.jump_min = j.min_value;
    row.jump_bound = j.bound;
  }
  if (selected(checks, Check::kFreiman)) {
    const FreimanResult f = freiman_coset(a);
    switch (f.status) {
      case FreimanStatus::kFound: row.freiman = Outcome::kPass; break;
      case FreimanStatus::kRefuted: row.freiman = Outcome::kFail; break;
      case FreimanStatus::kNotApplicable: row.freiman = Outcome::kNotApplicable; break;
    }
    if (f.subgroup) row.freiman_subgroup = f.subgroup->size();
  }
  if (selected(checks, Check::kKneser)) {
    if (!g.is_abelian()) {
      row.kneser = Outcome::kNotApplicable;
    } else {
      const WitnessReport w = kneser_witness(a, need_catalog());
      row.kneser = pass_fail(w.found);
      if (w.subgroup) row.kneser_subgroup = w.subgroup->size();
    }
  }
  if (selected(checks, Check::kHamidoune)) {
    const WitnessReport w = hamidoune_witness(a, need_catalog());
    row.hamidoune = pass_fail(w.found);
    if (w.found) {
      row.hamidoune_branch = w.theorem == Theorem::kHamidoune1 ? "1" : "2";
      row.hamidoune_subgroup = w.subgroup->size();
    }
  }
  if (selected(checks, Check::kCovering)) {
    row.covering_epsilon = epsilon ? *epsilon : Rational(2) - row.ratio;
    if (row.covering_epsilon <= Rational(0) || row.ratio > Rational(2) - row.covering_epsilon) {
      row.covering = Outcome::kNotApplicable;
    } else {
      const auto entry = bounded_cover(covering_frontier(a, need_catalog()), a, row.covering_epsilon);
      row.covering = pass_fail(entry.has_value());
      if (entry) {
        row.cover_subgroup = entry->subgroup.size();
        row.cover_cosets = entry->coset_count;
      }
    }
  }
  if (selected(checks, Check::kPipeline)) {
    const Rational eps = epsilon ? *epsilon : make_rational(1, 2);
    if (row.ratio > Rational(2) - eps) {
      row.pipeline = Outcome::kNotApplicable;
    } else {
      const PipelineReport p = analytic_pipeline(a, eps);
      row.pipeline = pass_fail(p.success);
      row.pipeline_cosets = p.coset_count;
      row.pipeline_failed_step = p.failed_step;
    }
  }
  return row;
}

namespace {

// Sets visited in one group, produced on demand by index.
class SetSource {
 public:
  SetSource(const Group& g, const SurveyConfig& cfg) : group_(g), mode_(cfg.mode) {
    switch (cfg.mode) {
      case SubsetMode::kExhaustive:
        count_ = (std::uint64_t{1} << g.order()) - 1;
        break;
      case SubsetMode::kRandom:
        sets_ = random_sets(g, cfg.count, *cfg.seed);
        count_ = sets_.size();
        break;
      case SubsetMode::kAllOfSize:
        sets_ = sets_of_size(g, cfg.size);
        count_ = sets_.size();
        break;
    }
  }

  std::uint64_t size() const { return count_; }

  Subset at(std::uint64_t i) const {
    if (mode_ == SubsetMode::kExhaustive) return Subset::from_mask(group_, i + 1);
    return sets_[i];
  }

 private:
  // Each draw includes every element independently with probability 1/2,
  // one bit of a raw 64-bit output per element; empty draws are redrawn.
  // Duplicates are dropped and the rest sorted into bitmask order.
  static std::vector<Subset> random_sets(const Group& g, std::uint64_t count, std::uint64_t seed) {
    Prng rng(seed);
    std::vector<Subset> out;
    out.reserve(count);
    while (out.size() < count) {
      Subset s(g);
      std::uint64_t bits = 0;
      for (Element x = 0; x < g.order(); ++x) {
        if (x % 64 == 0) bits = rng();
        if (bits & 1) s.insert(x);
        bits >>= 1;
      }
      if (!s.empty()) out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), bitmask_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  // Gosper's hack walks k-bit masks in increasing numeric order.
  static std::vector<Subset> sets_of_size(const Group& g, std::size_t k) {
    std::vector<Subset> out;
    const unsigned __int128 end = static_cast<unsigned __int128>(1) << g.order();
    unsigned __int128 mask = (static_cast<unsigned __int128>(1) << k) - 1;
    while (mask < end) {
      out.push_back(Subset::from_mask(g, static_cast<std::uint64_t>(mask)));
      const unsigned __int128 low = mask & (~mask + 1);
      const unsigned __int128 ripple = mask + low;
      mask = ripple | (((mask ^ ripple) >> 2) / low);
    }
    return out;
  }

  const Group& group_;
  SubsetMode mode_;
  std::uint64_t count_ = 0;
  std::vector<Subset> sets_;
};

bool needs_catalog(const std::vector<Check>& checks) {
  return selected(checks, Check::kKneser) || selected(checks, Check::kHamidoune) ||
         selected(checks, Check::kCovering);
}

void run_group(const Group& g, const SurveyConfig& cfg, const std::vector<Check>& checks,
               std::vector<SurveyRow>& out) {
  const SetSource source(g, cfg);
  std::unique_ptr<SubgroupCatalog> catalog;
  if (needs_catalog(checks)) catalog = std::make_unique<SubgroupCatalog>(g);

  const std::size_t base = out.size();
  out.resize(base + source.size());
  constexpr std::uint64_t kChunk = 256;
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    try {
      while (true) {
        const std::uint64_t begin = next.fetch_add(kChunk);
        if (begin >= source.size()) return;
        const std::uint64_t end = std::min(begin + kChunk, source.size());
        for (std::uint64_t i = begin; i < end; ++i) {
          out[base + i] = evaluate_row(source.at(i), checks, cfg.epsilon, catalog.get());
        }
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(source.size());
    }
  };

  const auto threads = static_cast<unsigned>(
      std::min<std::uint64_t>(cfg.workers, std::max<std::uint64_t>(1, source.size() / kChunk)));
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::vector<Subset> survey_sets(const Group& g, const SurveyConfig& cfg) {
  const SetSource source(g, cfg);
  std::vector<Subset> out;
  out.reserve(source.size());
  for (std::uint64_t i = 0; i < source.size(); ++i) out.push_back(source.at(i));
  return out;
}

std::vector<SurveyRow> collect_rows(const SurveyConfig& cfg) {
  validate(cfg);
  std::vector<Check> checks = cfg.checks;
  normalize_checks(checks);
  std::vector<SurveyRow> rows;
  for (const std::string& spec : cfg.groups) {
    const Group g = build_group(spec);
    run_group(g, cfg, checks, rows);
  }
  return rows;
}

SurveySummary summarize(const std::vector<SurveyRow>& rows, const std::vector<Check>& checks) {
  SurveySummary s;
  s.rows = rows.size();
  for (Check c : checks) s.tallies.emplace_back(c, CheckTally{});
  auto outcome_of = [](const SurveyRow& r, Check c) {
    switch (c) {
      case Check::kJump: return r.jump;
      case Check::kFreiman: return r.freiman;
      case Check::kKneser: return r.kneser;
      case Check::kHamidoune: return r.hamidoune;
      case Check::kCovering: return r.covering;
      case Check::kPipeline: return r.pipeline;
    }
    return Outcome::kNotRun;
  };
  for (const SurveyRow& r : rows) {
    for (auto& [c, tally] : s.tallies) {
      switch (outcome_of(r, c)) {
        case Outcome::kPass: ++tally.pass; break;
        case Outcome::kFail:
          ++tally.fail;
          if (c != Check::kCovering && c != Check::kPipeline) s.guaranteed_failure = true;
          break;
        case Outcome::kNotApplicable: ++tally.not_applicable; break;
        case Outcome::kNotRun: break;
      }
    }
  }
  return s;
}

// ---------------------------------------------------------------------------

namespace {

// Outcome wording per check: witnesses are found or not-found, the Freiman
// detector is found or refuted, the rest pass or fail.
std::string outcome_text(Check c, Outcome o) {
  if (o == Outcome::kPass && c != Check::kJump && c != Check::kCovering && c != Check::kPipeline) {
    return "found";
  }
  if (o == Outcome::kFail) {
    if (c == Check::kFreiman) return "refuted";
    if (c == Check::kKneser || c == Check::kHamidoune) return "not-found";
  }
  return to_string(o);
}

std::string join_set(const std::vector<Element>& set, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(set[i]);
  }
  return out;
}

std::string count_or_blank(std::size_t v, bool present) { return present ? std::to_string(v) : ""; }

using Cells = std::vector<std::pair<std::string, std::string>>;

// Column names and values in their fixed order.
Cells cells(const SurveyRow& r, const std::vector<Check>& checks, const char* set_sep) {
  Cells out{{"group", r.group_label},
            {"set", join_set(r.set, set_sep)},
            {"size", std::to_string(r.set_size)},
            {"product_size", std::to_string(r.product_size)},
            {"ratio", to_string(r.ratio)}};
  for (Check c : checks) {
    switch (c) {
      case Check::kJump:
        out.emplace_back("jump", outcome_text(c, r.jump));
        out.emplace_back("jump_min", std::to_string(r.jump_min));
        out.emplace_back("jump_bound", std::to_string(r.jump_bound));
        break;
      case Check::kFreiman:
        out.emplace_back("freiman", outcome_text(c, r.freiman));
        out.emplace_back("freiman_h", count_or_blank(r.freiman_subgroup, r.freiman != Outcome::kNotApplicable));
        break;
      case Check::kKneser:
        out.emplace_back("kneser", outcome_text(c, r.kneser));
        out.emplace_back("kneser_h", count_or_blank(r.kneser_subgroup, r.kneser == Outcome::kPass));
        break;
      case Check::kHamidoune:
        out.emplace_back("hamidoune", outcome_text(c, r.hamidoune));
        out.emplace_back("hamidoune_branch", r.hamidoune_branch);
        out.emplace_back("hamidoune_h", count_or_blank(r.hamidoune_subgroup, r.hamidoune == Outcome::kPass));
        break;
      case Check::kCovering:
        out.emplace_back("covering", outcome_text(c, r.covering));
        out.emplace_back("covering_epsilon", to_string(r.covering_epsilon));
        out.emplace_back("cover_h", count_or_blank(r.cover_subgroup, r.covering == Outcome::kPass));
        out.emplace_back("cover_r", count_or_blank(r.cover_cosets, r.covering == Outcome::kPass));
        break;
      case Check::kPipeline: {
        const bool ran = r.pipeline == Outcome::kPass || r.pipeline == Outcome::kFail;
        out.emplace_back("pipeline", outcome_text(c, r.pipeline));
        out.emplace_back("pipeline_r", count_or_blank(r.pipeline_cosets, ran));
        out.emplace_back("pipeline_failed_step", r.pipeline_failed_step);
        break;
      }
    }
  }
  return out;
}

std::string csv_field(const std::string& v) {
  if (v.find_first_of(",\"\n") == std::string::npos) return v;
  std::string out = "\"";
  for (char ch : v) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string emit_csv(const std::vector<SurveyRow>& rows, const std::vector<Check>& checks) {
  std::ostringstream os;
  const Cells header = cells(SurveyRow{}, checks, " ");
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i].first;
  os << '\n';
  for (const SurveyRow& r : rows) {
    const Cells c = cells(r, checks, " ");
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << csv_field(c[i].second);
    os << '\n';
  }
  return os.str();
}

std::string emit_table(const std::vector<SurveyRow>& rows, const std::vector<Check>& checks) {
  if (rows.empty()) throw PreconditionError("table report needs at least one row");
  std::vector<Cells> all;
  all.reserve(rows.size());
  for (const SurveyRow& r : rows) all.push_back(cells(r, checks, ","));
  std::vector<std::size_t> width;
  for (const auto& [name, value] : all.front()) width.push_back(name.size());
  for (const Cells& c : all) {
    for (std::size_t i = 0; i < c.size(); ++i) width[i] = std::max(width[i], c[i].second.size());
  }
  std::ostringstream os;
  auto line = [&](auto&& value_of) {
    std::string text;
    for (std::size_t i = 0; i < width.size(); ++i) {
      std::string v = value_of(i);
      if (i + 1 < width.size()) v.resize(width[i] + 2, ' ');
      text += v;
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    os << text << '\n';
  };
  line([&](std::size_t i) { return all.front()[i].first; });
  line([&](std::size_t i) { return std::string(width[i], '-'); });
  for (const Cells& c : all) line([&](std::size_t i) { return c[i].second; });
  return os.str();
}

}  // namespace

Json to_json(const SurveyRow& row, const std::vector<Check>& checks) {
  Json out = Json::object();
  for (auto& [name, value] : cells(row, checks, " ")) {
    if (name == "set") {
      out["set"] = row.set;
    } else {
      out[name] = value;
    }
  }
  return out;
}

Json to_json(const SurveySummary& s) {
  Json checks = Json::object();
  for (const auto& [c, t] : s.tallies) {
    checks[to_string(c)] = Json{{"pass", t.pass}, {"fail", t.fail}, {"not_applicable", t.not_applicable}};
  }
  return Json{{"rows", s.rows}, {"checks", std::move(checks)}, {"guaranteed_failure", s.guaranteed_failure}};
}

std::string emit_report(const std::vector<SurveyRow>& rows, const std::vector<Check>& checks,
                        ReportFormat format) {
  switch (format) {
    case ReportFormat::kCsv: return emit_csv(rows, checks);
    case ReportFormat::kTable: return emit_table(rows, checks);
    case ReportFormat::kJson: {
      Json list = Json::array();
      for (const SurveyRow& r : rows) list.push_back(to_json(r, checks));
      return dump(Json{{"summary", to_json(summarize(rows, checks))}, {"rows", std::move(list)}});
    }
  }
  return "";
}

void write_report(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw Error("failed writing '" + path + "'");
}

SurveySummary run_survey(const SurveyConfig& cfg) {
  std::vector<Check> checks = cfg.checks;
  normalize_checks(checks);
  if (!cfg.output_path.empty()) {
    // Fail on an unwritable path before doing any work.
    std::ofstream probe(cfg.output_path, std::ios::app);
    if (!probe) throw Error("cannot open '" + cfg.output_path + "' for writing");
  }
  const std::vector<SurveyRow> rows = collect_rows(cfg);
  if (!cfg.output_path.empty()) write_report(cfg.output_path, emit_report(rows, checks, cfg.format));
  return summarize(rows, checks);
}

}  // namespace grpdouble

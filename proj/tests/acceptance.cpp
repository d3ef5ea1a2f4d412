// Acceptance suite: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "grpdouble/almost_periodic.hpp"
#include "grpdouble/convolution.hpp"
#include "grpdouble/set_algebra.hpp"
#include "grpdouble/structure.hpp"
#include "grpdouble/survey.hpp"
#include "test_groups.hpp"

namespace {

using namespace grpdouble;
using grpdouble::testing::CatalogFilter;
using grpdouble::testing::for_each_nonempty_subset;
using grpdouble::testing::test_groups;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::string detail;
  // First counterexample, if any.
  std::string witness;
  std::uint64_t failures = 0;

  void fail(const std::string& what) {
    if (pass) witness = what;
    pass = false;
    ++failures;
  }
};

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

int failures = 0;

void report(int number, const char* title, const Verdict& o, double seconds) {
  std::printf("criterion %2d %-46s %s  %s (%.2fs)", number, title, o.pass ? "PASS" : "FAIL", o.detail.c_str(),
              seconds);
  if (!o.pass) {
    std::printf("  %llu failure(s), first: %s", static_cast<unsigned long long>(o.failures), o.witness.c_str());
  }
  std::printf("\n");
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

void run(int number, const char* title, const std::function<Verdict()>& body) {
  const auto start = Clock::now();
  Verdict o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  report(number, title, o, seconds_since(start));
}

std::string describe(const Group& g, const Subset& a) { return g.label() + " " + a.to_string(); }

// ---------------------------------------------------------------------------

Verdict paper_example() {
  Verdict o;
  const Group z4 = build_group("cyclic:4");
  const Subset a = Subset::of(z4, {0, 1});
  const SubgroupCatalog cat(z4);
  const DoublingReport d = doubling_report(a);
  if (d.ratio != make_rational(3, 2)) o.fail("ratio " + to_string(d.ratio));
  const std::size_t coset = smallest_containing_coset(a, cat);
  if (coset != 4) o.fail("smallest containing coset " + std::to_string(coset));
  bool has_entry = false;
  for (const CoverEntry& e : covering_frontier(a, cat).entries) {
    has_entry |= e.subgroup.size() == 1 && e.coset_count == 2;
  }
  if (!has_entry) o.fail("frontier lacks (|H|=1, R=2)");
  o.detail = "ratio " + to_string(d.ratio) + ", smallest coset " + std::to_string(coset) +
             " > 3, frontier has (1,2)";
  return o;
}

// Criteria 2, 3, 4, 5 (norm part), 7 and 8 share one exhaustive sweep.
struct SweepCounts {
  Verdict freiman, jump, symmetry, norms, hamidoune, covering;
  std::uint64_t sets = 0, freiman_sets = 0, symmetric_sets = 0, covering_sets = 0;
  double t_freiman = 0, t_jump = 0, t_symmetry = 0, t_norms = 0, t_hamidoune = 0, t_covering = 0;
  std::size_t groups = 0;
};

template <class F>
void timed(double& acc, F&& f) {
  const auto t = Clock::now();
  f();
  acc += seconds_since(t);
}

SweepCounts exhaustive_sweep() {
  SweepCounts s;
  for (const auto& tg : test_groups({.max_order = 16})) {
    const Group& g = *tg.group;
    const SubgroupCatalog cat(g);
    ++s.groups;
    for_each_nonempty_subset(g, [&](std::uint64_t mask) {
      const Subset a = Subset::from_mask(g, mask);
      const Subset a_inv = inverse_set(a);
      const Subset right = product_set(a, a_inv);
      const auto n = static_cast<std::int64_t>(a.size());
      const auto k = static_cast<std::int64_t>(right.size());
      ++s.sets;

      timed(s.t_freiman, [&] {
        if (2 * k >= 3 * n) return;  // ratio >= 3/2
        ++s.freiman_sets;
        const FreimanResult r = freiman_coset(a);
        const bool ok = r.status == FreimanStatus::kFound && is_subgroup(*r.subgroup) &&
                        a.is_subset_of(left_translate(r.representative, *r.subgroup)) &&
                        static_cast<std::int64_t>(r.subgroup->size()) <= k;
        if (!ok) s.freiman.fail(describe(g, a));
      });

      timed(s.t_jump, [&] {
        const JumpReport j = jump_check(a);
        if (!j.pass || j.bound != 2 * n - k) s.jump.fail(describe(g, a));
      });

      timed(s.t_symmetry, [&] {
        if (k >= 2 * n) return;
        ++s.symmetric_sets;
        if (right != product_set(a_inv, a)) s.symmetry.fail(describe(g, a));
      });

      timed(s.t_norms, [&] {
        const NormReport r = norm_identity_check(a);
        if (!r.pass()) s.norms.fail(describe(g, a));
      });

      timed(s.t_hamidoune, [&] {
        if (!hamidoune_witness(a, cat).found) s.hamidoune.fail(describe(g, a));
      });

      timed(s.t_covering, [&] {
        if (k >= 2 * n) return;
        ++s.covering_sets;
        const Rational eps = Rational(2) - make_rational(k, n);
        const auto entry = bounded_cover(covering_frontier(a, cat), a, eps);
        if (!entry) s.covering.fail(describe(g, a) + " eps " + to_string(eps));
      });
    });
  }
  return s;
}

GroupFunction random_rational_function(const Group& g, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 6);
  std::vector<Rational> v(g.order());
  for (Rational& x : v) x = make_rational(num(rng), den(rng));
  return GroupFunction(g, std::move(v));
}

Verdict adjoint_triples(std::size_t& groups, std::uint64_t& triples) {
  Verdict o;
  std::mt19937_64 rng(0xad701);
  for (const auto& tg : test_groups({.max_order = 16})) {
    const Group& g = *tg.group;
    ++groups;
    for (int i = 0; i < 10000; ++i) {
      const GroupFunction f = random_rational_function(g, rng);
      const GroupFunction h = random_rational_function(g, rng);
      const GroupFunction k = random_rational_function(g, rng);
      ++triples;
      if (!adjoint_identity_check(f, h, k)) o.fail(g.label() + " triple " + std::to_string(i));
    }
  }
  return o;
}

Verdict kneser_all() {
  Verdict o;
  const Group z9 = build_group("cyclic:9");
  const WitnessReport fixture = kneser_witness(Subset::of(z9, {0, 1, 3, 4, 6, 7}));
  if (!fixture.found || *fixture.subgroup != Subset::of(z9, {0, 3, 6}) || fixture.checks.size() != 2 ||
      fixture.checks[1].left != 9 || fixture.checks[1].right != 9) {
    o.fail("Z_9 fixture");
  }
  std::uint64_t sets = 0;
  std::size_t groups = 0;
  for (const auto& tg : test_groups({.max_order = 24, .abelian_only = true})) {
    const Group& g = *tg.group;
    const SubgroupCatalog cat(g);
    ++groups;
    for_each_nonempty_subset(g, [&](std::uint64_t mask) {
      const Subset a = Subset::from_mask(g, mask);
      ++sets;
      if (!kneser_witness(a, cat).found) o.fail(describe(g, a));
    });
  }
  o.detail = std::to_string(sets) + " sets in " + std::to_string(groups) +
             " abelian groups; Z_9 fixture H={0,3,6}, 9 >= 2*6-3";
  return o;
}

Verdict pipeline_cosets() {
  Verdict o;
  std::uint64_t runs = 0;
  std::size_t groups = 0;
  const Rational eps = make_rational(1, 2);
  for (const auto& tg : test_groups({.max_order = 32})) {
    const Group& g = *tg.group;
    ++groups;
    std::vector<Subset> cosets;
    for (const Subset& h : enumerate_subgroups(g)) {
      for (Element x = 0; x < g.order(); ++x) cosets.push_back(left_translate(x, h));
    }
    std::sort(cosets.begin(), cosets.end(), bitmask_less);
    cosets.erase(std::unique(cosets.begin(), cosets.end()), cosets.end());
    for (const Subset& a : cosets) {
      ++runs;
      const PipelineReport r = analytic_pipeline(a, eps);
      const auto n = static_cast<std::int64_t>(a.size());
      const bool mass = r.fourfold_mass == make_rational(n * n * n * n);
      if (!r.success || r.coset_count != 1 || !mass) {
        o.fail(describe(g, a) + (r.failed_step.empty() ? "" : " at " + r.failed_step) +
               (mass ? "" : " mass"));
      }
    }
  }
  o.detail = std::to_string(runs) + " subgroups and cosets in " + std::to_string(groups) +
             " groups, eps 1/2, all steps pass, R = 1, sum g = |A|^4";
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Verdict survey_determinism() {
  Verdict o;
  const auto dir = std::filesystem::temp_directory_path() / "grpdouble_acceptance";
  std::filesystem::create_directories(dir);
  SurveyConfig cfg;
  cfg.groups = {"cyclic:16"};
  cfg.checks = {Check::kJump, Check::kFreiman};
  cfg.format = ReportFormat::kCsv;
  std::vector<std::string> reports;
  double slowest = 0;
  std::uint64_t rows = 0;
  for (unsigned workers : {1u, 1u, 4u}) {
    cfg.workers = workers;
    cfg.output_path = (dir / ("cyclic16_" + std::to_string(reports.size()) + ".csv")).string();
    const auto start = Clock::now();
    const SurveySummary s = run_survey(cfg);
    slowest = std::max(slowest, seconds_since(start));
    rows = s.rows;
    if (s.guaranteed_failure) o.fail("guaranteed check failed");
    reports.push_back(slurp(cfg.output_path));
  }
  if (rows != 65535) o.fail(std::to_string(rows) + " rows");
  if (reports[0] != reports[1]) o.fail("two single-worker runs differ");
  if (reports[0] != reports[2]) o.fail("1 and 4 workers differ");
  if (slowest >= 600) o.fail("slowest run " + std::to_string(slowest) + "s");
  std::filesystem::remove_all(dir);
  char buf[160];
  std::snprintf(buf, sizeof buf, "%llu rows, %zu bytes, identical over 3 runs (1,1,4 workers), slowest %.2fs < 600s",
                static_cast<unsigned long long>(rows), reports[0].size(), slowest);
  o.detail = buf;
  return o;
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  run(1, "sharpness example at ratio 3/2", paper_example);

  const auto sweep_start = Clock::now();
  SweepCounts s;
  std::string sweep_error;
  try {
    s = exhaustive_sweep();
  } catch (const std::exception& e) {
    sweep_error = e.what();
  }
  const double sweep_seconds = seconds_since(sweep_start);
  auto with_error = [&](Verdict o) {
    if (!sweep_error.empty()) o.fail("exception: " + sweep_error);
    return o;
  };
  const std::string scope = " of " + std::to_string(s.sets) + " sets in " + std::to_string(s.groups) + " groups";

  s.freiman.detail = std::to_string(s.freiman_sets) + " sets with ratio < 3/2" + scope + ", zero refutations";
  if (s.t_freiman >= 600) s.freiman.fail("over 10 minutes");
  report(2, "Freiman coset detector, order <= 16", with_error(s.freiman), s.t_freiman);

  {
    Verdict& o = s.jump;
    const JumpReport z4 = jump_check(Subset::of(build_group("cyclic:4"), {0, 1}));
    const JumpReport z8 = jump_check(Subset::of(build_group("cyclic:8"), {0, 2, 4}));
    if (z4.min_value != 1 || z4.bound != 1) o.fail("Z_4 {0,1} not an equality case");
    if (z8.min_value != 2 || z8.bound != 2) o.fail("Z_8 {0,2,4} not an equality case");
    o.detail = "min >= 2|A| - |AA^{-1}| on all" + scope + "; equality 1 on Z_4 {0,1}, 2 on Z_8 {0,2,4}";
    report(3, "jump inequality, order <= 16", with_error(o), s.t_jump);
  }

  s.symmetry.detail = std::to_string(s.symmetric_sets) + " sets with ratio < 2" + scope + ", AA^{-1} = A^{-1}A";
  report(4, "symmetry of AA^{-1} below ratio 2", with_error(s.symmetry), s.t_symmetry);

  {
    std::size_t groups = 0;
    std::uint64_t triples = 0;
    const auto start = Clock::now();
    Verdict o = s.norms;
    try {
      const Verdict adj = adjoint_triples(groups, triples);
      if (!adj.pass) o.fail("adjoint triple " + adj.witness);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    o.detail = "norms equal and >= |A|^4/|AA^{-1}| on all" + scope + "; " + std::to_string(triples) +
               " random rational adjoint triples over " + std::to_string(groups) + " groups";
    report(5, "norm and adjoint identities, order <= 16", with_error(o), s.t_norms + seconds_since(start));
  }

  run(6, "Kneser witness, abelian order <= 24", kneser_all);

  s.hamidoune.detail = "witness found for all" + scope;
  report(7, "Hamidoune witness, order <= 16", with_error(s.hamidoune), s.t_hamidoune);

  s.covering.detail = std::to_string(s.covering_sets) + " sets with ratio < 2" + scope +
                      ", eps = 2 - ratio, R <= 2/eps and |H| <= 2|A|";
  report(8, "bounded covering frontier entry", with_error(s.covering), s.t_covering);

  run(9, "pipeline on subgroups and cosets, order <= 32", pipeline_cosets);
  run(10, "survey determinism and speed, cyclic:16", survey_determinism);

  std::printf("exhaustive sweep %.2fs; %d of 10 criteria failed\n", sweep_seconds, failures);
  return failures == 0 ? 0 : 1;
}

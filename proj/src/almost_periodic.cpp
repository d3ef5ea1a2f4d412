#include "grpdouble/almost_periodic.hpp"

#include <algorithm>
#include <array>

#include "grpdouble/error.hpp"

namespace grpdouble {

namespace {

std::int64_t isize(const Subset& s) { return static_cast<std::int64_t>(s.size()); }

Rational qsize(const Subset& s) { return make_rational(isize(s)); }

}  // namespace

std::vector<std::int64_t> fourfold_counts(const Subset& a) {
  if (a.empty()) throw EmptySet("fourfold");
  const Group& g = a.group();
  const std::vector<std::int64_t> h = indicator_convolution(inverse_set(a), a);
  std::vector<Element> support;
  for (Element x = 0; x < g.order(); ++x) {
    if (h[x] != 0) support.push_back(x);
  }
  std::vector<std::int64_t> out(g.order(), 0);
  for (Element y : support) {
    const auto row = g.row(y);
    for (Element z : support) out[row[z]] += h[y] * h[z];
  }
  return out;
}

GroupFunction fourfold(const Subset& a) {
  return from_counts(a.group(), fourfold_counts(a));
}

bool power_within(const Subset& x, std::uint64_t k, const Subset& t) {
  if (k == 0) return Subset::identity_set(x.group()).is_subset_of(t);
  if (!x.is_subset_of(t)) return false;
  std::optional<Subset> result;
  Subset base = x;
  while (true) {
    if (k & 1) {
      result = result ? product_set(*result, base) : base;
      if (!result->is_subset_of(t)) return false;
    }
    k >>= 1;
    if (k == 0) return true;
    Subset squared = product_set(base, base);
    if (!squared.is_subset_of(t)) return false;
    if (squared == base) {
      return !result || product_set(*result, base).is_subset_of(t);
    }
    base = std::move(squared);
  }
}

CSWitness cs_witness(const Subset& a, std::uint64_t k) {
  if (a.empty()) throw EmptySet("cs_witness");
  if (k == 0) throw PreconditionError("cs_witness: k must be >= 1");
  if (k > kMaxSetPower) throw PreconditionError("cs_witness: k too large");
  const Group& g = a.group();
  const std::vector<std::int64_t> counts = fourfold_counts(a);
  const std::int64_t n = isize(a);
  const std::int64_t doubled = isize(product_set(a, inverse_set(a)));

  CSWitness w{Subset::identity_set(g), k, make_rational(n * n * n * n, 2 * doubled),
              Rational(0), Subset(g), from_counts(g, counts)};
  // g(x) >= |A|^4 / (2|AA^{-1}|)
  for (Element x = 0; x < g.order(); ++x) {
    if (counts[x] * 2 * doubled >= n * n * n * n) w.level_set.insert(x);
  }

  struct Pair {
    Element lo;
    Element hi;
    std::int64_t value;
  };
  std::vector<Pair> pairs;
  w.level_set.for_each([&](Element x) {
    const Element xi = g.inv_unchecked(x);
    if (x == g.identity() || xi < x || !w.level_set.contains_unchecked(xi)) return;
    pairs.push_back({x, xi, std::min(counts[x], counts[xi])});
  });
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const Pair& p, const Pair& q) { return p.value > q.value; });

  for (const Pair& p : pairs) {
    Subset trial = w.x;
    trial.insert(p.lo);
    trial.insert(p.hi);
    if (power_within(trial, k, w.level_set)) w.x = std::move(trial);
  }
  w.density_ratio = make_rational(isize(w.x), n);
  return w;
}

namespace {

struct SmoothedCandidate {
  std::uint64_t power;
  Subset b;
  std::optional<GroupFunction> smoothed;
};

}  // namespace

std::optional<ContinuityWitness> continuity_witness(const Subset& x, const GroupFunction& f,
                                                    const Rational& nu,
                                                    const ContinuityOptions& options) {
  const Group& g = x.group();
  if (&f.group() != &g) throw GroupMismatch();
  if (!x.contains_unchecked(g.identity()) || inverse_set(x) != x) {
    throw PreconditionError("continuity_witness: X must be symmetric and contain the identity");
  }
  if (nu <= Rational(0) || nu > Rational(1)) {
    throw PreconditionError("continuity_witness: nu must lie in (0, 1]");
  }

  const GroupFunction autocorrelation = convolve(f, adjoint(f));
  const Rational sup_norm = autocorrelation.sup_norm();
  const Rational bound = nu * sup_norm;
  const Rational bound_sq = bound * bound;

  // Distinct powers X^0 .. X^4.
  std::vector<SmoothedCandidate> powers;
  Subset current = Subset::identity_set(g);
  for (std::uint64_t j = 0; j <= 4; ++j) {
    if (j > 0) current = product_set(current, x);
    if (powers.empty() || powers.back().b != current) powers.push_back({j, current, std::nullopt});
  }
  const Subset& x4 = powers.back().b;

  const SubgroupCatalog inside(x4, options.subgroup_cap);
  std::vector<std::size_t> order(inside.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) {
    return inside[p].size() > inside[q].size();
  });

  for (std::size_t idx : order) {
    const Subset& bp = inside[idx];
    for (SmoothedCandidate& cand : powers) {
      if (!bp.is_subset_of(cand.b)) continue;
      if (!cand.smoothed) {
        const GroupMeasure pb = GroupMeasure::uniform(cand.b);
        cand.smoothed = convolve_measure(autocorrelation, convolve(pb.adjoint(), pb));
      }
      const GroupFunction& smoothed = *cand.smoothed;

      Rational max_osc(0);
      bool ok = true;
      for (Element y = 0; y < g.order() && ok; ++y) {
        const Rational osc = local_linf_distance(smoothed, y, bp);
        max_osc = std::max(max_osc, osc);
        ok = osc <= bound;
      }
      if (!ok) continue;

      std::vector<Rational> diff(g.order());
      for (Element y = 0; y < g.order(); ++y) diff[y] = autocorrelation[y] - smoothed[y];
      const GroupFunction deviation(g, std::move(diff));
      Rational max_l2(0);
      for (Element y = 0; y < g.order() && ok; ++y) {
        const Rational l2 = local_l2_distance_squared(deviation, Rational(0), y, bp);
        max_l2 = std::max(max_l2, l2);
        ok = l2 <= bound_sq;
      }
      if (!ok) continue;

      return ContinuityWitness{cand.b,    bp,       cand.power, autocorrelation, smoothed,
                               sup_norm,  bound,    max_osc,    max_l2};
    }
  }
  return std::nullopt;
}

namespace {

class StepLog {
 public:
  StepLog(PipelineReport& report, std::string name, std::string claim) : report_(report) {
    step_.name = std::move(name);
    step_.claim = std::move(claim);
  }
  void record(std::string key, const Rational& v) { step_.measured.emplace_back(std::move(key), to_string(v)); }
  void record(std::string key, std::int64_t v) { step_.measured.emplace_back(std::move(key), std::to_string(v)); }
  void record(std::string key, std::string v) { step_.measured.emplace_back(std::move(key), std::move(v)); }
  void finish(bool pass) {
    step_.pass = pass;
    if (!pass && report_.failed_step.empty()) report_.failed_step = step_.name;
    report_.steps.push_back(std::move(step_));
  }

 private:
  PipelineReport& report_;
  PipelineStep step_;
};

}  // namespace

PipelineReport analytic_pipeline(const Subset& a, const Rational& epsilon,
                                 const PipelineOptions& options) {
  if (a.empty()) throw EmptySet("analytic_pipeline");
  if (epsilon <= Rational(0) || epsilon >= Rational(1)) {
    throw PreconditionError("analytic_pipeline: epsilon must satisfy 0 < epsilon < 1");
  }
  const Group& g = a.group();
  const Subset a_inv = inverse_set(a);
  const std::int64_t n = isize(a);
  const std::int64_t doubled = isize(product_set(a, a_inv));
  const Rational size = make_rational(n);
  const Rational cube = size * size * size;

  PipelineReport report;
  report.epsilon = epsilon;
  report.nu = epsilon / Rational(10);
  report.ratio = make_rational(doubled, n);
  if (report.ratio > Rational(2) - epsilon) {
    throw PreconditionError("analytic_pipeline: |AA^{-1}|/|A| = " + to_string(report.ratio) +
                            " exceeds 2 - epsilon = " + to_string(Rational(2) - epsilon));
  }

  // Step 1: almost-periodic neighbourhood X with g large on X^k.
  const CSWitness cs = cs_witness(a, options.k);
  const GroupFunction& four = cs.fourfold;
  report.fourfold_mass = four.sum();
  report.x = cs.x;
  const Subset xk = set_power(cs.x, options.k);
  const Subset x4 = set_power(cs.x, 4);
  report.x4_ratio = make_rational(isize(x4), isize(cs.x));
  {
    StepLog log(report, "almost-periodicity", "g(x) >= |A|^3/4 on X^k and |X^4| <= 4|A|");
    Rational min_g = four[xk.first()];
    xk.for_each([&](Element y) { min_g = std::min(min_g, four[y]); });
    const Rational proof_threshold = cube / Rational(4);
    log.record("|X|", isize(cs.x));
    log.record("k", static_cast<std::int64_t>(options.k));
    log.record("min g on X^k", min_g);
    log.record("|A|^3/4", proof_threshold);
    log.record("|A|^3/2K (true K)", cs.threshold);
    log.record("|X^4|", isize(x4));
    log.record("4|A|", 4 * n);
    log.record("2K|A| (true K)", 2 * doubled);
    log.record("|X^4|/|X|", report.x4_ratio);
    log.record("sum g", report.fourfold_mass);
    log.finish(min_g >= proof_threshold && isize(x4) <= 4 * n);
  }

  // Step 2: continuity witness for f = 1_{A^{-1}} with nu = epsilon/10.
  const auto cw = continuity_witness(cs.x, GroupFunction::indicator(a_inv), report.nu,
                                     options.continuity);
  if (!cw) {
    StepLog log(report, "continuity", "B' ⊆ B ⊆ X^4 meeting both continuity bounds at nu");
    log.record("nu", report.nu);
    log.record("witness", std::string("not-found"));
    log.finish(false);
    report.success = false;
    return report;
  }
  report.b = cw->b;
  report.bp = cw->bp;
  const GroupFunction& conv = cw->autocorrelation;  // 1_{A^{-1}} * 1_A
  const GroupFunction& smoothed = cw->smoothed;     // F
  {
    StepLog log(report, "continuity",
                "sup_x ||1_{A^{-1}}*1_A - F(x)||^2 in L2(P_{xB'}) <= 4 nu^2 |A|^2");
    Rational worst(0);
    for (Element y = 0; y < g.order(); ++y) {
      worst = std::max(worst, local_l2_distance_squared(conv, smoothed[y], y, cw->bp));
    }
    const Rational limit = Rational(4) * report.nu * report.nu * size * size;
    log.record("B = X^j, j", static_cast<std::int64_t>(cw->b_power));
    log.record("|B|", isize(cw->b));
    log.record("|B'|", isize(cw->bp));
    log.record("||f*f~||_inf", cw->sup_norm);
    log.record("nu ||f*f~||_inf", cw->bound);
    log.record("max oscillation of F on xB'", cw->max_oscillation);
    log.record("max ||f*f~ - F||^2 on xB'", cw->max_l2_deviation_sq);
    log.record("max combined L2^2", worst);
    log.record("4 nu^2 |A|^2", limit);
    log.finish(worst <= limit);
  }

  // Step 3: no value of F strictly between eps|A|/4 and 3eps|A|/4.
  const Rational low = epsilon * size / Rational(4);
  const Rational high = Rational(3) * epsilon * size / Rational(4);
  {
    StepLog log(report, "gap", "no x with eps|A|/4 < F(x) < 3eps|A|/4");
    std::int64_t violations = 0;
    for (Element y = 0; y < g.order(); ++y) {
      if (smoothed[y] > low && smoothed[y] < high) ++violations;
    }
    Rational floor_on_support = conv.sup_norm();
    conv.support().for_each([&](Element y) { floor_on_support = std::min(floor_on_support, conv[y]); });
    log.record("eps|A|/4", low);
    log.record("3eps|A|/4", high);
    log.record("violations", violations);
    log.record("min 1_{A^{-1}}*1_A on support", floor_on_support);
    log.record("(2-K)|A|", 2 * n - doubled);
    log.record("eps|A|", epsilon * size);
    log.finish(violations == 0);
  }

  // Step 4: the level set S is non-empty.
  Subset s(g);
  for (Element y = 0; y < g.order(); ++y) {
    if (smoothed[y] > high) s.insert(y);
  }
  report.s = s;
  {
    StepLog log(report, "level-set", "S = {F > 3eps|A|/4} non-empty; <g, P_B~*P_B> >= |A|^3/4");
    const GroupMeasure pb = GroupMeasure::uniform(cw->b);
    const GroupMeasure spread = convolve(pb.adjoint(), pb);
    const Rational pairing = inner_product(four, spread.weights());
    const Rational swapped = inner_product(smoothed, conv);
    log.record("|S|", isize(s));
    log.record("<g, P_B~*P_B>", pairing);
    log.record("<F, 1_{A^{-1}}*1_A>", swapped);
    log.record("|A|^3/4", cube / Rational(4));
    log.record("eps|A|^3/4", epsilon * cube / Rational(4));
    log.finish(!s.empty() && pairing >= cube / Rational(4) && pairing > epsilon * cube / Rational(4));
  }

  // Step 5: S is right-invariant under H = <B'>.
  const Subset h = subgroup_closure(cw->bp);
  report.h = h;
  {
    StepLog log(report, "invariance", "S H = S for H = <B'>");
    const Subset sh = product_set(s, h);
    log.record("|H|", isize(h));
    log.record("|SH|", isize(sh));
    log.record("|S|", isize(s));
    log.finish(sh == s);
  }

  // Step 6: some left coset of H holds a 3eps/4 share of it in A.
  {
    StepLog log(report, "dense-coset", "exists x with |A ∩ xH| >= 3eps|H|/4");
    Element best_x = 0;
    std::int64_t best = -1;
    for (Element y = 0; y < g.order(); ++y) {
      const auto hit = static_cast<std::int64_t>(left_translate(y, h).intersection_size(a));
      if (hit > best) {
        best = hit;
        best_x = y;
      }
    }
    const Rational need = Rational(3) * epsilon * qsize(h) / Rational(4);
    log.record("x", static_cast<std::int64_t>(best_x));
    log.record("|A ∩ xH|", best);
    log.record("3eps|H|/4", need);
    log.finish(make_rational(best) >= need);
  }

  // Step 7: cover A by the left cosets of H it meets.
  {
    StepLog log(report, "cover", "A ⊆ XH with X one representative per coset meeting A");
    CosetTrace trace = coset_trace(a, h);
    report.coset_count = trace.coset_count;
    report.cover_reps = trace.representatives;
    const Subset reps = Subset::from_elements(g, trace.representatives);
    const bool covered = a.is_subset_of(product_set(reps, h));
    log.record("R", static_cast<std::int64_t>(trace.coset_count));
    log.record("|H|", isize(h));
    log.record("2/eps", Rational(2) / epsilon);
    log.finish(covered);
  }

  report.success = report.failed_step.empty();
  return report;
}

}  // namespace grpdouble

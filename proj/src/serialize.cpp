#include "grpdouble/serialize.hpp"

namespace grpdouble {

namespace {

Json rational(const Rational& q) { return to_string(q); }

template <typename T>
Json optional_subset(const std::optional<T>& s) {
  return s ? to_json(*s) : Json(nullptr);
}

}  // namespace

Json to_json(const Subset& s) {
  Json out = Json::array();
  s.for_each([&](Element x) { out.push_back(x); });
  return out;
}

Json to_json(const GroupFunction& f) {
  Json out = Json::array();
  for (const Rational& v : f.values()) out.push_back(rational(v));
  return out;
}

Json to_json(const DoublingReport& r) {
  return Json{{"set_size", r.set_size},
              {"product_size", r.product_size},
              {"ratio", rational(r.ratio)},
              {"symmetric_agreement", r.symmetric_agreement}};
}

Json to_json(const FreimanResult& r) {
  Json out{{"status", to_string(r.status)}, {"ratio", rational(r.ratio)}};
  if (r.status == FreimanStatus::kNotApplicable) return out;
  out["subgroup"] = optional_subset(r.subgroup);
  out["representative"] = r.representative;
  out["closure_holds"] = r.closure_holds;
  out["coset_contains_set"] = r.coset_contains_set;
  out["size_bound_holds"] = r.size_bound_holds;
  return out;
}

Json to_json(const JumpReport& r) {
  return Json{{"min_value", r.min_value}, {"bound", r.bound}, {"argmin", r.argmin}, {"pass", r.pass}};
}

Json to_json(const CoverEntry& e) {
  return Json{{"subgroup_size", e.subgroup.size()},
              {"coset_count", e.coset_count},
              {"subgroup", to_json(e.subgroup)},
              {"representatives", e.representatives}};
}

Json to_json(const CoveringFrontier& f) {
  Json out = Json::array();
  for (const CoverEntry& e : f.entries) out.push_back(to_json(e));
  return out;
}

Json to_json(const WitnessReport& r) {
  Json checks = Json::array();
  for (const WitnessCheck& c : r.checks) {
    checks.push_back(Json{{"relation", c.relation}, {"left", c.left}, {"right", c.right}, {"pass", c.pass}});
  }
  return Json{{"theorem", r.found ? to_string(r.theorem) : "none"},
              {"found", r.found},
              {"subgroup", optional_subset(r.subgroup)},
              {"checks", std::move(checks)}};
}

Json to_json(const CoveringBoundReport& r) {
  Json out{{"applicable", r.applicable}, {"epsilon", rational(r.epsilon)}};
  if (!r.applicable) return out;
  out["witness"] = to_json(r.witness);
  if (!r.witness.found) return out;
  out["subgroup_size"] = r.subgroup_size;
  out["size_bound"] = rational(r.size_bound);
  out["size_ok"] = r.size_ok;
  out["coset_count"] = r.coset_count;
  out["coset_bound"] = rational(r.coset_bound);
  out["coset_ok"] = r.coset_ok;
  out["representatives"] = r.representatives;
  out["pass"] = r.pass();
  return out;
}

Json to_json(const IndicatorIdentityReport& r) {
  return Json{{"support_matches", r.support_matches},
              {"pointwise_matches", r.pointwise_matches},
              {"first_discrepancy", r.first_discrepancy ? Json(*r.first_discrepancy) : Json(nullptr)},
              {"pass", r.pass()}};
}

Json to_json(const NormReport& r) {
  return Json{{"left_norm_sq", r.left_norm_sq},   {"right_norm_sq", r.right_norm_sq},
              {"set_size", r.set_size},           {"product_size", r.product_size},
              {"lower_bound", rational(r.lower_bound)}, {"norms_equal", r.norms_equal},
              {"bound_holds", r.bound_holds},     {"pass", r.pass()}};
}

Json to_json(const CSWitness& w) {
  return Json{{"k", w.k},
              {"x", to_json(w.x)},
              {"x_size", w.x.size()},
              {"density_ratio", rational(w.density_ratio)},
              {"threshold", rational(w.threshold)},
              {"level_set", to_json(w.level_set)},
              {"fourfold", to_json(w.fourfold)}};
}

Json to_json(const ContinuityWitness& w) {
  return Json{{"b_power", w.b_power},
              {"b", to_json(w.b)},
              {"b_prime", to_json(w.bp)},
              {"sup_norm", rational(w.sup_norm)},
              {"bound", rational(w.bound)},
              {"max_oscillation", rational(w.max_oscillation)},
              {"max_l2_deviation_sq", rational(w.max_l2_deviation_sq)}};
}

Json to_json(const PipelineReport& r) {
  Json steps = Json::array();
  for (const PipelineStep& s : r.steps) {
    Json measured = Json::object();
    for (const auto& [key, value] : s.measured) measured[key] = value;
    steps.push_back(Json{{"name", s.name}, {"claim", s.claim}, {"pass", s.pass}, {"measured", std::move(measured)}});
  }
  return Json{{"epsilon", rational(r.epsilon)},
              {"nu", rational(r.nu)},
              {"ratio", rational(r.ratio)},
              {"success", r.success},
              {"failed_step", r.failed_step.empty() ? Json(nullptr) : Json(r.failed_step)},
              {"x", optional_subset(r.x)},
              {"x4_ratio", rational(r.x4_ratio)},
              {"b", optional_subset(r.b)},
              {"b_prime", optional_subset(r.bp)},
              {"s", optional_subset(r.s)},
              {"h", optional_subset(r.h)},
              {"coset_count", r.coset_count},
              {"cover_representatives", r.cover_reps},
              {"fourfold_mass", rational(r.fourfold_mass)},
              {"steps", std::move(steps)}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace grpdouble

#include "grpdouble/convolution.hpp"

#include "grpdouble/set_algebra.hpp"

namespace grpdouble {

FastGroupFunction to_fast(const GroupFunction& f) {
  std::vector<double> v(f.size());
  for (Element x = 0; x < f.size(); ++x) v[x] = to_double(f[x]);
  return FastGroupFunction(f.group(), std::move(v));
}

GroupFunction from_counts(const Group& g, std::span<const std::int64_t> counts) {
  std::vector<Rational> v;
  v.reserve(counts.size());
  for (std::int64_t c : counts) v.push_back(make_rational(c));
  return GroupFunction(g, std::move(v));
}

GroupMeasure GroupMeasure::uniform(const Subset& s) {
  if (s.empty()) throw EmptySet("uniform measure");
  GroupFunction w(s.group());
  const Rational mass = make_rational(1, static_cast<std::int64_t>(s.size()));
  s.for_each([&](Element x) { w[x] = mass; });
  return GroupMeasure(std::move(w));
}

GroupMeasure GroupMeasure::point_mass(const Group& g, Element x) {
  return GroupMeasure(GroupFunction::point_mass(g, x));
}

GroupMeasure GroupMeasure::from_weights(GroupFunction weights) {
  for (const Rational& w : weights.values()) {
    if (w < Rational(0)) throw PreconditionError("measure weights must be non-negative");
  }
  if (weights.sum() != Rational(1)) throw PreconditionError("measure weights must sum to 1");
  return GroupMeasure(std::move(weights));
}

GroupMeasure GroupMeasure::adjoint() const { return GroupMeasure(grpdouble::adjoint(weights_)); }

GroupMeasure convolve(const GroupMeasure& mu, const GroupMeasure& nu) {
  return GroupMeasure::from_weights(convolve(mu.weights(), nu.weights()));
}

std::vector<std::int64_t> indicator_convolution(const Subset& a, const Subset& b) {
  detail::require_same_group(a.group(), b.group());
  const Group& g = a.group();
  std::vector<std::int64_t> counts(g.order(), 0);
  const std::vector<Element> b_elems = b.elements();
  a.for_each([&](Element x) {
    const auto row = g.row(x);
    for (Element y : b_elems) ++counts[row[y]];
  });
  return counts;
}

IndicatorIdentityReport indicator_conv_identities(const Subset& a, const Subset& b) {
  detail::require_same_group(a.group(), b.group());
  const Group& g = a.group();
  const GroupFunction conv = convolve(GroupFunction::indicator(a), GroupFunction::indicator(b));
  IndicatorIdentityReport report;
  const Subset ab = product_set(a, b);
  const Subset b_inv = inverse_set(b);
  for (Element x = 0; x < g.order(); ++x) {
    const bool in_support = conv[x] != Rational(0);
    if (in_support != ab.contains_unchecked(x)) {
      report.support_matches = false;
      if (!report.first_discrepancy) report.first_discrepancy = x;
    }
    const auto overlap = static_cast<std::int64_t>(left_translate(x, b_inv).intersection_size(a));
    if (conv[x] != make_rational(overlap)) {
      report.pointwise_matches = false;
      if (!report.first_discrepancy) report.first_discrepancy = x;
    }
  }
  return report;
}

AdjointIdentityValues adjoint_identity_values(const GroupFunction& f, const GroupFunction& g,
                                              const GroupFunction& h) {
  AdjointIdentityValues v;
  v.conv_first = inner_product(convolve(f, g), h);
  v.adjoint_left = inner_product(g, convolve(adjoint(f), h));
  v.adjoint_right = inner_product(f, convolve(h, adjoint(g)));
  return v;
}

bool adjoint_identity_check(const GroupFunction& f, const GroupFunction& g,
                            const GroupFunction& h) {
  return adjoint_identity_values(f, g, h).equal();
}

NormReport norm_identity_check(const Subset& a) {
  if (a.empty()) throw EmptySet("norm_identity_check");
  const Subset a_inv = inverse_set(a);
  auto norm_sq = [](const std::vector<std::int64_t>& v) {
    std::int64_t s = 0;
    for (std::int64_t x : v) s += x * x;
    return s;
  };
  NormReport r;
  r.left_norm_sq = norm_sq(indicator_convolution(a_inv, a));
  r.right_norm_sq = norm_sq(indicator_convolution(a, a_inv));
  r.set_size = a.size();
  r.product_size = product_set(a, a_inv).size();
  const auto n = static_cast<std::int64_t>(a.size());
  r.lower_bound = make_rational(n * n * n * n, static_cast<std::int64_t>(r.product_size));
  r.norms_equal = r.left_norm_sq == r.right_norm_sq;
  r.bound_holds = make_rational(r.right_norm_sq) >= r.lower_bound;
  return r;
}

}  // namespace grpdouble

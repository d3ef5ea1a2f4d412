#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "grpdouble/error.hpp"
#include "grpdouble/group.hpp"
#include "grpdouble/rational.hpp"
#include "grpdouble/subset.hpp"

namespace grpdouble {

// A function G -> Scalar stored densely by element index. The scalar type is
// the numeric mode: Rational for exact work (GroupFunction), double for
// surveys (FastGroupFunction).
template <class Scalar>
class BasicGroupFunction {
 public:
  explicit BasicGroupFunction(const Group& g) : group_(&g), values_(g.order(), Scalar(0)) {}

  BasicGroupFunction(const Group& g, std::vector<Scalar> values)
      : group_(&g), values_(std::move(values)) {
    if (values_.size() != g.order()) {
      throw std::invalid_argument("group function length does not match group order");
    }
  }

  static BasicGroupFunction indicator(const Subset& s) {
    BasicGroupFunction f(s.group());
    s.for_each([&](Element x) { f.values_[x] = Scalar(1); });
    return f;
  }

  static BasicGroupFunction point_mass(const Group& g, Element x, Scalar weight = Scalar(1)) {
    BasicGroupFunction f(g);
    f.at(x) = weight;
    return f;
  }

  const Group& group() const noexcept { return *group_; }
  std::size_t size() const noexcept { return values_.size(); }

  const Scalar& operator[](Element x) const noexcept { return values_[x]; }
  Scalar& operator[](Element x) noexcept { return values_[x]; }
  const Scalar& at(Element x) const { return values_.at(x); }
  Scalar& at(Element x) { return values_.at(x); }
  std::span<const Scalar> values() const noexcept { return values_; }

  Scalar sum() const {
    Scalar s(0);
    for (const Scalar& v : values_) s += v;
    return s;
  }

  // max_x |f(x)|
  Scalar sup_norm() const {
    using std::abs;
    Scalar m(0);
    for (const Scalar& v : values_) {
      const Scalar a = abs(v);
      if (a > m) m = a;
    }
    return m;
  }

  Subset support() const {
    Subset s(*group_);
    for (Element x = 0; x < values_.size(); ++x) {
      if (values_[x] != Scalar(0)) s.insert(x);
    }
    return s;
  }

  friend bool operator==(const BasicGroupFunction& a, const BasicGroupFunction& b) {
    return a.group_ == b.group_ && a.values_ == b.values_;
  }

 private:
  const Group* group_;
  std::vector<Scalar> values_;
};

using GroupFunction = BasicGroupFunction<Rational>;
using FastGroupFunction = BasicGroupFunction<double>;

FastGroupFunction to_fast(const GroupFunction& f);
GroupFunction from_counts(const Group& g, std::span<const std::int64_t> counts);

// Non-negative exact weights summing to 1.
class GroupMeasure {
 public:
  // Uniform probability measure P_S. Throws EmptySet.
  static GroupMeasure uniform(const Subset& s);
  static GroupMeasure point_mass(const Group& g, Element x);
  // Throws PreconditionError on negative weights or total mass != 1.
  static GroupMeasure from_weights(GroupFunction weights);

  const Group& group() const noexcept { return weights_.group(); }
  const GroupFunction& weights() const noexcept { return weights_; }
  const Rational& operator[](Element x) const noexcept { return weights_[x]; }
  Subset support() const { return weights_.support(); }

  // The measure giving x the mass of x^{-1}.
  GroupMeasure adjoint() const;

 private:
  explicit GroupMeasure(GroupFunction weights) : weights_(std::move(weights)) {}
  GroupFunction weights_;
};

namespace detail {

inline void require_same_group(const Group& a, const Group& b) {
  if (&a != &b) throw GroupMismatch();
}

}  // namespace detail

// (f * g)(x) = sum_{yz = x} f(y) g(z), accumulated over supp f.
template <class Scalar>
BasicGroupFunction<Scalar> convolve(const BasicGroupFunction<Scalar>& f,
                                    const BasicGroupFunction<Scalar>& g) {
  const Group& grp = f.group();
  detail::require_same_group(grp, g.group());
  std::vector<Element> g_support;
  for (Element z = 0; z < grp.order(); ++z) {
    if (g[z] != Scalar(0)) g_support.push_back(z);
  }
  BasicGroupFunction<Scalar> out(grp);
  for (Element y = 0; y < grp.order(); ++y) {
    if (f[y] == Scalar(0)) continue;
    const auto row = grp.row(y);
    for (Element z : g_support) out[row[z]] += f[y] * g[z];
  }
  return out;
}

// f~(x) = f(x^{-1}); conjugation is the identity on real scalars.
template <class Scalar>
BasicGroupFunction<Scalar> adjoint(const BasicGroupFunction<Scalar>& f) {
  const Group& grp = f.group();
  BasicGroupFunction<Scalar> out(grp);
  for (Element x = 0; x < grp.order(); ++x) out[x] = f[grp.inv_unchecked(x)];
  return out;
}

// (f * mu)(x) = sum_z f(x z^{-1}) mu(z)
template <class Scalar>
BasicGroupFunction<Scalar> convolve_measure(const BasicGroupFunction<Scalar>& f,
                                            const GroupMeasure& m) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return convolve(f, m.weights());
  } else {
    return convolve(f, to_fast(m.weights()));
  }
}

// mu * nu, again a probability measure.
GroupMeasure convolve(const GroupMeasure& mu, const GroupMeasure& nu);

template <class Scalar>
Scalar inner_product(const BasicGroupFunction<Scalar>& f, const BasicGroupFunction<Scalar>& g) {
  detail::require_same_group(f.group(), g.group());
  Scalar s(0);
  for (Element x = 0; x < f.size(); ++x) s += f[x] * g[x];
  return s;
}

template <class Scalar>
Scalar l2_norm_squared(const BasicGroupFunction<Scalar>& f) {
  return inner_product(f, f);
}

// (1/|B'|) sum_{y in xB'} (F(y) - c)^2, exact in exact mode.
template <class Scalar>
Scalar local_l2_distance_squared(const BasicGroupFunction<Scalar>& f, const Scalar& c, Element x,
                                 const Subset& bp) {
  detail::require_same_group(f.group(), bp.group());
  if (bp.empty()) throw EmptySet("local_l2_distance");
  if (x >= f.group().order()) throw std::out_of_range("local_l2_distance: element out of range");
  const auto row = f.group().row(x);
  Scalar s(0);
  bp.for_each([&](Element b) {
    const Scalar d = f[row[b]] - c;
    s += d * d;
  });
  return s / Scalar(static_cast<std::int64_t>(bp.size()));
}

// ((1/|B'|) sum_{y in xB'} (F(y) - c)^2)^{1/2}
template <class Scalar>
double local_l2_distance(const BasicGroupFunction<Scalar>& f, const Scalar& c, Element x,
                         const Subset& bp) {
  const Scalar sq = local_l2_distance_squared(f, c, x, bp);
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return std::sqrt(to_double(sq));
  } else {
    return std::sqrt(sq);
  }
}

// max_{y in xB'} |F(y) - F(x)|
template <class Scalar>
Scalar local_linf_distance(const BasicGroupFunction<Scalar>& f, Element x, const Subset& bp) {
  using std::abs;
  detail::require_same_group(f.group(), bp.group());
  if (bp.empty()) throw EmptySet("local_linf_distance");
  const Scalar& center = f.at(x);
  const auto row = f.group().row(x);
  Scalar m(0);
  bp.for_each([&](Element b) {
    const Scalar d = abs(f[row[b]] - center);
    if (d > m) m = d;
  });
  return m;
}

// 1_A * 1_B as integer counts: entry x is |A ∩ xB^{-1}|.
std::vector<std::int64_t> indicator_convolution(const Subset& a, const Subset& b);

struct IndicatorIdentityReport {
  bool support_matches = true;    // supp 1_A*1_B == AB
  bool pointwise_matches = true;  // 1_A*1_B(x) == |A ∩ xB^{-1}|
  std::optional<Element> first_discrepancy;
  bool pass() const { return support_matches && pointwise_matches; }
};

// Checks both indicator identities against product_set and direct
// intersection counts, using the exact convolution.
IndicatorIdentityReport indicator_conv_identities(const Subset& a, const Subset& b);

struct AdjointIdentityValues {
  Rational conv_first;    // <f*g, h>
  Rational adjoint_left;  // <g, f~*h>
  Rational adjoint_right; // <f, h*g~>
  bool equal() const { return conv_first == adjoint_left && adjoint_left == adjoint_right; }
};

AdjointIdentityValues adjoint_identity_values(const GroupFunction& f, const GroupFunction& g,
                                              const GroupFunction& h);
bool adjoint_identity_check(const GroupFunction& f, const GroupFunction& g,
                            const GroupFunction& h);

struct NormReport {
  std::int64_t left_norm_sq = 0;   // ||1_{A^{-1}} * 1_A||^2
  std::int64_t right_norm_sq = 0;  // ||1_A * 1_{A^{-1}}||^2
  std::size_t set_size = 0;
  std::size_t product_size = 0;    // |AA^{-1}|
  Rational lower_bound;            // |A|^4 / |AA^{-1}|
  bool norms_equal = false;
  bool bound_holds = false;        // right_norm_sq >= lower_bound
  bool pass() const { return norms_equal && bound_holds; }
};

NormReport norm_identity_check(const Subset& a);

}  // namespace grpdouble

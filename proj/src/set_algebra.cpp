#include "grpdouble/set_algebra.hpp"

#include <algorithm>
#include <optional>
#include <unordered_set>

#include "grpdouble/error.hpp"

namespace grpdouble {

namespace {

void require_same_group(const Subset& a, const Subset& b) {
  if (&a.group() != &b.group()) throw GroupMismatch();
}

struct WordsHash {
  std::size_t operator()(const Subset::Words& w) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (std::uint64_t x : w) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

Subset::Words words_of(const Subset& s) {
  const auto w = s.words();
  return Subset::Words(w.begin(), w.end());
}

}  // namespace

Subset product_set(const Subset& a, const Subset& b) {
  require_same_group(a, b);
  const Group& g = a.group();
  Subset out(g);
  std::uint64_t* dst = out.word_data();
  if (a.size() <= b.size()) {
    const std::uint64_t* src = b.words().data();
    a.for_each([&](Element x) { g.left_translate_or(x, src, dst); });
  } else {
    const std::uint64_t* src = a.words().data();
    b.for_each([&](Element y) { g.right_translate_or(y, src, dst); });
  }
  out.recount();
  return out;
}

Subset inverse_set(const Subset& a) {
  const Group& g = a.group();
  Subset out(g);
  a.for_each([&](Element x) { out.insert(g.inv_unchecked(x)); });
  return out;
}

Subset left_translate(Element x, const Subset& a) {
  const Group& g = a.group();
  if (x >= g.order()) throw std::out_of_range("left_translate: element index out of range");
  Subset out(g);
  g.left_translate_or(x, a.words().data(), out.word_data());
  out.recount();
  return out;
}

Subset right_translate(const Subset& a, Element x) {
  const Group& g = a.group();
  if (x >= g.order()) throw std::out_of_range("right_translate: element index out of range");
  Subset out(g);
  g.right_translate_or(x, a.words().data(), out.word_data());
  out.recount();
  return out;
}

Subset set_power(const Subset& x, std::uint64_t k) {
  if (k > kMaxSetPower) {
    throw PreconditionError("set_power: exponent " + std::to_string(k) + " exceeds limit");
  }
  const Group& g = x.group();
  if (k == 0) return Subset::identity_set(g);
  std::optional<Subset> result;
  Subset base = x;
  while (k != 0) {
    if (k & 1) result = result ? product_set(*result, base) : base;
    k >>= 1;
    if (k == 0) break;
    Subset squared = product_set(base, base);
    if (squared == base) {
      // base is a subgroup or otherwise idempotent: every further square is base.
      result = result ? product_set(*result, base) : base;
      break;
    }
    base = std::move(squared);
  }
  return *result;
}

DoublingReport doubling_report(const Subset& a) {
  if (a.empty()) throw EmptySet("doubling_report");
  const Subset inv = inverse_set(a);
  const Subset right = product_set(a, inv);
  const Subset left = product_set(inv, a);
  DoublingReport r;
  r.set_size = a.size();
  r.product_size = right.size();
  r.ratio = make_rational(static_cast<std::int64_t>(right.size()),
                          static_cast<std::int64_t>(a.size()));
  r.symmetric_agreement = right == left;
  return r;
}

Subset generated_subgroup(const Group& g, std::span<const Element> gens) {
  Subset out = Subset::identity_set(g);
  std::vector<Element> queue{g.identity()};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const auto r = g.row(queue[i]);
    for (Element s : gens) {
      const Element y = r[s];
      if (!out.contains_unchecked(y)) {
        out.insert(y);
        queue.push_back(y);
      }
    }
  }
  return out;
}

namespace {

// Closure of S, also returning the generators actually needed (at most
// log2 |<S>| of them).
std::pair<Subset, std::vector<Element>> closure_with_generators(const Subset& s) {
  const Group& g = s.group();
  std::vector<Element> gens;
  Subset closure = Subset::identity_set(g);
  s.for_each([&](Element x) {
    if (!closure.contains_unchecked(x)) {
      gens.push_back(x);
      closure = generated_subgroup(g, gens);
    }
  });
  return {std::move(closure), std::move(gens)};
}

}  // namespace

Subset subgroup_closure(const Subset& s) {
  if (s.empty()) throw EmptySet("subgroup_closure");
  return closure_with_generators(s).first;
}

bool is_subgroup(const Subset& a) {
  if (a.empty()) return false;
  const Group& g = a.group();
  if (!a.contains_unchecked(g.identity())) return false;
  bool closed = true;
  a.for_each([&](Element x) {
    if (!closed) return;
    if (!a.contains_unchecked(g.inv_unchecked(x))) {
      closed = false;
      return;
    }
    const auto r = g.row(x);
    a.for_each([&](Element y) {
      if (closed && !a.contains_unchecked(r[y])) closed = false;
    });
  });
  return closed;
}

SubgroupCatalog::SubgroupCatalog(const Group& g, std::uint32_t cap) : group_(&g) {
  if (g.order() > cap) {
    throw CapExceeded("subgroup enumeration: group order " + std::to_string(g.order()) +
                      " exceeds cap " + std::to_string(cap));
  }
  enumerate(Subset::full(g));
}

SubgroupCatalog::SubgroupCatalog(const Subset& within, std::uint32_t cap) : group_(&within.group()) {
  if (group_->order() > cap) {
    throw CapExceeded("subgroup enumeration: group order " + std::to_string(group_->order()) +
                      " exceeds cap " + std::to_string(cap));
  }
  enumerate(within);
}

void SubgroupCatalog::enumerate(const Subset& within) {
  const Group& g = *group_;
  if (!within.contains_unchecked(g.identity())) return;

  std::unordered_set<Subset::Words, WordsHash> seen;
  std::vector<Subset> found{Subset::identity_set(g)};
  std::vector<std::vector<Element>> gens{{}};
  seen.insert(words_of(found[0]));

  for (std::size_t i = 0; i < found.size(); ++i) {
    // Elements whose extension of found[i] is already known: xH and Hx give
    // the same subgroup as x.
    Subset done = found[i];
    const Subset candidates = within - found[i];
    candidates.for_each([&](Element x) {
      if (done.contains_unchecked(x)) return;
      std::vector<Element> next_gens = gens[i];
      next_gens.push_back(x);
      Subset next = generated_subgroup(g, next_gens);
      done |= left_translate(x, found[i]);
      done |= right_translate(found[i], x);
      if (!next.is_subset_of(within)) return;
      if (seen.insert(words_of(next)).second) {
        found.push_back(std::move(next));
        gens.push_back(std::move(next_gens));
      }
    });
  }

  std::vector<std::size_t> order(found.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (found[a].size() != found[b].size()) return found[a].size() < found[b].size();
    return bitmask_less(found[a], found[b]);
  });
  subgroups_.reserve(found.size());
  generators_.reserve(found.size());
  for (std::size_t i : order) {
    subgroups_.push_back(std::move(found[i]));
    generators_.push_back(std::move(gens[i]));
  }
}

std::vector<Subset> enumerate_subgroups(const Group& g, std::uint32_t cap) {
  SubgroupCatalog catalog(g, cap);
  return {catalog.subgroups().begin(), catalog.subgroups().end()};
}

std::vector<Subset> enumerate_subgroups_within(const Subset& s, std::uint32_t cap) {
  SubgroupCatalog catalog(s, cap);
  return {catalog.subgroups().begin(), catalog.subgroups().end()};
}

CosetTrace coset_trace(const Subset& a, const Subset& h) {
  require_same_group(a, h);
  if (!is_subgroup(h)) throw PreconditionError("coset_trace: H is not a subgroup");
  const Group& g = a.group();
  CosetTrace trace;
  Subset covered(g);
  a.for_each([&](Element x) {
    if (covered.contains_unchecked(x)) return;
    const Subset coset = left_translate(x, h);
    trace.representatives.push_back(x);
    trace.max_intersection = std::max(trace.max_intersection, coset.intersection_size(a));
    covered |= coset;
  });
  trace.coset_count = trace.representatives.size();
  return trace;
}

Group subgroup_as_group(const Subset& h, std::string label) {
  if (!is_subgroup(h)) throw PreconditionError("subgroup_as_group: not a subgroup");
  const Group& g = h.group();
  const std::vector<Element> elems = h.elements();
  std::vector<Element> index(g.order(), 0);
  for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<Element>(i);
  const auto m = static_cast<std::uint32_t>(elems.size());
  CayleyTable t{m, index[g.identity()], std::vector<Element>(static_cast<std::size_t>(m) * m)};
  for (std::uint32_t i = 0; i < m; ++i) {
    for (std::uint32_t j = 0; j < m; ++j) {
      t.entries[static_cast<std::size_t>(i) * m + j] = index[g.mul_unchecked(elems[i], elems[j])];
    }
  }
  return Group::from_table(std::move(t), std::move(label));
}

}  // namespace grpdouble

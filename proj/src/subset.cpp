#include "grpdouble/subset.hpp"

#include "grpdouble/error.hpp"

namespace grpdouble {

Subset::Subset(const Group& g) : group_(&g), words_(g.word_count(), 0) {}

Subset Subset::of(const Group& g, std::initializer_list<Element> elems) {
  return from_elements(g, std::span<const Element>(elems.begin(), elems.size()));
}

Subset Subset::from_elements(const Group& g, std::span<const Element> elems) {
  Subset s(g);
  for (Element x : elems) s.insert(x);
  return s;
}

Subset Subset::from_mask(const Group& g, std::uint64_t mask) {
  if (g.order() > 64) throw std::invalid_argument("from_mask: group order exceeds 64");
  if (g.order() < 64 && (mask >> g.order()) != 0) {
    throw std::out_of_range("from_mask: mask has bits beyond the group order");
  }
  Subset s(g);
  s.words_[0] = mask;
  s.size_ = static_cast<std::size_t>(std::popcount(mask));
  return s;
}

Subset Subset::full(const Group& g) {
  Subset s(g);
  for (std::size_t i = 0; i < s.words_.size(); ++i) s.words_[i] = ~std::uint64_t{0};
  if (const std::uint32_t tail = g.order() % 64; tail != 0) {
    s.words_.back() = (std::uint64_t{1} << tail) - 1;
  }
  s.size_ = g.order();
  return s;
}

Subset Subset::identity_set(const Group& g) {
  Subset s(g);
  s.insert(g.identity());
  return s;
}

bool Subset::contains(Element x) const {
  if (x >= group_->order()) throw std::out_of_range("contains: element index out of range");
  return contains_unchecked(x);
}

void Subset::insert(Element x) {
  if (x >= group_->order()) {
    throw std::out_of_range("insert: element " + std::to_string(x) + " out of range for " +
                            group_->label());
  }
  const std::uint64_t bit = std::uint64_t{1} << (x & 63);
  if (!(words_[x >> 6] & bit)) {
    words_[x >> 6] |= bit;
    ++size_;
  }
}

void Subset::erase(Element x) {
  if (x >= group_->order()) throw std::out_of_range("erase: element index out of range");
  const std::uint64_t bit = std::uint64_t{1} << (x & 63);
  if (words_[x >> 6] & bit) {
    words_[x >> 6] &= ~bit;
    --size_;
  }
}

std::vector<Element> Subset::elements() const {
  std::vector<Element> out;
  out.reserve(size_);
  for_each([&](Element x) { out.push_back(x); });
  return out;
}

Element Subset::first() const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] != 0) return static_cast<Element>(i * 64 + std::countr_zero(words_[i]));
  }
  throw EmptySet("first");
}

void Subset::require_same_group(const Subset& other) const {
  if (group_ != other.group_) throw GroupMismatch();
}

bool Subset::is_subset_of(const Subset& other) const {
  require_same_group(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

bool Subset::intersects(const Subset& other) const {
  require_same_group(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & other.words_[i]) return true;
  }
  return false;
}

std::size_t Subset::intersection_size(const Subset& other) const {
  require_same_group(other);
  std::size_t n = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    n += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
  }
  return n;
}

void Subset::recount() noexcept {
  size_ = 0;
  for (std::uint64_t w : words_) size_ += static_cast<std::size_t>(std::popcount(w));
}

std::uint64_t Subset::mask() const {
  if (group_->order() > 64) throw std::invalid_argument("mask: group order exceeds 64");
  return words_[0];
}

Subset& Subset::operator|=(const Subset& other) {
  require_same_group(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  recount();
  return *this;
}

Subset& Subset::operator&=(const Subset& other) {
  require_same_group(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  recount();
  return *this;
}

Subset& Subset::operator-=(const Subset& other) {
  require_same_group(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  recount();
  return *this;
}

std::string Subset::to_string() const {
  std::string out = "{";
  bool first_elem = true;
  for_each([&](Element x) {
    if (!first_elem) out += ',';
    out += std::to_string(x);
    first_elem = false;
  });
  return out + "}";
}

bool bitmask_less(const Subset& a, const Subset& b) noexcept {
  const auto wa = a.words();
  const auto wb = b.words();
  for (std::size_t i = wa.size(); i-- > 0;) {
    if (wa[i] != wb[i]) return wa[i] < wb[i];
  }
  return false;
}

}  // namespace grpdouble

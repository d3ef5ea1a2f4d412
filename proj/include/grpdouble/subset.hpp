#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "grpdouble/group.hpp"

namespace grpdouble {

// A subset of a finite group, stored as a dense bit-vector over element
// indices with a cached cardinality. Value type; holds a non-owning pointer
// to its group.
class Subset {
 public:
  using Words = boost::container::small_vector<std::uint64_t, 4>;

  explicit Subset(const Group& g);

  static Subset of(const Group& g, std::initializer_list<Element> elems);
  static Subset from_elements(const Group& g, std::span<const Element> elems);
  // Bit i of mask selects element i; requires order <= 64.
  static Subset from_mask(const Group& g, std::uint64_t mask);
  static Subset full(const Group& g);
  static Subset identity_set(const Group& g);

  const Group& group() const noexcept { return *group_; }
  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  bool contains(Element x) const;
  bool contains_unchecked(Element x) const noexcept {
    return (words_[x >> 6] >> (x & 63)) & 1u;
  }
  void insert(Element x);
  void erase(Element x);

  std::vector<Element> elements() const;
  // Smallest element index; the set must be non-empty.
  Element first() const;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w != 0) {
        f(static_cast<Element>(i * 64 + std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  bool is_subset_of(const Subset& other) const;
  bool intersects(const Subset& other) const;
  std::size_t intersection_size(const Subset& other) const;

  std::span<const std::uint64_t> words() const noexcept { return {words_.data(), words_.size()}; }
  // Direct word access; call recount() after mutating.
  std::uint64_t* word_data() noexcept { return words_.data(); }
  void recount() noexcept;
  std::uint64_t mask() const;  // order <= 64 only

  Subset& operator|=(const Subset& other);
  Subset& operator&=(const Subset& other);
  Subset& operator-=(const Subset& other);
  friend Subset operator|(Subset a, const Subset& b) { return a |= b; }
  friend Subset operator&(Subset a, const Subset& b) { return a &= b; }
  friend Subset operator-(Subset a, const Subset& b) { return a -= b; }
  friend bool operator==(const Subset& a, const Subset& b) noexcept {
    return a.group_ == b.group_ && a.words_ == b.words_;
  }

  // "{0,1,5}"
  std::string to_string() const;

 private:
  void require_same_group(const Subset& other) const;

  const Group* group_;
  Words words_;
  std::size_t size_ = 0;
};

// Integer bitmask order (element n-1 is the most significant bit).
bool bitmask_less(const Subset& a, const Subset& b) noexcept;

}  // namespace grpdouble

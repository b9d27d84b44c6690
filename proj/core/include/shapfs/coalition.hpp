#pragma once

#include <cstdint>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace shapfs {

/// A subset of feature indices in [0, capacity), stored as a fixed-width
/// bit pattern so it can be hashed in O(words) into the valuation cache.
class Coalition {
 public:
  Coalition() = default;
  explicit Coalition(int capacity) : capacity_(capacity) {
    if (capacity < 0) throw std::invalid_argument("Coalition: negative capacity");
    words_.assign((static_cast<std::size_t>(capacity) + 63) / 64, 0);
  }

  static Coalition from_mask(int capacity, std::uint64_t mask) {
    Coalition c(capacity);
    if (capacity < 64 && (mask >> capacity) != 0)
      throw std::invalid_argument("Coalition: mask exceeds capacity");
    if (!c.words_.empty()) c.words_[0] = mask;
    c.card_ = popcount64(mask);
    return c;
  }

  static Coalition from_indices(int capacity, const std::vector<int>& idx) {
    Coalition c(capacity);
    for (int i : idx) c.add(i);
    return c;
  }

  int capacity() const { return capacity_; }
  int cardinality() const { return card_; }
  bool empty() const { return card_ == 0; }

  bool contains(int i) const {
    check_index(i);
    return (words_[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1u;
  }

  void add(int i) {
    check_index(i);
    std::uint64_t& w = words_[static_cast<std::size_t>(i) >> 6];
    std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (!(w & bit)) { w |= bit; ++card_; }
  }

  void remove(int i) {
    check_index(i);
    std::uint64_t& w = words_[static_cast<std::size_t>(i) >> 6];
    std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (w & bit) { w &= ~bit; --card_; }
  }

  Coalition with(int i) const {
    Coalition c = *this;
    c.add(i);
    return c;
  }

  /// Low 64 bits; valid as a full mask only when capacity <= 64.
  std::uint64_t mask() const { return words_.empty() ? 0 : words_[0]; }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(card_));
    for (int i = 0; i < capacity_; ++i)
      if (contains(i)) out.push_back(i);
    return out;
  }

  Coalition unite(const Coalition& o) const {
    Coalition c(capacity_);
    for (std::size_t k = 0; k < words_.size(); ++k) c.words_[k] = words_[k] | o.words_[k];
    c.card_ = c.recount();
    return c;
  }

  Coalition intersect(const Coalition& o) const {
    Coalition c(capacity_);
    for (std::size_t k = 0; k < words_.size(); ++k) c.words_[k] = words_[k] & o.words_[k];
    c.card_ = c.recount();
    return c;
  }

  bool disjoint(const Coalition& o) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & o.words_[k]) return false;
    return true;
  }

  bool operator==(const Coalition& o) const {
    return capacity_ == o.capacity_ && words_ == o.words_;
  }
  bool operator!=(const Coalition& o) const { return !(*this == o); }

  std::size_t hash() const {
    std::size_t h = std::hash<int>{}(capacity_);
    for (std::uint64_t w : words_) h = h * 0x9e3779b97f4a7c15ull + std::hash<std::uint64_t>{}(w);
    return h;
  }

  std::string to_string() const;

 private:
  static int popcount64(std::uint64_t x) {
    int n = 0;
    while (x) { x &= x - 1; ++n; }
    return n;
  }

  int recount() const {
    int n = 0;
    for (std::uint64_t w : words_) n += popcount64(w);
    return n;
  }

  void check_index(int i) const {
    if (i < 0 || i >= capacity_)
      throw std::out_of_range("Coalition: index " + std::to_string(i) +
                              " outside capacity " + std::to_string(capacity_));
  }

  int capacity_ = 0;
  int card_ = 0;
  std::vector<std::uint64_t> words_;
};

struct CoalitionHash {
  std::size_t operator()(const Coalition& c) const { return c.hash(); }
};

}  // namespace shapfs

#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace stel {

/// Fixed-universe bit set. Used for concept extensions (one bit per domain
/// element) and role extensions (one bit per ordered element pair).
/// Bits beyond the universe size are kept zero.
class DenseSet {
 public:
  DenseSet() = default;

  explicit DenseSet(std::size_t universe)
      : size_(universe), blocks_((universe + 63) / 64, 0) {}

  static DenseSet full(std::size_t universe) {
    DenseSet s(universe);
    for (auto& b : s.blocks_) b = ~std::uint64_t{0};
    s.trim();
    return s;
  }

  std::size_t universe() const { return size_; }

  bool test(std::size_t i) const {
    return (blocks_[i >> 6] >> (i & 63)) & 1u;
  }

  void set(std::size_t i) { blocks_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { blocks_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto b : blocks_) c += static_cast<std::size_t>(std::popcount(b));
    return c;
  }

  bool none() const {
    for (auto b : blocks_) {
      if (b != 0) return false;
    }
    return true;
  }

  bool any() const { return !none(); }

  DenseSet& operator&=(const DenseSet& o) {
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] &= o.blocks_[i];
    return *this;
  }

  DenseSet& operator|=(const DenseSet& o) {
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] |= o.blocks_[i];
    return *this;
  }

  /// Set difference: removes every element of o.
  DenseSet& operator-=(const DenseSet& o) {
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] &= ~o.blocks_[i];
    return *this;
  }

  DenseSet complement() const {
    DenseSet r(size_);
    for (std::size_t i = 0; i < blocks_.size(); ++i) r.blocks_[i] = ~blocks_[i];
    r.trim();
    return r;
  }

  friend DenseSet operator&(DenseSet a, const DenseSet& b) { return a &= b; }
  friend DenseSet operator|(DenseSet a, const DenseSet& b) { return a |= b; }
  friend DenseSet operator-(DenseSet a, const DenseSet& b) { return a -= b; }

  friend bool operator==(const DenseSet& a, const DenseSet& b) {
    return a.size_ == b.size_ && a.blocks_ == b.blocks_;
  }

  template <typename Fn>
  void for_each(Fn fn) const {
    for (std::size_t i = 0; i < size_; ++i) {
      if (test(i)) fn(i);
    }
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  friend bool is_subset(const DenseSet& a, const DenseSet& b) {
    for (std::size_t i = 0; i < a.blocks_.size(); ++i) {
      if (a.blocks_[i] & ~b.blocks_[i]) return false;
    }
    return true;
  }

  friend std::size_t intersection_count(const DenseSet& a, const DenseSet& b) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < a.blocks_.size(); ++i) {
      c += static_cast<std::size_t>(std::popcount(a.blocks_[i] & b.blocks_[i]));
    }
    return c;
  }

 private:
  void trim() {
    if (size_ & 63) blocks_.back() &= (std::uint64_t{1} << (size_ & 63)) - 1;
    if (size_ == 0) blocks_.clear();
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> blocks_;
};

}  // namespace stel

#pragma once

#include <cstdint>
#include <vector>

namespace cdim {

// Fixed-universe bitset over element indices. All deliberate: word access for fast
// intersection loops, FNV hashing for interning, deterministic iteration order.
class DynBitset {
 public:
  DynBitset() : size_(0) {}
  explicit DynBitset(uint32_t size) : size_(size), w_((size + 63) / 64, 0) {}

  uint32_t size() const { return size_; }
  bool test(uint32_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(uint32_t i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
  void reset(uint32_t i) { w_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }

  uint32_t count() const {
    uint64_t c = 0;
    for (uint64_t w : w_) c += __builtin_popcountll(w);
    return static_cast<uint32_t>(c);
  }

  bool any() const {
    for (uint64_t w : w_)
      if (w) return true;
    return false;
  }

  DynBitset& operator&=(const DynBitset& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  DynBitset& operator|=(const DynBitset& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  friend DynBitset operator&(DynBitset a, const DynBitset& b) { return a &= b; }
  friend DynBitset operator|(DynBitset a, const DynBitset& b) { return a |= b; }

  bool operator==(const DynBitset& o) const { return size_ == o.size_ && w_ == o.w_; }
  bool operator!=(const DynBitset& o) const { return !(*this == o); }

  bool is_subset_of(const DynBitset& o) const {
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  // first set bit at or after i, or size() if none
  uint32_t next(uint32_t i) const {
    if (i >= size_) return size_;
    uint32_t wi = i >> 6;
    uint64_t w = w_[wi] & (~uint64_t(0) << (i & 63));
    while (true) {
      if (w) {
        uint32_t r = (wi << 6) + __builtin_ctzll(w);
        return r < size_ ? r : size_;
      }
      if (++wi >= w_.size()) return size_;
      w = w_[wi];
    }
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (uint32_t i = next(0); i < size_; i = next(i + 1)) fn(i);
  }

  std::vector<uint32_t> members() const {
    std::vector<uint32_t> out;
    out.reserve(count());
    for_each([&](uint32_t i) { out.push_back(i); });
    return out;
  }

  uint64_t hash() const {
    uint64_t h = 1469598103934665603ull;
    for (uint64_t w : w_) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return h;
  }

  // lexicographic on words; total order used for deterministic tie-breaks
  bool lex_less(const DynBitset& o) const {
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] != o.w_[i]) return w_[i] < o.w_[i];
    return false;
  }

  const std::vector<uint64_t>& words() const { return w_; }

 private:
  uint32_t size_;
  std::vector<uint64_t> w_;
};

}  // namespace cdim

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace odot {

/// Fixed-universe bit set over the flat element indices of an OgPoset.
/// Universes of up to 256 elements are stored inline.
class ElementSet {
public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe) : universe_(universe), nwords_((universe + 63) / 64) {
    if (nwords_ > kInline) heap_.assign(nwords_, 0);
  }

  std::size_t universe() const { return universe_; }

  bool test(std::size_t i) const { return (data()[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { data()[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { data()[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t count() const {
    std::size_t n = 0;
    const auto* w = data();
    for (std::size_t i = 0; i < nwords_; ++i) n += static_cast<std::size_t>(std::popcount(w[i]));
    return n;
  }

  bool empty() const {
    const auto* w = data();
    for (std::size_t i = 0; i < nwords_; ++i)
      if (w[i] != 0) return false;
    return true;
  }

  bool is_subset_of(const ElementSet& other) const {
    const auto *a = data(), *b = other.data();
    for (std::size_t i = 0; i < nwords_; ++i)
      if ((a[i] & ~b[i]) != 0) return false;
    return true;
  }

  bool intersects(const ElementSet& other) const {
    const auto *a = data(), *b = other.data();
    for (std::size_t i = 0; i < nwords_; ++i)
      if ((a[i] & b[i]) != 0) return true;
    return false;
  }

  ElementSet& operator|=(const ElementSet& o) {
    auto* a = data();
    const auto* b = o.data();
    for (std::size_t i = 0; i < nwords_; ++i) a[i] |= b[i];
    return *this;
  }
  ElementSet& operator&=(const ElementSet& o) {
    auto* a = data();
    const auto* b = o.data();
    for (std::size_t i = 0; i < nwords_; ++i) a[i] &= b[i];
    return *this;
  }
  ElementSet& operator-=(const ElementSet& o) {
    auto* a = data();
    const auto* b = o.data();
    for (std::size_t i = 0; i < nwords_; ++i) a[i] &= ~b[i];
    return *this;
  }

  friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
  friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
  friend ElementSet operator-(ElementSet a, const ElementSet& b) { return a -= b; }
  friend bool operator==(const ElementSet& a, const ElementSet& b) {
    return a.universe_ == b.universe_ && std::equal(a.data(), a.data() + a.nwords_, b.data());
  }

  /// Calls `f(i)` for every member in ascending order.
  template <typename F>
  void for_each(F&& f) const {
    const auto* words = data();
    for (std::size_t w = 0; w < nwords_; ++w) {
      std::uint64_t bits = words[w];
      while (bits != 0) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(bits));
        f(w * 64 + bit);
        bits &= bits - 1;
      }
    }
  }

  std::vector<std::size_t> to_vector() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  std::size_t hash() const {
    std::size_t h = universe_ * 0x9e3779b97f4a7c15ULL;
    const auto* w = data();
    for (std::size_t i = 0; i < nwords_; ++i) h = (h ^ std::hash<std::uint64_t>{}(w[i])) * 0x100000001b3ULL;
    return h;
  }

private:
  static constexpr std::size_t kInline = 4;

  std::uint64_t* data() { return nwords_ > kInline ? heap_.data() : inline_.data(); }
  const std::uint64_t* data() const { return nwords_ > kInline ? heap_.data() : inline_.data(); }

  std::size_t universe_ = 0;
  std::size_t nwords_ = 0;
  std::array<std::uint64_t, kInline> inline_{};
  std::vector<std::uint64_t> heap_;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const { return s.hash(); }
};

}  // namespace odot

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace gmv {

// Dense bit-vector subset of {0..n-1} for a fixed universe size n.
class WorldSet {
 public:
  WorldSet() = default;
  explicit WorldSet(std::size_t n, bool full = false)
      : n_(n), words_((n + 63) / 64, full ? ~std::uint64_t{0} : 0) {
    trim();
  }
  WorldSet(std::size_t n, std::initializer_list<std::size_t> members) : WorldSet(n) {
    for (auto w : members) insert(w);
  }

  static WorldSet full(std::size_t n) { return WorldSet(n, true); }
  static WorldSet singleton(std::size_t n, std::size_t w) {
    WorldSet s(n);
    s.insert(w);
    return s;
  }

  std::size_t universe() const noexcept { return n_; }

  bool contains(std::size_t w) const noexcept {
    return (words_[w >> 6] >> (w & 63)) & 1U;
  }
  void insert(std::size_t w) noexcept { words_[w >> 6] |= std::uint64_t{1} << (w & 63); }
  void erase(std::size_t w) noexcept { words_[w >> 6] &= ~(std::uint64_t{1} << (w & 63)); }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto x : words_) c += static_cast<std::size_t>(std::popcount(x));
    return c;
  }
  bool empty() const noexcept {
    for (auto x : words_) {
      if (x) return false;
    }
    return true;
  }
  bool is_full() const noexcept { return count() == n_; }

  bool subset_of(const WorldSet& o) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~o.words_[i]) return false;
    }
    return true;
  }
  bool intersects(const WorldSet& o) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & o.words_[i]) return true;
    }
    return false;
  }

  WorldSet& operator&=(const WorldSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  WorldSet& operator|=(const WorldSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  WorldSet& operator-=(const WorldSet& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  WorldSet operator~() const {
    WorldSet r = *this;
    for (auto& x : r.words_) x = ~x;
    r.trim();
    return r;
  }
  friend WorldSet operator&(WorldSet a, const WorldSet& b) { return a &= b; }
  friend WorldSet operator|(WorldSet a, const WorldSet& b) { return a |= b; }
  friend WorldSet operator-(WorldSet a, const WorldSet& b) { return a -= b; }

  friend bool operator==(const WorldSet& a, const WorldSet& b) noexcept {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }
  // Orders by universe, then as binary numbers with world 0 least significant.
  friend bool operator<(const WorldSet& a, const WorldSet& b) noexcept {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    for (std::size_t i = a.words_.size(); i-- > 0;) {
      if (a.words_[i] != b.words_[i]) return a.words_[i] < b.words_[i];
    }
    return false;
  }

  // Smallest member, or universe() when empty.
  std::size_t first() const noexcept { return next(0); }
  std::size_t next(std::size_t from) const noexcept {
    if (from >= n_) return n_;
    std::size_t i = from >> 6;
    std::uint64_t w = words_[i] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (w) return (i << 6) + static_cast<std::size_t>(std::countr_zero(w));
      if (++i >= words_.size()) return n_;
      w = words_[i];
    }
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        f((i << 6) + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for_each([&](std::size_t w) { out.push_back(w); });
    return out;
  }

  std::size_t hash() const noexcept {
    std::size_t h = n_;
    for (auto x : words_) h = h * 1000003U ^ std::hash<std::uint64_t>{}(x);
    return h;
  }

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  std::string to_string() const {
    std::string s = "{";
    bool first_member = true;
    for_each([&](std::size_t w) {
      if (!first_member) s += ",";
      s += std::to_string(w);
      first_member = false;
    });
    return s + "}";
  }

 private:
  void trim() noexcept {
    if (n_ & 63) words_.back() &= (std::uint64_t{1} << (n_ & 63)) - 1;
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct WorldSetHash {
  std::size_t operator()(const WorldSet& s) const noexcept { return s.hash(); }
};

}  // namespace gmv

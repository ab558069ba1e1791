#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hardcore {

using Vertex = std::uint32_t;

// Dense bitmask over the vertex indices [0, universe).
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}

  static VertexSet from_mask(std::size_t universe, std::uint64_t mask);
  static VertexSet from_vertices(std::size_t universe, const std::vector<Vertex>& vs);
  // Inverse of to_hex(); throws std::invalid_argument on malformed input.
  static VertexSet from_hex(std::size_t universe, std::string_view hex);
  static VertexSet full(std::size_t universe);

  std::size_t universe() const { return universe_; }

  bool contains(Vertex v) const { return (words_[v >> 6] >> (v & 63)) & 1U; }
  void insert(Vertex v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  void erase(Vertex v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
  void set(Vertex v, bool on) { on ? insert(v) : erase(v); }

  std::size_t size() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  VertexSet& operator|=(const VertexSet& o);
  VertexSet& operator&=(const VertexSet& o);
  VertexSet& operator-=(const VertexSet& o);
  VertexSet& operator^=(const VertexSet& o);
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
  friend VertexSet operator^(VertexSet a, const VertexSet& b) { return a ^= b; }

  VertexSet complement() const;
  bool subset_of(const VertexSet& o) const;
  bool intersects(const VertexSet& o) const;

  // Smallest member, or universe() when empty.
  Vertex first() const;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        const int b = std::countr_zero(w);
        f(static_cast<Vertex>(wi * 64 + static_cast<std::size_t>(b)));
        w &= w - 1;
      }
    }
  }

  std::vector<Vertex> to_vector() const;
  // Requires universe() <= 64.
  std::uint64_t to_mask() const;
  // Big-endian hex without prefix, width ceil(universe/4) digits.
  std::string to_hex() const;

  const std::vector<std::uint64_t>& words() const { return words_; }

  bool operator==(const VertexSet& o) const = default;
  // Orders by numeric value of the mask; universes must match.
  std::strong_ordering operator<=>(const VertexSet& o) const;

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

struct VertexSetHash {
  std::size_t operator()(const VertexSet& s) const noexcept;
};

}  // namespace hardcore

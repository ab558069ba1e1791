#include "hardcore/vertex_set.hpp"

#include <stdexcept>

namespace hardcore {

VertexSet VertexSet::from_mask(std::size_t universe, std::uint64_t mask) {
  if (universe > 64) throw std::invalid_argument("from_mask: universe exceeds 64");
  VertexSet s(universe);
  if (universe < 64) mask &= (std::uint64_t{1} << universe) - 1;
  if (!s.words_.empty()) s.words_[0] = mask;
  return s;
}

VertexSet VertexSet::from_vertices(std::size_t universe, const std::vector<Vertex>& vs) {
  VertexSet s(universe);
  for (auto v : vs) {
    if (v >= universe) throw std::out_of_range("from_vertices: vertex outside universe");
    s.insert(v);
  }
  return s;
}

VertexSet VertexSet::full(std::size_t universe) {
  VertexSet s(universe);
  for (auto& w : s.words_) w = ~std::uint64_t{0};
  if (const auto r = universe % 64; r != 0 && !s.words_.empty())
    s.words_.back() = (std::uint64_t{1} << r) - 1;
  return s;
}

VertexSet VertexSet::from_hex(std::size_t universe, std::string_view hex) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  VertexSet s(universe);
  std::size_t bit = 0;
  for (auto it = hex.rbegin(); it != hex.rend(); ++it, bit += 4) {
    const char c = *it;
    unsigned nib;
    if (c >= '0' && c <= '9') nib = static_cast<unsigned>(c - '0');
    else if (c >= 'a' && c <= 'f') nib = static_cast<unsigned>(c - 'a' + 10);
    else if (c >= 'A' && c <= 'F') nib = static_cast<unsigned>(c - 'A' + 10);
    else throw std::invalid_argument("from_hex: bad digit");
    for (unsigned k = 0; k < 4; ++k) {
      if (!((nib >> k) & 1U)) continue;
      if (bit + k >= universe) throw std::invalid_argument("from_hex: bit outside universe");
      s.insert(static_cast<Vertex>(bit + k));
    }
  }
  return s;
}

VertexSet& VertexSet::operator|=(const VertexSet& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  return *this;
}
VertexSet& VertexSet::operator&=(const VertexSet& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  return *this;
}
VertexSet& VertexSet::operator-=(const VertexSet& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
  return *this;
}
VertexSet& VertexSet::operator^=(const VertexSet& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
  return *this;
}

VertexSet VertexSet::complement() const { return full(universe_) - *this; }

bool VertexSet::subset_of(const VertexSet& o) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~o.words_[i]) return false;
  return true;
}

bool VertexSet::intersects(const VertexSet& o) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & o.words_[i]) return true;
  return false;
}

Vertex VertexSet::first() const {
  for (std::size_t wi = 0; wi < words_.size(); ++wi)
    if (words_[wi]) return static_cast<Vertex>(wi * 64 + static_cast<std::size_t>(std::countr_zero(words_[wi])));
  return static_cast<Vertex>(universe_);
}

std::vector<Vertex> VertexSet::to_vector() const {
  std::vector<Vertex> out;
  out.reserve(size());
  for_each([&](Vertex v) { out.push_back(v); });
  return out;
}

std::uint64_t VertexSet::to_mask() const {
  if (universe_ > 64) throw std::logic_error("to_mask: universe exceeds 64");
  return words_.empty() ? 0 : words_[0];
}

std::string VertexSet::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t digits = universe_ == 0 ? 1 : (universe_ + 3) / 4;
  std::string out(digits, '0');
  for (std::size_t d = 0; d < digits; ++d) {
    const std::size_t bit = d * 4;
    const std::uint64_t w = words_.empty() ? 0 : words_[bit / 64];
    out[digits - 1 - d] = kDigits[(w >> (bit % 64)) & 0xF];
  }
  return out;
}

std::strong_ordering VertexSet::operator<=>(const VertexSet& o) const {
  if (auto c = universe_ <=> o.universe_; c != 0) return c;
  for (std::size_t i = words_.size(); i-- > 0;)
    if (auto c = words_[i] <=> o.words_[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

std::size_t VertexSetHash::operator()(const VertexSet& s) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ s.universe();
  for (auto w : s.words()) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

}  // namespace hardcore

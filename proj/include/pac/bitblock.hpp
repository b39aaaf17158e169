// Packed GF(2) vectors: codewords, transform rows, register taps.
#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pac {

// Fixed-length bit vector, bit 0 first. 64 bits per word, unused tail bits
// kept zero so word-level XOR/AND/popcount need no masking.
class BitBlock {
public:
  BitBlock() = default;
  explicit BitBlock(size_t n) : n_(n), w_((n + 63) >> 6, 0) {}

  static BitBlock from_string(std::string_view s);        // "1011"
  static BitBlock from_taps(std::initializer_list<int> taps);
  static BitBlock from_taps(std::span<const int> taps);
  static BitBlock unit(size_t n, size_t i);

  size_t size() const { return n_; }

  bool get(size_t i) const {
    check_index(i);
    return (w_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(size_t i, bool v) {
    check_index(i);
    const uint64_t m = uint64_t{1} << (i & 63);
    if (v)
      w_[i >> 6] |= m;
    else
      w_[i >> 6] &= ~m;
  }
  void flip(size_t i) {
    check_index(i);
    w_[i >> 6] ^= uint64_t{1} << (i & 63);
  }

  size_t weight() const {
    size_t c = 0;
    for (uint64_t w : w_) c += std::popcount(w);
    return c;
  }
  bool any() const {
    for (uint64_t w : w_)
      if (w) return true;
    return false;
  }

  BitBlock& operator^=(const BitBlock& o) {
    check_same(o);
    for (size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
    return *this;
  }
  BitBlock& operator&=(const BitBlock& o) {
    check_same(o);
    for (size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
    return *this;
  }
  friend BitBlock operator^(BitBlock a, const BitBlock& b) {
    a ^= b;
    return a;
  }
  friend BitBlock operator&(BitBlock a, const BitBlock& b) {
    a &= b;
    return a;
  }
  friend bool operator==(const BitBlock&, const BitBlock&) = default;

  std::span<const uint64_t> words() const { return w_; }
  // Callers must keep tail bits beyond size() zero.
  std::span<uint64_t> mutable_words() { return w_; }

  std::string to_string() const;
  std::vector<int> support() const;

private:
  void check_index(size_t i) const {
    if (i >= n_)
      throw std::out_of_range("BitBlock: index " + std::to_string(i) +
                              " out of range [0," + std::to_string(n_) + ")");
  }
  void check_same(const BitBlock& o) const {
    if (o.n_ != n_) throw std::invalid_argument("BitBlock: length mismatch");
  }

  size_t n_ = 0;
  std::vector<uint64_t> w_;
};

inline size_t weight(const BitBlock& b) { return b.weight(); }
inline BitBlock wedge(const BitBlock& a, const BitBlock& b) { return a & b; }

}  // namespace pac

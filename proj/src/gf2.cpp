#include "pac/gf2.hpp"

#include <bit>

namespace pac {

BitBlock BitBlock::from_string(std::string_view s) {
  BitBlock b(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      b.set(i, true);
    else if (s[i] != '0')
      throw std::invalid_argument("BitBlock: expected '0' or '1', got '" +
                                  std::string(1, s[i]) + "'");
  }
  return b;
}

BitBlock BitBlock::from_taps(std::initializer_list<int> taps) {
  return from_taps(std::span<const int>(taps.begin(), taps.size()));
}

BitBlock BitBlock::from_taps(std::span<const int> taps) {
  BitBlock b(taps.size());
  for (size_t i = 0; i < taps.size(); ++i) {
    if (taps[i] != 0 && taps[i] != 1)
      throw std::invalid_argument("BitBlock: taps must be 0 or 1");
    if (taps[i]) b.set(i, true);
  }
  return b;
}

BitBlock BitBlock::unit(size_t n, size_t i) {
  BitBlock b(n);
  b.set(i, true);
  return b;
}

std::string BitBlock::to_string() const {
  std::string s(n_, '0');
  for (size_t i = 0; i < n_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

std::vector<int> BitBlock::support() const {
  std::vector<int> idx;
  for (size_t k = 0; k < w_.size(); ++k) {
    uint64_t w = w_[k];
    while (w) {
      idx.push_back(static_cast<int>((k << 6) + std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return idx;
}

BitBlock kron_row(int n, uint64_t i) {
  if (n < 0 || n >= 32) throw std::out_of_range("kron_row: n out of range");
  const uint64_t N = uint64_t{1} << n;
  if (i >= N) throw std::out_of_range("kron_row: row index out of range");
  BitBlock r(N);
  uint64_t j = i;
  for (;;) {
    r.set(j, true);
    if (j == 0) break;
    j = (j - 1) & i;
  }
  return r;
}

void polar_transform_inplace(BitBlock& u) {
  const size_t N = u.size();
  if (N == 0 || (N & (N - 1)) != 0)
    throw std::invalid_argument("polar_transform: length must be a power of two");
  auto w = u.mutable_words();
  // u[j] ^= u[j+h] for every j whose h-bit is clear, h = 1,2,4,...
  static constexpr uint64_t kLow[6] = {
      0x5555555555555555ull, 0x3333333333333333ull, 0x0f0f0f0f0f0f0f0full,
      0x00ff00ff00ff00ffull, 0x0000ffff0000ffffull, 0x00000000ffffffffull};
  for (size_t h = 1; h < N; h <<= 1) {
    if (h < 64) {
      const int s = std::countr_zero(h);
      for (auto& x : w) x ^= (x >> h) & kLow[s];
    } else {
      const size_t H = h >> 6;
      for (size_t base = 0; base + 2 * H <= w.size(); base += 2 * H)
        for (size_t t = 0; t < H; ++t) w[base + t] ^= w[base + H + t];
    }
  }
}

BitBlock polar_transform(const BitBlock& u) {
  BitBlock x = u;
  polar_transform_inplace(x);
  return x;
}

ToeplitzMatrix::ToeplitzMatrix(BitBlock g, size_t n_dim) : g_(std::move(g)), n_(n_dim) {
  if (g_.size() == 0) throw std::invalid_argument("ToeplitzMatrix: empty polynomial");
  if (!g_.get(0)) throw std::invalid_argument("ToeplitzMatrix: g_0 must be 1");
  if (n_ == 0) throw std::invalid_argument("ToeplitzMatrix: dimension must be positive");
}

BitBlock ToeplitzMatrix::row(size_t r) const {
  if (r >= n_) throw std::out_of_range("ToeplitzMatrix: row out of range");
  BitBlock out(n_);
  for (size_t t = 0; t < g_.size() && r + t < n_; ++t)
    if (g_.get(t)) out.set(r + t, true);
  return out;
}

BitBlock ToeplitzMatrix::apply(const BitBlock& v) const {
  if (v.size() != n_) throw std::invalid_argument("ToeplitzMatrix: length mismatch");
  BitBlock u(n_);
  auto uw = u.mutable_words();
  const auto gw = g_.words();
  const auto vw = v.words();
  for (size_t k = 0; k < vw.size(); ++k) {
    uint64_t word = vw[k];
    while (word) {
      const size_t p = (k << 6) + std::countr_zero(word);
      word &= word - 1;
      // u ^= g << p, truncated at n_
      const size_t off = p >> 6, sh = p & 63;
      for (size_t t = 0; t < gw.size() && off + t < uw.size(); ++t) {
        uw[off + t] ^= gw[t] << sh;
        if (sh && off + t + 1 < uw.size()) uw[off + t + 1] ^= gw[t] >> (64 - sh);
      }
    }
  }
  if (n_ & 63) uw.back() &= ~uint64_t{0} >> (64 - (n_ & 63));
  return u;
}

ToeplitzMatrix ToeplitzMatrix::inverse() const {
  // Power-series inverse h of g: h_0 = 1, h_k = sum_{j>=1} g_j h_{k-j}.
  BitBlock h(n_);
  h.set(0, true);
  const size_t m = g_.size() - 1;
  for (size_t k = 1; k < n_; ++k) {
    bool bit = false;
    const size_t jmax = k < m ? k : m;
    for (size_t j = 1; j <= jmax; ++j)
      if (g_.get(j) && h.get(k - j)) bit = !bit;
    if (bit) h.set(k, true);
  }
  return ToeplitzMatrix(std::move(h), n_);
}

}  // namespace pac

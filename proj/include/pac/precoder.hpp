// Convolutional pre-transforms: single-polynomial and dual shift-register.
#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "pac/bitblock.hpp"
#include "pac/construction.hpp"

namespace pac {

struct SinglePoly {
  BitBlock g;  // g[0] = 1, at most 64 taps
};

// A second register that ingests v_i only at indices in `subset`; its taps
// g_b (g_b[0] forced 0) are XORed into every output, so the transform stays
// unit-diagonal upper-triangular.
struct DualRegister {
  BitBlock g_a;             // g_a[0] = 1
  BitBlock g_b;             // g_b[0] = 0
  std::vector<int> subset;  // sorted ascending
};

class PrecoderSpec {
public:
  explicit PrecoderSpec(SinglePoly p);
  explicit PrecoderSpec(DualRegister d);
  static PrecoderSpec identity() { return PrecoderSpec(SinglePoly{BitBlock::from_taps({1})}); }

  bool is_dual() const { return std::holds_alternative<DualRegister>(v_); }
  const SinglePoly* single() const { return std::get_if<SinglePoly>(&v_); }
  const DualRegister* dual() const { return std::get_if<DualRegister>(&v_); }
  int memory() const;        // longest register span
  bool is_identity() const;  // no taps beyond g_0
  std::string describe() const;

private:
  std::variant<SinglePoly, DualRegister> v_;
};

// Fixed tap wiring for the per-step register evaluation. Bit j-1 of `a`
// carries tap g_a[j]; the two `b` masks are the secondary taps as seen on
// steps that do / do not ingest (the just-ingested value itself is never
// readable because g_b[0] = 0).
struct ConvMasks {
  uint64_t a = 0;
  uint64_t b_ingest = 0;
  uint64_t b_hold = 0;
};
ConvMasks conv_masks(const PrecoderSpec& pre);

// Register contents for one path/stream; trivially copyable.
struct ConvState {
  uint64_t main = 0;  // bit k = v_{i-1-k}
  uint64_t side = 0;  // bit k = (k+1)-th most recently ingested value

  // Contribution to u_i excluding v_i itself.
  bool feed(const ConvMasks& m, bool ingest) const {
    const uint64_t x = (main & m.a) ^ (side & (ingest ? m.b_ingest : m.b_hold));
    return std::popcount(x) & 1;
  }
  void advance(bool v, bool ingest) {
    main = (main << 1) | uint64_t{v};
    if (ingest) side = (side << 1) | uint64_t{v};
  }
};

// Per-index ingest flags for a block of length N.
std::vector<uint8_t> ingest_flags(const PrecoderSpec& pre, size_t N);

BitBlock precode(const PrecoderSpec& pre, const BitBlock& v);
BitBlock precode_inverse(const PrecoderSpec& pre, const BitBlock& u);

// [g_head | zero_gap zeros | g_tail] as a single polynomial.
BitBlock long_memory_poly(const BitBlock& g_head, int zero_gap, const BitBlock& g_tail);

struct ProtectionProfile {
  std::vector<int> info;         // = spec.info_set()
  std::vector<int> taps;         // effective tap count per info index
  std::vector<int> unprotected;  // info indices with zero effective taps (u_i = v_i)
};
ProtectionProfile protection_profile(const PrecoderSpec& pre, const CodeSpec& spec);

// K/4 least-reliable info indices; the CLI's `--subset auto`.
std::vector<int> default_dual_subset(const CodeSpec& spec);

}  // namespace pac

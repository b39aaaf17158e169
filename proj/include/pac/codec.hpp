// Encoder and successive-cancellation list decoder.
#pragma once

#include <cstdint>
#include <span>
#include <type_traits>
#include <vector>

#include "pac/bitblock.hpp"
#include "pac/construction.hpp"
#include "pac/precoder.hpp"

namespace pac {

// Message bits placed at the info indices, zeros elsewhere.
BitBlock rate_profile_insert(const CodeSpec& spec, const BitBlock& d);
BitBlock extract_message(const CodeSpec& spec, const BitBlock& v);

// d (K bits) -> rate profile -> convolution -> polar transform.
BitBlock encode(const CodeSpec& spec, const PrecoderSpec& pre, const BitBlock& d);

// Path metrics accumulate |llr| terms, so integer LLRs get an integer metric.
template <typename TLlr>
using MetricOf = std::conditional_t<std::is_integral_v<TLlr>, int64_t, double>;

template <typename TLlr>
struct DecodedPath {
  BitBlock v;             // precoder input, length N
  MetricOf<TLlr> metric;  // lower is better
};

// List decoder over the polar factor graph with lazy-copied per-depth banks.
// Each path carries the convolutional register state, so PAC and plain polar
// (identity precoder) share the same machinery. The default metric is the
// min-sum one: a path pays |llr| whenever it moves against the sign of the
// decision LLR. `exact_metric` switches f and the penalty to their exact
// log-domain forms (floating-point LLRs only).
template <typename TLlr>
class SclDecoder {
public:
  SclDecoder(CodeSpec spec, PrecoderSpec pre, int list_size, bool exact_metric = false);

  // Channel LLRs, positive favours bit 0. Returns every surviving path,
  // sorted by (metric, v); ties in metric are broken by the bit pattern so
  // the ranking is reproducible.
  std::vector<DecodedPath<TLlr>> decode(std::span<const TLlr> llr);

  int list_size() const { return L_; }
  const CodeSpec& spec() const { return spec_; }

private:
  using Metric = MetricOf<TLlr>;
  struct Cand {
    Metric pm;
    int path;
    uint8_t v;
  };

  void reset(std::span<const TLlr> llr);
  int ensure_own(int d, int p);
  int clone_path(int p);
  void kill_path(int p);
  void calc_llr(int d, uint64_t phi);
  void update_c(int d, uint64_t phi);
  void leaf_frozen(int i);
  void leaf_info(int i);
  void write_leaf(int p, int i, bool u, bool v, Metric pm);
  Metric penalty(TLlr alpha, bool u) const;

  CodeSpec spec_;
  PrecoderSpec pre_;
  int L_;
  bool exact_;
  int n_ = 0;
  size_t N_ = 0;
  ConvMasks masks_;
  std::vector<uint8_t> ingest_;

  // Banks indexed by depth d in [0, n]; one row of 2^(n-d) LLRs and two
  // columns of partial codewords per slot. Rows are shared between paths
  // until written (slot_of_/refcnt_); depth 0 holds the channel LLRs and the
  // root codeword bank is never materialized.
  std::vector<std::vector<TLlr>> llr_;
  std::vector<std::vector<uint8_t>> cbit_;
  std::vector<std::vector<int32_t>> slot_of_;
  std::vector<std::vector<int32_t>> refcnt_;
  std::vector<std::vector<int32_t>> free_slots_;
  std::vector<int> free_paths_;
  std::vector<uint8_t> active_;
  std::vector<Metric> pm_;
  std::vector<ConvState> conv_;
  std::vector<BitBlock> vbits_;

  // Per-leaf scratch.
  std::vector<Cand> cands_;
  std::vector<uint8_t> keep0_, keep1_, wasact_, feed_;
  std::vector<Metric> pm0_, pm1_;
};

extern template class SclDecoder<double>;
extern template class SclDecoder<int32_t>;

struct ScoredMessage {
  BitBlock message;
  double metric;
};

// Decode and map the surviving paths back to ranked K-bit messages.
std::vector<ScoredMessage> scl_decode(const CodeSpec& spec, const PrecoderSpec& pre,
                                      std::span<const double> llr, int list_size,
                                      bool exact_metric = false);

}  // namespace pac

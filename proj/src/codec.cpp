#include "pac/codec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pac/gf2.hpp"

namespace pac {

BitBlock rate_profile_insert(const CodeSpec& spec, const BitBlock& d) {
  if (d.size() != static_cast<size_t>(spec.K()))
    throw std::invalid_argument("rate_profile_insert: message length mismatch");
  BitBlock v(static_cast<size_t>(spec.N()));
  const auto& a = spec.info_set();
  for (size_t k = 0; k < a.size(); ++k)
    if (d.get(k)) v.set(static_cast<size_t>(a[k]), true);
  return v;
}

BitBlock extract_message(const CodeSpec& spec, const BitBlock& v) {
  if (v.size() != static_cast<size_t>(spec.N()))
    throw std::invalid_argument("extract_message: block length mismatch");
  const auto& a = spec.info_set();
  BitBlock d(a.size());
  for (size_t k = 0; k < a.size(); ++k)
    if (v.get(static_cast<size_t>(a[k]))) d.set(k, true);
  return d;
}

BitBlock encode(const CodeSpec& spec, const PrecoderSpec& pre, const BitBlock& d) {
  return polar_transform(precode(pre, rate_profile_insert(spec, d)));
}

namespace {

template <typename T>
T f_approx(T a, T b) {
  const T m = std::min<T>(std::abs(a), std::abs(b));
  return ((a < 0) != (b < 0)) ? static_cast<T>(-m) : m;
}

double f_exact(double a, double b) {
  return f_approx(a, b) + std::log1p(std::exp(-std::abs(a + b))) -
         std::log1p(std::exp(-std::abs(a - b)));
}

template <typename T>
T g_step(T a, T b, bool s) {
  return s ? static_cast<T>(b - a) : static_cast<T>(b + a);
}

}  // namespace

template <typename TLlr>
SclDecoder<TLlr>::SclDecoder(CodeSpec spec, PrecoderSpec pre, int list_size, bool exact_metric)
    : spec_(std::move(spec)), pre_(std::move(pre)), L_(list_size), exact_(exact_metric) {
  if (L_ < 1) throw std::invalid_argument("SclDecoder: list size must be >= 1");
  if constexpr (std::is_integral_v<TLlr>) {
    if (exact_) throw std::invalid_argument("SclDecoder: exact metric needs floating-point LLRs");
  }
  n_ = spec_.n();
  N_ = static_cast<size_t>(spec_.N());
  masks_ = conv_masks(pre_);
  ingest_ = ingest_flags(pre_, N_);

  const size_t depths = static_cast<size_t>(n_) + 1;
  llr_.resize(depths);
  cbit_.resize(depths);
  slot_of_.resize(depths);
  refcnt_.resize(depths);
  free_slots_.resize(depths);
  for (size_t d = 0; d < depths; ++d) {
    const size_t len = N_ >> d;
    llr_[d].resize(static_cast<size_t>(L_) * len);
    if (d > 0) cbit_[d].resize(static_cast<size_t>(L_) * 2 * len);
  }
  active_.resize(L_);
  pm_.resize(L_);
  conv_.resize(L_);
  vbits_.assign(static_cast<size_t>(L_), BitBlock(N_));
  cands_.reserve(2 * static_cast<size_t>(L_));
  keep0_.resize(L_);
  keep1_.resize(L_);
  wasact_.resize(L_);
  feed_.resize(L_);
  pm0_.resize(L_);
  pm1_.resize(L_);
}

template <typename TLlr>
void SclDecoder<TLlr>::reset(std::span<const TLlr> llr) {
  for (int d = 0; d <= n_; ++d) {
    slot_of_[d].assign(L_, -1);
    refcnt_[d].assign(L_, 0);
    auto& fs = free_slots_[d];
    fs.clear();
    for (int s = L_ - 1; s >= 0; --s) fs.push_back(s);
  }
  free_paths_.clear();
  for (int p = L_ - 1; p >= 1; --p) free_paths_.push_back(p);
  std::fill(active_.begin(), active_.end(), uint8_t{0});
  active_[0] = 1;
  pm_[0] = Metric{};
  conv_[0] = ConvState{};
  vbits_[0] = BitBlock(N_);
  for (int d = 0; d <= n_; ++d) {
    const int s = free_slots_[d].back();
    free_slots_[d].pop_back();
    slot_of_[d][0] = s;
    refcnt_[d][s] = 1;
  }
  std::copy(llr.begin(), llr.end(),
            llr_[0].begin() + static_cast<size_t>(slot_of_[0][0]) * N_);
}

template <typename TLlr>
int SclDecoder<TLlr>::ensure_own(int d, int p) {
  const int s = slot_of_[d][p];
  if (refcnt_[d][s] == 1) return s;
  --refcnt_[d][s];
  const int s2 = free_slots_[d].back();
  free_slots_[d].pop_back();
  const size_t len = N_ >> d;
  std::copy_n(llr_[d].begin() + static_cast<size_t>(s) * len, len,
              llr_[d].begin() + static_cast<size_t>(s2) * len);
  if (d > 0)
    std::copy_n(cbit_[d].begin() + static_cast<size_t>(s) * 2 * len, 2 * len,
                cbit_[d].begin() + static_cast<size_t>(s2) * 2 * len);
  slot_of_[d][p] = s2;
  refcnt_[d][s2] = 1;
  return s2;
}

template <typename TLlr>
int SclDecoder<TLlr>::clone_path(int p) {
  const int q = free_paths_.back();
  free_paths_.pop_back();
  for (int d = 0; d <= n_; ++d) {
    slot_of_[d][q] = slot_of_[d][p];
    ++refcnt_[d][slot_of_[d][p]];
  }
  active_[q] = 1;
  pm_[q] = pm_[p];
  conv_[q] = conv_[p];
  vbits_[q] = vbits_[p];
  return q;
}

template <typename TLlr>
void SclDecoder<TLlr>::kill_path(int p) {
  for (int d = 0; d <= n_; ++d) {
    const int s = slot_of_[d][p];
    if (--refcnt_[d][s] == 0) free_slots_[d].push_back(s);
    slot_of_[d][p] = -1;
  }
  active_[p] = 0;
  free_paths_.push_back(p);
}

template <typename TLlr>
void SclDecoder<TLlr>::calc_llr(int d, uint64_t phi) {
  if (d == 0) return;
  if ((phi & 1) == 0 && d > 1) calc_llr(d - 1, phi >> 1);
  const size_t sig = N_ >> d;
  for (int p = 0; p < L_; ++p) {
    if (!active_[p]) continue;
    const TLlr* pa = llr_[d - 1].data() + static_cast<size_t>(slot_of_[d - 1][p]) * 2 * sig;
    const int s = ensure_own(d, p);
    TLlr* out = llr_[d].data() + static_cast<size_t>(s) * sig;
    if ((phi & 1) == 0) {
      if constexpr (std::is_floating_point_v<TLlr>) {
        if (exact_) {
          for (size_t b = 0; b < sig; ++b) out[b] = f_exact(pa[b], pa[b + sig]);
          continue;
        }
      }
      for (size_t b = 0; b < sig; ++b) out[b] = f_approx(pa[b], pa[b + sig]);
    } else {
      const uint8_t* cc = cbit_[d].data() + static_cast<size_t>(s) * 2 * sig;
      for (size_t b = 0; b < sig; ++b) out[b] = g_step(pa[b], pa[b + sig], cc[b] != 0);
    }
  }
}

template <typename TLlr>
void SclDecoder<TLlr>::update_c(int d, uint64_t phi) {
  if (d <= 1) return;  // the root codeword is never needed
  const uint64_t psi = phi >> 1;
  const size_t sig = N_ >> d;
  for (int p = 0; p < L_; ++p) {
    if (!active_[p]) continue;
    const uint8_t* cc = cbit_[d].data() + static_cast<size_t>(slot_of_[d][p]) * 2 * sig;
    uint8_t* pp = cbit_[d - 1].data() + static_cast<size_t>(ensure_own(d - 1, p)) * 4 * sig +
                  (psi & 1) * 2 * sig;
    for (size_t b = 0; b < sig; ++b) {
      pp[b] = cc[b] ^ cc[b + sig];
      pp[b + sig] = cc[b + sig];
    }
  }
  if (psi & 1) update_c(d - 1, psi);
}

template <typename TLlr>
auto SclDecoder<TLlr>::penalty(TLlr alpha, bool u) const -> Metric {
  const bool mismatch = (alpha < 0) != u;
  if constexpr (std::is_floating_point_v<TLlr>) {
    if (exact_) {
      double pen = std::log1p(std::exp(-std::abs(alpha)));
      if (mismatch) pen += std::abs(alpha);
      return pen;
    }
  }
  return mismatch ? static_cast<Metric>(std::abs(alpha)) : Metric{};
}

template <typename TLlr>
void SclDecoder<TLlr>::write_leaf(int p, int i, bool u, bool v, Metric pm) {
  const int s = ensure_own(n_, p);
  cbit_[n_][static_cast<size_t>(s) * 2 + (i & 1)] = u ? 1 : 0;
  pm_[p] = pm;
  conv_[p].advance(v, ingest_[static_cast<size_t>(i)] != 0);
  if (v) vbits_[p].set(static_cast<size_t>(i), true);
}

template <typename TLlr>
void SclDecoder<TLlr>::leaf_frozen(int i) {
  for (int p = 0; p < L_; ++p) {
    if (!active_[p]) continue;
    const TLlr a = llr_[n_][static_cast<size_t>(slot_of_[n_][p])];
    const bool u = conv_[p].feed(masks_, ingest_[static_cast<size_t>(i)] != 0);
    write_leaf(p, i, u, false, pm_[p] + penalty(a, u));
  }
}

template <typename TLlr>
void SclDecoder<TLlr>::leaf_info(int i) {
  const bool ing = ingest_[static_cast<size_t>(i)] != 0;
  cands_.clear();
  for (int p = 0; p < L_; ++p) {
    wasact_[p] = active_[p];
    if (!active_[p]) continue;
    const TLlr a = llr_[n_][static_cast<size_t>(slot_of_[n_][p])];
    const bool fd = conv_[p].feed(masks_, ing);
    feed_[p] = fd ? 1 : 0;
    pm0_[p] = pm_[p] + penalty(a, fd);
    pm1_[p] = pm_[p] + penalty(a, !fd);
    cands_.push_back({pm0_[p], p, 0});
    cands_.push_back({pm1_[p], p, 1});
  }
  const size_t keep = std::min(static_cast<size_t>(L_), cands_.size());
  if (keep < cands_.size())
    std::nth_element(cands_.begin(), cands_.begin() + static_cast<std::ptrdiff_t>(keep),
                     cands_.end(), [](const Cand& x, const Cand& y) {
                       if (x.pm != y.pm) return x.pm < y.pm;
                       if (x.path != y.path) return x.path < y.path;
                       return x.v < y.v;
                     });
  std::fill(keep0_.begin(), keep0_.end(), uint8_t{0});
  std::fill(keep1_.begin(), keep1_.end(), uint8_t{0});
  for (size_t c = 0; c < keep; ++c)
    (cands_[c].v ? keep1_ : keep0_)[static_cast<size_t>(cands_[c].path)] = 1;

  for (int p = 0; p < L_; ++p)
    if (wasact_[p] && !keep0_[p] && !keep1_[p]) kill_path(p);
  for (int p = 0; p < L_; ++p) {
    if (!wasact_[p]) continue;
    const bool fd = feed_[p] != 0;
    if (keep0_[p] && keep1_[p]) {
      const int q = clone_path(p);
      write_leaf(p, i, fd, false, pm0_[p]);
      write_leaf(q, i, !fd, true, pm1_[p]);
    } else if (keep0_[p]) {
      write_leaf(p, i, fd, false, pm0_[p]);
    } else if (keep1_[p]) {
      write_leaf(p, i, !fd, true, pm1_[p]);
    }
  }
}

template <typename TLlr>
std::vector<DecodedPath<TLlr>> SclDecoder<TLlr>::decode(std::span<const TLlr> llr) {
  if (llr.size() != N_) throw std::invalid_argument("SclDecoder: llr length mismatch");
  if constexpr (std::is_floating_point_v<TLlr>) {
    for (TLlr x : llr)
      if (!std::isfinite(x)) throw std::invalid_argument("SclDecoder: non-finite llr");
  }
  reset(llr);
  for (size_t i = 0; i < N_; ++i) {
    calc_llr(n_, i);
    if (spec_.is_info(static_cast<int>(i)))
      leaf_info(static_cast<int>(i));
    else
      leaf_frozen(static_cast<int>(i));
    if (i & 1) update_c(n_, i);
  }
  std::vector<DecodedPath<TLlr>> out;
  for (int p = 0; p < L_; ++p)
    if (active_[p]) out.push_back({vbits_[p], pm_[p]});
  std::sort(out.begin(), out.end(),
            [](const DecodedPath<TLlr>& x, const DecodedPath<TLlr>& y) {
              if (x.metric != y.metric) return x.metric < y.metric;
              const auto xw = x.v.words();
              const auto yw = y.v.words();
              return std::lexicographical_compare(xw.begin(), xw.end(), yw.begin(), yw.end());
            });
  return out;
}

template class SclDecoder<double>;
template class SclDecoder<int32_t>;

std::vector<ScoredMessage> scl_decode(const CodeSpec& spec, const PrecoderSpec& pre,
                                      std::span<const double> llr, int list_size,
                                      bool exact_metric) {
  SclDecoder<double> dec(spec, pre, list_size, exact_metric);
  auto paths = dec.decode(llr);
  std::vector<ScoredMessage> out;
  out.reserve(paths.size());
  for (auto& p : paths) out.push_back({extract_message(spec, p.v), p.metric});
  return out;
}

}  // namespace pac

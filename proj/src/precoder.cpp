#include "pac/precoder.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace pac {

namespace {

void check_poly(const BitBlock& g, const char* what, bool lead_one) {
  if (g.size() == 0) throw std::invalid_argument(std::string(what) + ": empty polynomial");
  if (g.size() > 64) throw std::invalid_argument(std::string(what) + ": more than 64 taps");
  if (g.get(0) != lead_one)
    throw std::invalid_argument(std::string(what) + (lead_one ? ": leading tap must be 1"
                                                              : ": leading tap must be 0"));
}

uint64_t tail_mask(const BitBlock& g) {
  // bit j-1 = tap j
  uint64_t m = 0;
  for (size_t j = 1; j < g.size(); ++j)
    if (g.get(j)) m |= uint64_t{1} << (j - 1);
  return m;
}

}  // namespace

PrecoderSpec::PrecoderSpec(SinglePoly p) : v_(std::move(p)) {
  check_poly(std::get<SinglePoly>(v_).g, "SinglePoly", true);
}

PrecoderSpec::PrecoderSpec(DualRegister d) : v_(std::move(d)) {
  const auto& dr = std::get<DualRegister>(v_);
  check_poly(dr.g_a, "DualRegister g_a", true);
  check_poly(dr.g_b, "DualRegister g_b", false);
  if (!std::is_sorted(dr.subset.begin(), dr.subset.end()) ||
      std::adjacent_find(dr.subset.begin(), dr.subset.end()) != dr.subset.end())
    throw std::invalid_argument("DualRegister: subset must be sorted and unique");
  if (!dr.subset.empty() && dr.subset.front() < 0)
    throw std::invalid_argument("DualRegister: negative subset index");
}

int PrecoderSpec::memory() const {
  if (const auto* s = single()) return static_cast<int>(s->g.size()) - 1;
  const auto* d = dual();
  return static_cast<int>(std::max(d->g_a.size(), d->g_b.size())) - 1;
}

bool PrecoderSpec::is_identity() const {
  const ConvMasks m = conv_masks(*this);
  return m.a == 0 && m.b_ingest == 0;
}

std::string PrecoderSpec::describe() const {
  auto taps = [](const BitBlock& g) {
    std::string s;
    for (size_t i = 0; i < g.size(); ++i) {
      if (i) s += ',';
      s += g.get(i) ? '1' : '0';
    }
    return s;
  };
  if (const auto* s = single()) return taps(s->g);
  const auto* d = dual();
  std::string s = "a=" + taps(d->g_a) + "|b=" + taps(d->g_b) + "|S=";
  for (size_t k = 0; k < d->subset.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(d->subset[k]);
  }
  return s;
}

ConvMasks conv_masks(const PrecoderSpec& pre) {
  ConvMasks m;
  if (const auto* s = pre.single()) {
    m.a = tail_mask(s->g);
  } else {
    const auto* d = pre.dual();
    m.a = tail_mask(d->g_a);
    m.b_ingest = tail_mask(d->g_b);  // tap t reads the t-th previous ingest
    m.b_hold = m.b_ingest << 1;      // one older when nothing was ingested now
  }
  return m;
}

std::vector<uint8_t> ingest_flags(const PrecoderSpec& pre, size_t N) {
  std::vector<uint8_t> f(N, 0);
  if (const auto* d = pre.dual()) {
    for (int i : d->subset) {
      if (static_cast<size_t>(i) >= N)
        throw std::invalid_argument("DualRegister: subset index beyond block length");
      f[static_cast<size_t>(i)] = 1;
    }
  }
  return f;
}

BitBlock precode(const PrecoderSpec& pre, const BitBlock& v) {
  const size_t N = v.size();
  const ConvMasks m = conv_masks(pre);
  const auto ing = ingest_flags(pre, N);
  BitBlock u(N);
  ConvState st;
  for (size_t i = 0; i < N; ++i) {
    const bool vi = v.get(i);
    const bool ui = st.feed(m, ing[i]) ^ vi;
    if (ui) u.set(i, true);
    st.advance(vi, ing[i]);
  }
  return u;
}

BitBlock precode_inverse(const PrecoderSpec& pre, const BitBlock& u) {
  const size_t N = u.size();
  const ConvMasks m = conv_masks(pre);
  const auto ing = ingest_flags(pre, N);
  BitBlock v(N);
  ConvState st;
  for (size_t i = 0; i < N; ++i) {
    const bool vi = st.feed(m, ing[i]) ^ u.get(i);
    if (vi) v.set(i, true);
    st.advance(vi, ing[i]);
  }
  return v;
}

BitBlock long_memory_poly(const BitBlock& g_head, int zero_gap, const BitBlock& g_tail) {
  if (g_head.size() == 0 || !g_head.get(0))
    throw std::invalid_argument("long_memory_poly: head must start with 1");
  if (zero_gap < 0) throw std::invalid_argument("long_memory_poly: negative gap");
  BitBlock g(g_head.size() + static_cast<size_t>(zero_gap) + g_tail.size());
  for (size_t i = 0; i < g_head.size(); ++i)
    if (g_head.get(i)) g.set(i, true);
  const size_t off = g_head.size() + static_cast<size_t>(zero_gap);
  for (size_t i = 0; i < g_tail.size(); ++i)
    if (g_tail.get(i)) g.set(off + i, true);
  return g;
}

ProtectionProfile protection_profile(const PrecoderSpec& pre, const CodeSpec& spec) {
  const int N = spec.N();
  ProtectionProfile out;
  out.info = spec.info_set();
  out.taps.reserve(out.info.size());

  const BitBlock* ga = nullptr;
  const BitBlock* gb = nullptr;
  const std::vector<int>* S = nullptr;
  if (const auto* s = pre.single()) {
    ga = &s->g;
  } else {
    ga = &pre.dual()->g_a;
    gb = &pre.dual()->g_b;
    S = &pre.dual()->subset;
    if (!S->empty() && S->back() >= N)
      throw std::invalid_argument("protection_profile: subset index beyond block length");
  }

  for (int i : out.info) {
    int count = 0;
    for (size_t j = 1; j < ga->size(); ++j)
      if (ga->get(j) && i >= static_cast<int>(j) && spec.is_info(i - static_cast<int>(j)))
        ++count;
    if (gb) {
      // What the secondary taps see at step i: the current ingest (if any)
      // followed by earlier ingests, newest first. Tap t reads entry t.
      std::vector<int> seen;
      auto it = std::upper_bound(S->begin(), S->end(), i);
      while (it != S->begin() && seen.size() <= gb->size()) seen.push_back(*--it);
      for (size_t t = 1; t < gb->size(); ++t)
        if (gb->get(t) && t < seen.size() && spec.is_info(seen[t])) ++count;
    }
    out.taps.push_back(count);
    if (count == 0) out.unprotected.push_back(i);
  }
  return out;
}

std::vector<int> default_dual_subset(const CodeSpec& spec) {
  const auto means = ga_means(spec.n(), spec.design_snr_db(), spec.rate());
  std::vector<int> a = spec.info_set();
  std::sort(a.begin(), a.end(), [&](int x, int y) {
    if (means[static_cast<size_t>(x)] != means[static_cast<size_t>(y)])
      return means[static_cast<size_t>(x)] < means[static_cast<size_t>(y)];
    return x < y;
  });
  a.resize(static_cast<size_t>(spec.K() / 4));
  std::sort(a.begin(), a.end());
  return a;
}

}  // namespace pac

#include "pac/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

#include "pac/gf2.hpp"

namespace pac {

namespace {

void check_later_rows(int n, int i, const std::vector<int>& rows, const char* what) {
  const int N = 1 << n;
  for (int j : rows)
    if (j <= i || j >= N)
      throw std::invalid_argument(std::string(what) + ": row indices must lie in (i, 2^n)");
  std::vector<int> s(rows);
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    throw std::invalid_argument(std::string(what) + ": duplicate row index");
}

}  // namespace

BitBlock coset_vector(int n, const CosetQuery& q) {
  if (n < 1 || n >= 30) throw std::invalid_argument("coset_vector: n out of range");
  const int N = 1 << n;
  if (q.leading < 0 || q.leading >= N)
    throw std::invalid_argument("coset_vector: leading index out of range");
  check_later_rows(n, q.leading, q.frozen, "coset_vector frozen");
  check_later_rows(n, q.leading, q.info, "coset_vector info");
  for (int j : q.info)
    if (std::find(q.frozen.begin(), q.frozen.end(), j) != q.frozen.end())
      throw std::invalid_argument("coset_vector: index in both frozen and info");
  BitBlock c = kron_row(n, static_cast<uint64_t>(q.leading));
  for (int j : q.frozen) c ^= kron_row(n, static_cast<uint64_t>(j));
  for (int j : q.info) c ^= kron_row(n, static_cast<uint64_t>(j));
  return c;
}

int coset_weight(int n, const CosetQuery& q) {
  return static_cast<int>(coset_vector(n, q).weight());
}

std::string to_string(CosetCase c) {
  switch (c) {
    case CosetCase::Unchanged: return "unchanged";
    case CosetCase::ReplacedSameWeight: return "replaced-same-weight";
    case CosetCase::WeightIncreased: return "weight-increased";
  }
  throw std::invalid_argument("unknown coset case");
}

CosetCase classify_case(int n, int i, const std::vector<int>& J) {
  if (n < 1 || n >= 30) throw std::invalid_argument("classify_case: n out of range");
  if (i < 0 || i >= (1 << n)) throw std::invalid_argument("classify_case: i out of range");
  check_later_rows(n, i, J, "classify_case");
  const BitBlock gi = kron_row(n, static_cast<uint64_t>(i));
  BitBlock x(gi.size());
  for (int j : J) x ^= kron_row(n, static_cast<uint64_t>(j));
  if (!x.any()) return CosetCase::Unchanged;
  const size_t wc = (gi ^ x).weight();
  const size_t wg = gi.weight();
  if (wc == wg) return CosetCase::ReplacedSameWeight;
  if (wc > wg) return CosetCase::WeightIncreased;
  throw std::logic_error("classify_case: coset member below the row weight");
}

bool lemma1_check(int n, int i, uint64_t trials, uint64_t seed) {
  if (n < 1 || n >= 30) throw std::invalid_argument("lemma1_check: n out of range");
  const int N = 1 << n;
  if (i < 0 || i >= N) throw std::invalid_argument("lemma1_check: i out of range");
  const BitBlock gi = kron_row(n, static_cast<uint64_t>(i));
  const size_t w0 = gi.weight();
  const int m = N - 1 - i;

  if (n <= 4) {
    std::vector<BitBlock> rows;
    rows.reserve(static_cast<size_t>(m));
    for (int j = i + 1; j < N; ++j) rows.push_back(kron_row(n, static_cast<uint64_t>(j)));
    BitBlock c = gi;
    const uint64_t total = uint64_t{1} << m;
    for (uint64_t t = 1; t < total; ++t) {
      c ^= rows[static_cast<size_t>(std::countr_zero(t))];
      if (c.weight() < w0) return false;
    }
    return true;
  }

  std::mt19937_64 rng(seed);
  std::vector<BitBlock> rows;
  rows.reserve(static_cast<size_t>(m));
  for (int j = i + 1; j < N; ++j) rows.push_back(kron_row(n, static_cast<uint64_t>(j)));
  for (uint64_t t = 0; t < trials; ++t) {
    BitBlock c = gi;
    for (int k = 0; k < m; k += 64) {
      uint64_t mask = rng();
      const int lim = std::min(64, m - k);
      for (int b = 0; b < lim; ++b)
        if ((mask >> b) & 1) c ^= rows[static_cast<size_t>(k + b)];
    }
    if (c.weight() < w0) return false;
  }
  return true;
}

namespace {

void spectrum_shard(const std::vector<BitBlock>& rows, size_t N, uint64_t lo, uint64_t hi,
                    std::vector<uint64_t>& hist) {
  BitBlock x(N);
  const uint64_t g = lo ^ (lo >> 1);
  for (size_t k = 0; k < rows.size(); ++k)
    if ((g >> k) & 1) x ^= rows[k];
  ++hist[x.weight()];
  for (uint64_t t = lo + 1; t < hi; ++t) {
    x ^= rows[static_cast<size_t>(std::countr_zero(t))];
    ++hist[x.weight()];
  }
}

}  // namespace

WeightSpectrumEstimate enumerate_bruteforce(const CodeSpec& spec, const PrecoderSpec& pre,
                                            int threads) {
  const int K = spec.K();
  if (K > 24)
    throw std::invalid_argument(
        "enumerate_bruteforce: K > 24; use enumerate_list for codes this large");
  const size_t N = static_cast<size_t>(spec.N());

  std::vector<BitBlock> rows;
  rows.reserve(static_cast<size_t>(K));
  for (int k = 0; k < K; ++k) {
    BitBlock e(static_cast<size_t>(K));
    e.set(static_cast<size_t>(k), true);
    rows.push_back(encode(spec, pre, e));
  }

  const uint64_t total = uint64_t{1} << K;
  int nt = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  if (nt < 1) nt = 1;
  if (total < 4096) nt = 1;
  const uint64_t span = (total + static_cast<uint64_t>(nt) - 1) / static_cast<uint64_t>(nt);

  std::vector<std::vector<uint64_t>> hists(static_cast<size_t>(nt),
                                           std::vector<uint64_t>(N + 1, 0));
  if (nt == 1) {
    spectrum_shard(rows, N, 0, total, hists[0]);
  } else {
    std::vector<std::thread> workers;
    for (int s = 0; s < nt; ++s) {
      const uint64_t lo = static_cast<uint64_t>(s) * span;
      const uint64_t hi = std::min(lo + span, total);
      if (lo >= hi) break;
      workers.emplace_back(spectrum_shard, std::cref(rows), N, lo, hi, std::ref(hists[s]));
    }
    for (auto& w : workers) w.join();
  }

  std::vector<uint64_t> hist(N + 1, 0);
  for (const auto& h : hists)
    for (size_t w = 0; w <= N; ++w) hist[w] += h[w];

  WeightSpectrumEstimate est;
  est.method = "exact";
  est.list_size = 0;
  est.converged = true;
  for (size_t w = 0; w <= N; ++w)
    if (hist[w]) est.histogram[static_cast<int>(w)] = hist[w];
  for (size_t w = 1; w <= N; ++w)
    if (hist[w]) {
      est.d_min = static_cast<int>(w);
      est.a_dmin = hist[w];
      break;
    }
  return est;
}

WeightSpectrumEstimate enumerate_list(const CodeSpec& spec, const PrecoderSpec& pre, int list_size,
                                      int cap_offset) {
  if (list_size < 2) throw std::invalid_argument("enumerate_list: list size must be >= 2");
  if (cap_offset < 0) throw std::invalid_argument("enumerate_list: negative cap_offset");
  const size_t N = static_cast<size_t>(spec.N());
  SclDecoder<int32_t> dec(spec, pre, list_size);
  const std::vector<int32_t> llr(N, 1);
  const auto paths = dec.decode(llr);

  std::vector<int> weights(paths.size());
  for (size_t p = 0; p < paths.size(); ++p) {
    const BitBlock x = polar_transform(precode(pre, paths[p].v));
    weights[p] = static_cast<int>(x.weight());
    if (weights[p] != paths[p].metric)
      throw std::logic_error("enumerate_list: path metric does not match codeword weight");
  }

  WeightSpectrumEstimate est;
  est.method = "list";
  est.list_size = list_size;
  int d_min = 0;
  for (size_t p = 0; p < paths.size(); ++p)
    if (weights[p] > 0 && (d_min == 0 || weights[p] < d_min)) d_min = weights[p];
  est.d_min = d_min;
  if (d_min == 0) {
    est.histogram[0] = 1;
    return est;
  }
  for (size_t p = 0; p < paths.size(); ++p) {
    if (weights[p] == d_min) ++est.a_dmin;
    if (weights[p] <= d_min + cap_offset) ++est.histogram[weights[p]];
  }
  if (paths.size() < static_cast<size_t>(list_size)) {
    est.converged = true;
  } else {
    // Paths arrive weight-sorted: the count is settled once the whole
    // d_min shell sits in the top half of the list.
    const size_t half = (static_cast<size_t>(list_size) + 1) / 2;
    uint64_t prefix = 0;
    for (size_t p = 0; p < std::min(half, paths.size()); ++p)
      if (weights[p] == d_min) ++prefix;
    est.converged = prefix == est.a_dmin;
  }
  return est;
}

double union_bound_fer(const std::map<int, uint64_t>& spectrum, double rate, double ebn0_db) {
  if (!(rate > 0.0)) throw std::invalid_argument("union_bound_fer: rate must be positive");
  const double lin = std::pow(10.0, ebn0_db / 10.0);
  double sum = 0.0;
  for (const auto& [w, count] : spectrum) {
    if (w <= 0) continue;
    sum += static_cast<double>(count) * 0.5 * std::erfc(std::sqrt(w * rate * lin));
  }
  return sum;
}

std::string spectrum_csv_header() { return "code,N,K,dmin,profile,poly,method,L,A_dmin,converged"; }

std::string spectrum_csv_row(const CodeSpec& spec, const PrecoderSpec& pre,
                             const WeightSpectrumEstimate& est) {
  std::string row;
  row += pre.is_identity() ? "polar" : "pac";
  row += ',' + std::to_string(spec.N());
  row += ',' + std::to_string(spec.K());
  row += ',' + std::to_string(est.d_min);
  row += ',' + to_string(spec.method());
  row += ",\"" + pre.describe() + '"';
  row += ',' + est.method;
  row += ',' + std::to_string(est.list_size);
  row += ',' + std::to_string(est.a_dmin);
  row += ',';
  row += est.converged ? '1' : '0';
  return row;
}

}  // namespace pac

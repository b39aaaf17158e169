#include "pac/sim.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <memory>
#include <stdexcept>
#include <thread>

namespace pac {

std::pair<double, double> wilson_interval(uint64_t errors, uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("wilson_interval: no trials");
  if (errors > trials) throw std::invalid_argument("wilson_interval: errors exceed trials");
  constexpr double z = 1.96;
  const double t = static_cast<double>(trials);
  const double p = static_cast<double>(errors) / t;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / t;
  const double center = (p + z2 / (2.0 * t)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / t + z2 / (4.0 * t * t)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace detail {

double noise_sigma2(double rate, double ebn0_db) {
  if (!(rate > 0.0)) throw std::invalid_argument("noise_sigma2: rate must be positive");
  return 1.0 / (2.0 * rate * std::pow(10.0, ebn0_db / 10.0));
}

Trial make_trial(const CodeSpec& spec, const PrecoderSpec& pre, uint64_t seed, uint64_t point,
                 uint64_t trial, double sigma2, bool all_zero_tx) {
  TrialRng rng(seed, point, trial);
  const size_t K = static_cast<size_t>(spec.K());
  const size_t N = static_cast<size_t>(spec.N());

  Trial out{BitBlock(K), std::vector<double>(N)};
  if (!all_zero_tx) {
    for (size_t k = 0; k < K; k += 64) {
      const uint64_t w = rng.next_u64();
      const size_t lim = std::min<size_t>(64, K - k);
      for (size_t b = 0; b < lim; ++b)
        if ((w >> b) & 1) out.message.set(k + b, true);
    }
  }
  const BitBlock x = encode(spec, pre, out.message);
  const double sigma = std::sqrt(sigma2);
  const double scale = 2.0 / sigma2;
  for (size_t i = 0; i < N; ++i) {
    const double s = x.get(i) ? -1.0 : 1.0;
    out.llr[i] = scale * (s + sigma * rng.next_normal());
  }
  return out;
}

namespace {

// Error flags for trials [lo, hi), in trial order.
void run_chunk(const SimConfig& cfg, SclDecoder<double>& dec, uint64_t point, double sigma2,
               uint64_t lo, uint64_t hi, std::vector<uint8_t>& flags) {
  flags.clear();
  for (uint64_t t = lo; t < hi; ++t) {
    const Trial tr = make_trial(cfg.spec, cfg.pre, cfg.rng_seed, point, t, sigma2,
                                cfg.all_zero_tx);
    const auto paths = dec.decode(tr.llr);
    const BitBlock got = extract_message(cfg.spec, paths.front().v);
    flags.push_back(got == tr.message ? 0 : 1);
  }
}

}  // namespace

}  // namespace detail

std::vector<FerPoint> run_fer(const SimConfig& cfg,
                              const std::function<void(const FerPoint&)>& on_point) {
  if (cfg.max_errors < 1) throw std::invalid_argument("run_fer: max_errors must be >= 1");
  if (cfg.max_trials < 1) throw std::invalid_argument("run_fer: max_trials must be >= 1");
  int nt = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency());
  if (nt < 1) nt = 1;

  std::vector<std::unique_ptr<SclDecoder<double>>> decs;
  for (int i = 0; i < nt; ++i)
    decs.push_back(std::make_unique<SclDecoder<double>>(cfg.spec, cfg.pre, cfg.list_size,
                                                        cfg.exact_metric));

  std::vector<FerPoint> out;
  for (const double db : cfg.ebn0_grid) {
    const uint64_t point = std::bit_cast<uint64_t>(db);
    const double sigma2 = detail::noise_sigma2(cfg.spec.rate(), db);

    uint64_t errors = 0;
    uint64_t trials = 0;
    bool done = false;
    std::vector<std::vector<uint8_t>> wave(static_cast<size_t>(nt));
    for (uint64_t chunk = 0; !done; chunk += static_cast<uint64_t>(nt)) {
      const int live = static_cast<int>(
          std::min<uint64_t>(static_cast<uint64_t>(nt),
                             (cfg.max_trials - chunk * detail::kChunk + detail::kChunk - 1) /
                                 detail::kChunk));
      auto bounds = [&](int w) {
        const uint64_t lo = (chunk + static_cast<uint64_t>(w)) * detail::kChunk;
        const uint64_t hi = std::min(lo + detail::kChunk, cfg.max_trials);
        return std::pair<uint64_t, uint64_t>{lo, hi};
      };
      if (nt == 1) {
        const auto [lo, hi] = bounds(0);
        detail::run_chunk(cfg, *decs[0], point, sigma2, lo, hi, wave[0]);
      } else {
        std::vector<std::thread> workers;
        for (int w = 0; w < live; ++w) {
          const auto [lo, hi] = bounds(w);
          if (lo >= hi) break;
          workers.emplace_back([&, w, lo = lo, hi = hi] {
            detail::run_chunk(cfg, *decs[static_cast<size_t>(w)], point, sigma2, lo, hi,
                              wave[static_cast<size_t>(w)]);
          });
        }
        for (auto& th : workers) th.join();
      }
      // Consume in trial order; stop exactly at the max_errors-th error.
      for (int w = 0; w < live && !done; ++w) {
        for (const uint8_t f : wave[static_cast<size_t>(w)]) {
          ++trials;
          errors += f;
          if (errors >= cfg.max_errors || trials >= cfg.max_trials) {
            done = true;
            break;
          }
        }
      }
      if ((chunk + static_cast<uint64_t>(live)) * detail::kChunk >= cfg.max_trials) done = true;
    }

    FerPoint pt;
    pt.ebn0_db = db;
    pt.trials = trials;
    pt.errors = errors;
    pt.fer = trials ? static_cast<double>(errors) / static_cast<double>(trials) : 0.0;
    if (trials) {
      const auto ci = wilson_interval(errors, trials);
      pt.ci_low = ci.first;
      pt.ci_high = ci.second;
    }
    out.push_back(pt);
    if (on_point) on_point(pt);
  }
  return out;
}

std::string fer_csv_header() { return "ebn0_db,fer,trials,errors,ci_low,ci_high"; }

std::string fer_csv_row(const FerPoint& pt) {
  char buf[192];
  std::snprintf(buf, sizeof(buf), "%g,%.9g,%llu,%llu,%.9g,%.9g", pt.ebn0_db, pt.fer,
                static_cast<unsigned long long>(pt.trials),
                static_cast<unsigned long long>(pt.errors), pt.ci_low, pt.ci_high);
  return buf;
}

}  // namespace pac

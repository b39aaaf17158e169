// Monte-Carlo FER over BPSK/AWGN with reproducible, order-independent trials.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "pac/bitblock.hpp"
#include "pac/codec.hpp"
#include "pac/construction.hpp"
#include "pac/precoder.hpp"

namespace pac {

struct SimConfig {
  CodeSpec spec;
  PrecoderSpec pre;
  int list_size = 32;
  std::vector<double> ebn0_grid{};
  uint64_t max_trials = 2'000'000;
  uint64_t max_errors = 100;
  uint64_t rng_seed = 1;
  int threads = 1;  // 0 picks the hardware count
  bool exact_metric = false;
  bool all_zero_tx = false;  // diagnostic: send the zero codeword
};

struct FerPoint {
  double ebn0_db = 0.0;
  double fer = 0.0;
  uint64_t trials = 0;
  uint64_t errors = 0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

// 95% Wilson score interval.
std::pair<double, double> wilson_interval(uint64_t errors, uint64_t trials);

// Runs every grid point until max_errors frame errors or max_trials frames.
// Trials are numbered and seeded individually, and the stop rule counts them
// in numeric order, so the result is independent of the thread count.
std::vector<FerPoint> run_fer(const SimConfig& cfg,
                              const std::function<void(const FerPoint&)>& on_point = {});

std::string fer_csv_header();
std::string fer_csv_row(const FerPoint& pt);

namespace detail {

inline constexpr uint64_t kChunk = 256;  // trials per scheduling unit

// Small counter-based generator: one independent stream per (seed, point,
// trial), so trial t draws the same noise no matter which worker runs it.
class TrialRng {
public:
  TrialRng(uint64_t seed, uint64_t point, uint64_t trial)
      : state_(scramble(scramble(scramble(seed) ^ point) ^ trial)) {}

  uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform on (0, 1]; never 0, so it can feed a log.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1p-53 + 0x1p-53; }

  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(next_unit()));
    const double th = 6.283185307179586476925286766559 * next_unit();
    spare_ = r * std::sin(th);
    have_spare_ = true;
    return r * std::cos(th);
  }

private:
  static uint64_t scramble(uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Noise variance per BPSK dimension at a given Eb/N0.
double noise_sigma2(double rate, double ebn0_db);

struct Trial {
  BitBlock message;
  std::vector<double> llr;
};

Trial make_trial(const CodeSpec& spec, const PrecoderSpec& pre, uint64_t seed, uint64_t point,
                 uint64_t trial, double sigma2, bool all_zero_tx);

}  // namespace detail

}  // namespace pac

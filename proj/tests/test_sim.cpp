#include <bit>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "pac/sim.hpp"

using pac::CodeSpec;
using pac::FerPoint;
using pac::PrecoderSpec;
using pac::SimConfig;

namespace {

SimConfig small_config() {
  SimConfig cfg{pac::build_profile(4, 8, pac::ProfileMethod::RMPolar, 3.0),
                PrecoderSpec{pac::SinglePoly{pac::BitBlock::from_taps({1, 0, 1, 1})}}};
  cfg.list_size = 4;
  cfg.ebn0_grid = {1.0, 3.0};
  cfg.max_trials = 3000;
  cfg.max_errors = 60;
  cfg.rng_seed = 9;
  return cfg;
}

bool points_equal(const std::vector<FerPoint>& a, const std::vector<FerPoint>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].ebn0_db != b[i].ebn0_db || a[i].fer != b[i].fer || a[i].trials != b[i].trials ||
        a[i].errors != b[i].errors || a[i].ci_low != b[i].ci_low || a[i].ci_high != b[i].ci_high)
      return false;
  return true;
}

}  // namespace

TEST_CASE("wilson interval") {
  const auto [lo, hi] = pac::wilson_interval(10, 1000);
  CHECK(lo == doctest::Approx(0.005440695309270557).epsilon(1e-14));
  CHECK(hi == doctest::Approx(0.01830966530539216).epsilon(1e-14));

  const auto [zlo, zhi] = pac::wilson_interval(0, 100);
  CHECK(zlo == 0.0);
  CHECK(zhi > 0.0);
  CHECK(zhi < 0.05);

  const auto [flo, fhi] = pac::wilson_interval(100, 100);
  CHECK(flo < 1.0);
  CHECK(fhi == doctest::Approx(1.0));

  CHECK_THROWS_AS(pac::wilson_interval(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(pac::wilson_interval(5, 4), std::invalid_argument);
}

TEST_CASE("noise variance per Eb/N0") {
  CHECK(pac::detail::noise_sigma2(0.5, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(pac::detail::noise_sigma2(0.5, 3.0) ==
        doctest::Approx(1.0 / std::pow(10.0, 0.3)).epsilon(1e-14));
  CHECK(pac::detail::noise_sigma2(0.25, 2.0) ==
        doctest::Approx(1.0 / (0.5 * std::pow(10.0, 0.2))).epsilon(1e-14));
}

TEST_CASE("per-trial rng streams are reproducible and separated") {
  pac::detail::TrialRng a(1, 2, 3), b(1, 2, 3), c(1, 2, 4);
  bool same = true, diff = false;
  for (int k = 0; k < 64; ++k) {
    const uint64_t va = a.next_u64();
    same = same && va == b.next_u64();
    diff = diff || va != c.next_u64();
  }
  CHECK(same);
  CHECK(diff);

  pac::detail::TrialRng u(5, 6, 7);
  double mean = 0.0, var = 0.0;
  const int samples = 100000;
  for (int k = 0; k < samples; ++k) {
    const double x = u.next_normal();
    mean += x;
    var += x * x;
  }
  mean /= samples;
  var = var / samples - mean * mean;
  CHECK(std::abs(mean) < 0.02);
  CHECK(var == doctest::Approx(1.0).epsilon(0.03));

  pac::detail::TrialRng w(8, 9, 10);
  for (int k = 0; k < 10000; ++k) {
    const double x = w.next_unit();
    CHECK(x > 0.0);
    CHECK(x <= 1.0);
  }
}

TEST_CASE("trials are a pure function of their coordinates") {
  const CodeSpec spec = pac::build_profile(4, 8, pac::ProfileMethod::RMPolar, 3.0);
  const PrecoderSpec pre = PrecoderSpec::identity();
  const auto t1 = pac::detail::make_trial(spec, pre, 1, 42, 7, 0.8, false);
  const auto t2 = pac::detail::make_trial(spec, pre, 1, 42, 7, 0.8, false);
  CHECK(t1.message == t2.message);
  CHECK(t1.llr == t2.llr);
  const auto t3 = pac::detail::make_trial(spec, pre, 1, 42, 8, 0.8, false);
  CHECK(t1.llr != t3.llr);

  const auto z = pac::detail::make_trial(spec, pre, 1, 42, 7, 0.8, true);
  CHECK_FALSE(z.message.any());
  REQUIRE(z.llr.size() == 16);
}

TEST_CASE("fer runs are reproducible and independent of the thread count") {
  const SimConfig cfg = small_config();
  const auto first = pac::run_fer(cfg);
  const auto second = pac::run_fer(cfg);
  REQUIRE(first.size() == 2);
  CHECK(points_equal(first, second));

  SimConfig threaded = cfg;
  threaded.threads = 2;
  CHECK(points_equal(first, pac::run_fer(threaded)));
  threaded.threads = 3;
  CHECK(points_equal(first, pac::run_fer(threaded)));

  for (const auto& pt : first) {
    CHECK(pt.trials <= cfg.max_trials);
    CHECK((pt.errors >= cfg.max_errors || pt.trials == cfg.max_trials));
    CHECK(pt.fer == doctest::Approx(static_cast<double>(pt.errors) /
                                    static_cast<double>(pt.trials)));
    const auto [lo, hi] = pac::wilson_interval(pt.errors, pt.trials);
    CHECK(pt.ci_low == lo);
    CHECK(pt.ci_high == hi);
  }
  // more noise, more errors
  CHECK(first[0].fer > first[1].fer);

  // the callback sees the points in grid order
  SimConfig cb = cfg;
  std::vector<double> seen;
  pac::run_fer(cb, [&](const FerPoint& pt) { seen.push_back(pt.ebn0_db); });
  CHECK(seen == std::vector<double>{1.0, 3.0});
}

TEST_CASE("stopping rules") {
  SimConfig cfg = small_config();
  cfg.ebn0_grid = {0.0};
  cfg.max_errors = 10;
  cfg.max_trials = 100000;
  const auto noisy = pac::run_fer(cfg);
  REQUIRE(noisy.size() == 1);
  CHECK(noisy[0].errors == 10);  // stops at exactly the requested error count

  cfg.ebn0_grid = {10.0};
  cfg.max_trials = 500;
  const auto clean = pac::run_fer(cfg);
  CHECK(clean[0].trials == 500);
  CHECK(clean[0].errors < 10);
}

TEST_CASE("all-zero transmission is a valid control") {
  SimConfig cfg = small_config();
  cfg.ebn0_grid = {1.5};
  cfg.all_zero_tx = true;
  const auto a = pac::run_fer(cfg);
  const auto b = pac::run_fer(cfg);
  CHECK(points_equal(a, b));
  CHECK(a[0].fer > 0.0);
  CHECK(a[0].fer < 1.0);
}

TEST_CASE("grid values keep their own noise streams") {
  // the same physical point produces the same numbers even in another grid
  SimConfig one = small_config();
  one.ebn0_grid = {3.0};
  SimConfig two = small_config();
  two.ebn0_grid = {2.0, 3.0};
  const auto a = pac::run_fer(one);
  const auto b = pac::run_fer(two);
  CHECK(a[0].fer == b[1].fer);
  CHECK(a[0].errors == b[1].errors);
  CHECK(a[0].trials == b[1].trials);
}

TEST_CASE("fer csv strings") {
  CHECK(pac::fer_csv_header() == "ebn0_db,fer,trials,errors,ci_low,ci_high");
  FerPoint pt;
  pt.ebn0_db = 2.5;
  pt.fer = 0.01;
  pt.trials = 1000;
  pt.errors = 10;
  const auto [lo, hi] = pac::wilson_interval(10, 1000);
  pt.ci_low = lo;
  pt.ci_high = hi;
  CHECK(pac::fer_csv_row(pt) == "2.5,0.01,1000,10,0.00544069531,0.0183096653");
}

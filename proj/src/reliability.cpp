#include "pac/reliability.hpp"

#include <cmath>
#include <stdexcept>

namespace pac {

double ga_phi(double x) {
  if (x < 10.0) return std::exp(-0.4527 * std::pow(x, 0.86) + 0.0218);
  return std::sqrt(M_PI / x) * std::exp(-x / 4.0) * (1.0 - 10.0 / (7.0 * x));
}

double ga_phi_inv(double y) {
  double lo = 1e-12, hi = 1e7;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (ga_phi(mid) > y)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> ga_means(int n, double design_snr_db, double rate) {
  if (n < 0 || n > 30) throw std::invalid_argument("ga_means: n out of range");
  if (!(rate > 0.0) || rate > 1.0 || !std::isfinite(design_snr_db))
    throw std::invalid_argument("ga_means: invalid rate or design SNR");
  // mean LLR of the raw channel: 2/sigma^2 with sigma^2 = 1/(2 R Eb/N0)
  std::vector<double> cur{4.0 * rate * std::pow(10.0, design_snr_db / 10.0)};
  for (int s = 0; s < n; ++s) {
    std::vector<double> next(cur.size() * 2);
    for (size_t p = 0; p < cur.size(); ++p) {
      const double m = cur[p];
      next[2 * p] = ga_phi_inv(1.0 - (1.0 - ga_phi(m)) * (1.0 - ga_phi(m)));
      next[2 * p + 1] = 2.0 * m;
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace pac

// Gaussian-approximation density evolution for BI-AWGN sub-channel reliabilities.
#pragma once

#include <vector>

namespace pac {

inline constexpr double kDefaultDesignSnrDb = 3.0;

// Chung-style phi and its inverse (bisection); exposed for tests.
double ga_phi(double x);
double ga_phi_inv(double y);

// Mean LLRs of the N = 2^n synthetic channels at the given design Eb/N0 (dB)
// and code rate. Larger mean = more reliable sub-channel. Bit convention: the
// most significant bit of the channel index selects the first (outermost)
// polarization split.
std::vector<double> ga_means(int n, double design_snr_db, double rate);

}  // namespace pac

// Slow reference implementations the tests check the library against.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pac/bitblock.hpp"
#include "pac/construction.hpp"
#include "pac/precoder.hpp"

namespace oracle {

// Dense transform matrix straight from the tensor-product definition.
std::vector<std::vector<uint8_t>> kron_matrix(int n);
pac::BitBlock matrix_transform(const std::vector<std::vector<uint8_t>>& m, const pac::BitBlock& u);

// Plain polar SCL (frozen bits pinned to zero) with per-path eager state:
// leaf LLRs recomputed by the textbook recursion, no sharing, no banks. Same
// min-sum f/g and |llr| penalty as the production decoder.
struct RefPath {
  pac::BitBlock u;
  double metric;
};
std::vector<RefPath> reference_polar_scl(const pac::CodeSpec& spec, const std::vector<double>& llr,
                                         int list_size);

// Exhaustive minimum of the decoder's metric: sum of |llr_j| over positions
// where the codeword disagrees with the hard decision. 2^K encodings.
double brute_ml_metric(const pac::CodeSpec& spec, const pac::PrecoderSpec& pre,
                       const std::vector<double>& llr);

// Exact weight enumerator A_0..A_N computed from the dual code and the
// MacWilliams identity; needs N <= 64 and N - K <= 24.
std::vector<uint64_t> spectrum_via_dual(const pac::CodeSpec& spec, const pac::PrecoderSpec& pre);

}  // namespace oracle

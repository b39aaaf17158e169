// Polar-transform rows, the in-place transform, and Toeplitz generator matrices.
#pragma once

#include <cstdint>

#include "pac/bitblock.hpp"

namespace pac {

// Row i of the n-fold Kronecker power of [[1,0],[1,1]]. Entry j is 1 iff the
// binary expansion of j is a subset of i's, so the row weight is 2^popcount(i).
BitBlock kron_row(int n, uint64_t i);

// x = u * P^{(x)n} over GF(2), in-place butterfly, O(N log N) bit ops.
void polar_transform_inplace(BitBlock& u);
BitBlock polar_transform(const BitBlock& u);

// Upper-triangular Toeplitz matrix: row r is the polynomial g (g[0] = 1)
// placed at columns [r, r+m], truncated at N.
class ToeplitzMatrix {
public:
  ToeplitzMatrix(BitBlock g, size_t n_dim);
  const BitBlock& g() const { return g_; }
  size_t dim() const { return n_; }
  size_t memory() const { return g_.size() - 1; }
  BitBlock row(size_t r) const;
  BitBlock apply(const BitBlock& v) const;  // v * G
  ToeplitzMatrix inverse() const;           // Toeplitz of the power-series inverse of g
private:
  BitBlock g_;
  size_t n_;
};

}  // namespace pac

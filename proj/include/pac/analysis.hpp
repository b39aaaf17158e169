// Minimum-weight structure: cosets of the polar transform, spectrum
// enumeration, and the union bound they feed.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pac/bitblock.hpp"
#include "pac/codec.hpp"
#include "pac/construction.hpp"
#include "pac/precoder.hpp"

namespace pac {

// One coset of the transform: row `leading` set to 1, a choice of later
// frozen and later info rows XORed on top.
struct CosetQuery {
  int leading = 0;
  std::vector<int> frozen;
  std::vector<int> info;
};

BitBlock coset_vector(int n, const CosetQuery& q);
int coset_weight(int n, const CosetQuery& q);

// Effect of XORing the rows in J (all beyond i) onto row i.
enum class CosetCase { Unchanged, ReplacedSameWeight, WeightIncreased };
std::string to_string(CosetCase c);
CosetCase classify_case(int n, int i, const std::vector<int>& J);

// Checks that every tested member of the coset led by row i weighs at least
// as much as the row itself. Exhaustive over the later rows for n <= 4,
// otherwise `trials` random subsets.
bool lemma1_check(int n, int i, uint64_t trials = 100000, uint64_t seed = 1);

struct WeightSpectrumEstimate {
  int d_min = 0;
  uint64_t a_dmin = 0;
  std::string method;  // "exact" or "list"
  int list_size = 0;   // 0 for exact
  bool converged = false;
  std::map<int, uint64_t> histogram;  // weight -> count, includes weight 0
};

// Gray-code walk over all 2^K messages; K is capped at 24.
WeightSpectrumEstimate enumerate_bruteforce(const CodeSpec& spec, const PrecoderSpec& pre,
                                            int threads = 0);

// List decode of the all-zero word under unit LLRs: with the min-sum metric
// every surviving path's metric equals its codeword weight, so the list is
// the low end of the spectrum. Counts are exact once the weight-d_min shell
// fits in the top half of the list. The histogram keeps weights up to
// d_min + cap_offset.
WeightSpectrumEstimate enumerate_list(const CodeSpec& spec, const PrecoderSpec& pre, int list_size,
                                      int cap_offset = 8);

// Sum of A_w * Q(sqrt(2 w R Eb/N0)) over the spectrum; the w = 0 entry is
// skipped.
double union_bound_fer(const std::map<int, uint64_t>& spectrum, double rate, double ebn0_db);

std::string spectrum_csv_header();
std::string spectrum_csv_row(const CodeSpec& spec, const PrecoderSpec& pre,
                             const WeightSpectrumEstimate& est);

}  // namespace pac

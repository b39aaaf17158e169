// Rate-profile construction and the derived min-weight index sets.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pac/bitblock.hpp"
#include "pac/reliability.hpp"

namespace pac {

enum class ProfileMethod { RM, RMPolar, ReliabilityOnly, Explicit };

std::string to_string(ProfileMethod m);
ProfileMethod profile_method_from_string(const std::string& s);

struct IndexSets {
  int d_min = 0;
  std::vector<int> M;      // info indices whose transform row has weight d_min
  std::vector<int> Ncrit;  // frozen indices above min(M)
};

class CodeSpec {
public:
  CodeSpec(int n, std::vector<int> info_set, ProfileMethod method, double design_snr_db);

  int n() const { return n_; }
  int N() const { return N_; }
  int K() const { return static_cast<int>(a_.size()); }
  double rate() const { return static_cast<double>(K()) / N_; }
  const std::vector<int>& info_set() const { return a_; }
  bool is_info(int i) const { return mask_[static_cast<size_t>(i)] != 0; }
  const std::vector<uint8_t>& info_mask() const { return mask_; }
  ProfileMethod method() const { return method_; }
  double design_snr_db() const { return snr_; }
  const IndexSets& index_sets() const { return sets_; }

private:
  int n_, N_;
  std::vector<int> a_;
  std::vector<uint8_t> mask_;
  ProfileMethod method_;
  double snr_;
  IndexSets sets_;
};

// RM / RMPolar: take every index whose popcount exceeds a threshold t (t chosen
// so the count crosses K), then fill from the popcount-t class by descending
// GA reliability, ties by ascending index. ReliabilityOnly: plain top-K.
CodeSpec build_profile(int n, int K, ProfileMethod method,
                       double design_snr_db = kDefaultDesignSnrDb);
CodeSpec explicit_profile(int n, std::vector<int> info_set,
                          double design_snr_db = kDefaultDesignSnrDb);

inline const IndexSets& index_sets(const CodeSpec& spec) { return spec.index_sets(); }

// True iff no frozen index lies above a min-weight info index; predicts that
// precoding cannot change the min-weight multiplicity.
bool corollary2_holds(const CodeSpec& spec);

// N/2^m contiguous [lo, hi) ranges of width 2^m.
std::vector<std::pair<int, int>> segments(const CodeSpec& spec, int m);

// Plain-text config: lines n=, K=, method=, design_snr_db=, optional A=.
std::string to_config(const CodeSpec& spec);
CodeSpec from_config(const std::string& text);

}  // namespace pac

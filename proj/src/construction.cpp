#include "pac/construction.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace pac {

std::string to_string(ProfileMethod m) {
  switch (m) {
    case ProfileMethod::RM: return "rm";
    case ProfileMethod::RMPolar: return "rm-polar";
    case ProfileMethod::ReliabilityOnly: return "reliability";
    case ProfileMethod::Explicit: return "explicit";
  }
  throw std::logic_error("unknown ProfileMethod");
}

ProfileMethod profile_method_from_string(const std::string& s) {
  if (s == "rm") return ProfileMethod::RM;
  if (s == "rm-polar" || s == "rmpolar") return ProfileMethod::RMPolar;
  if (s == "reliability") return ProfileMethod::ReliabilityOnly;
  if (s == "explicit") return ProfileMethod::Explicit;
  throw std::invalid_argument("unknown profile method '" + s +
                              "' (expected rm | rm-polar | reliability | explicit)");
}

namespace {

IndexSets derive_sets(int n, const std::vector<int>& A, const std::vector<uint8_t>& mask) {
  IndexSets s;
  int minpc = n + 1;
  for (int i : A) minpc = std::min(minpc, std::popcount(static_cast<unsigned>(i)));
  s.d_min = 1 << minpc;
  for (int i : A)
    if (std::popcount(static_cast<unsigned>(i)) == minpc) s.M.push_back(i);
  const int first = s.M.front();
  const int N = 1 << n;
  for (int j = first + 1; j < N; ++j)
    if (!mask[static_cast<size_t>(j)]) s.Ncrit.push_back(j);
  return s;
}

}  // namespace

CodeSpec::CodeSpec(int n, std::vector<int> info_set, ProfileMethod method, double design_snr_db)
    : n_(n), N_(1 << n), a_(std::move(info_set)), method_(method), snr_(design_snr_db) {
  if (n < 0 || n > 30) throw std::invalid_argument("CodeSpec: n out of range");
  if (a_.empty()) throw std::invalid_argument("CodeSpec: empty information set");
  if (!std::is_sorted(a_.begin(), a_.end()))
    throw std::invalid_argument("CodeSpec: information set must be sorted");
  if (std::adjacent_find(a_.begin(), a_.end()) != a_.end())
    throw std::invalid_argument("CodeSpec: duplicate information index");
  if (a_.front() < 0 || a_.back() >= N_)
    throw std::invalid_argument("CodeSpec: information index out of range");
  if (!std::isfinite(snr_)) throw std::invalid_argument("CodeSpec: bad design SNR");
  mask_.assign(static_cast<size_t>(N_), 0);
  for (int i : a_) mask_[static_cast<size_t>(i)] = 1;
  sets_ = derive_sets(n_, a_, mask_);
}

CodeSpec build_profile(int n, int K, ProfileMethod method, double design_snr_db) {
  if (n < 0 || n > 30) throw std::invalid_argument("build_profile: n out of range");
  const int N = 1 << n;
  if (K <= 0 || K > N) throw std::invalid_argument("build_profile: K out of range");
  if (method == ProfileMethod::Explicit)
    throw std::invalid_argument("build_profile: explicit profiles need an index set");

  const auto means = ga_means(n, design_snr_db, static_cast<double>(K) / N);
  std::vector<int> A;
  A.reserve(static_cast<size_t>(K));

  if (method == ProfileMethod::ReliabilityOnly) {
    std::vector<int> idx(static_cast<size_t>(N));
    for (int i = 0; i < N; ++i) idx[static_cast<size_t>(i)] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
      if (means[static_cast<size_t>(a)] != means[static_cast<size_t>(b)])
        return means[static_cast<size_t>(a)] > means[static_cast<size_t>(b)];
      return a < b;
    });
    A.assign(idx.begin(), idx.begin() + K);
  } else {
    std::vector<std::vector<int>> cls(static_cast<size_t>(n) + 1);
    for (int i = 0; i < N; ++i)
      cls[static_cast<size_t>(std::popcount(static_cast<unsigned>(i)))].push_back(i);
    int need = K;
    for (int pc = n; pc >= 0 && need > 0; --pc) {
      auto& c = cls[static_cast<size_t>(pc)];
      if (static_cast<int>(c.size()) <= need) {
        A.insert(A.end(), c.begin(), c.end());
        need -= static_cast<int>(c.size());
      } else {
        std::sort(c.begin(), c.end(), [&](int a, int b) {
          if (means[static_cast<size_t>(a)] != means[static_cast<size_t>(b)])
            return means[static_cast<size_t>(a)] > means[static_cast<size_t>(b)];
          return a < b;
        });
        A.insert(A.end(), c.begin(), c.begin() + need);
        need = 0;
      }
    }
  }
  std::sort(A.begin(), A.end());
  return CodeSpec(n, std::move(A), method, design_snr_db);
}

CodeSpec explicit_profile(int n, std::vector<int> info_set, double design_snr_db) {
  return CodeSpec(n, std::move(info_set), ProfileMethod::Explicit, design_snr_db);
}

bool corollary2_holds(const CodeSpec& spec) { return spec.index_sets().Ncrit.empty(); }

std::vector<std::pair<int, int>> segments(const CodeSpec& spec, int m) {
  if (m < 0 || m > spec.n())
    throw std::invalid_argument("segments: memory exceeds log2 of block length");
  const int width = 1 << m;
  std::vector<std::pair<int, int>> out;
  for (int lo = 0; lo < spec.N(); lo += width) out.emplace_back(lo, lo + width);
  return out;
}

namespace {

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (size_t k = 0; k < v.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(v[k]);
  }
  return s;
}

}  // namespace

std::string to_config(const CodeSpec& spec) {
  char snr[64];
  std::snprintf(snr, sizeof snr, "%.17g", spec.design_snr_db());
  std::string out;
  out += "n=" + std::to_string(spec.n()) + "\n";
  out += "K=" + std::to_string(spec.K()) + "\n";
  out += "method=" + to_string(spec.method()) + "\n";
  out += "design_snr_db=" + std::string(snr) + "\n";
  out += "A=" + join_ints(spec.info_set()) + "\n";
  return out;
}

CodeSpec from_config(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int n = -1, K = -1;
  bool have_method = false, have_snr = false;
  ProfileMethod method = ProfileMethod::RMPolar;
  double snr = kDefaultDesignSnrDb;
  std::vector<int> A;
  bool have_A = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key=value");
    std::string key = line.substr(first, eq - first);
    std::string val = line.substr(eq + 1);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
    while (!val.empty() && (val.back() == ' ' || val.back() == '\t' || val.back() == '\r'))
      val.pop_back();
    try {
      if (key == "n")
        n = std::stoi(val);
      else if (key == "K")
        K = std::stoi(val);
      else if (key == "method") {
        method = profile_method_from_string(val);
        have_method = true;
      } else if (key == "design_snr_db") {
        snr = std::stod(val);
        have_snr = true;
      } else if (key == "A") {
        std::stringstream vs(val);
        std::string tok;
        while (std::getline(vs, tok, ',')) A.push_back(std::stoi(tok));
        have_A = true;
      } else {
        throw std::invalid_argument("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": bad value for '" + key + "'");
    }
  }
  (void)have_snr;
  if (n < 0) throw std::invalid_argument("config: missing n=");
  if (K < 0) throw std::invalid_argument("config: missing K=");
  if (have_A) {
    std::sort(A.begin(), A.end());
    if (static_cast<int>(A.size()) != K)
      throw std::invalid_argument("config: |A| does not match K");
    return CodeSpec(n, std::move(A), have_method ? method : ProfileMethod::Explicit, snr);
  }
  if (!have_method) throw std::invalid_argument("config: missing method= (or an A= set)");
  return build_profile(n, K, method, snr);
}

}  // namespace pac

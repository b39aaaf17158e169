// Command-line front end: profile | enumerate | simulate | analyze.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pac/analysis.hpp"
#include "pac/codec.hpp"
#include "pac/construction.hpp"
#include "pac/gf2.hpp"
#include "pac/precoder.hpp"
#include "pac/sim.hpp"
#include "pac/version.hpp"

namespace {

using namespace pac;

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 14695981039346656037ull;
  for (const unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// "pac <version> <command> <params> config_hash=<hex>"; no timestamps, so a
// rerun emits the same bytes.
std::string manifest_line(const std::string& cmd, const std::string& params) {
  const std::string base = std::string("pac ") + kVersion + " " + cmd + " " + params;
  char hex[24];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a(base)));
  return "# " + base + " config_hash=" + hex;
}

double parse_double(const std::string& tok) {
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad number: '" + tok + "'");
  }
  if (used != tok.size()) throw std::invalid_argument("bad number: '" + tok + "'");
  return v;
}

BitBlock parse_poly(std::string s) {
  s.erase(std::remove(s.begin(), s.end(), ','), s.end());
  if (s.empty()) throw std::invalid_argument("empty polynomial");
  for (const char c : s)
    if (c != '0' && c != '1') throw std::invalid_argument("polynomial taps must be 0 or 1");
  return BitBlock::from_string(s);
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad index list: '" + s + "'");
    }
    if (used != tok.size()) throw std::invalid_argument("bad index list: '" + s + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty index list");
  return out;
}

// "start:step:stop" (inclusive) or a single value.
std::vector<double> parse_grid(const std::string& s) {
  const size_t c1 = s.find(':');
  if (c1 == std::string::npos) return {parse_double(s)};
  const size_t c2 = s.find(':', c1 + 1);
  if (c2 == std::string::npos || s.find(':', c2 + 1) != std::string::npos)
    throw std::invalid_argument("grid must be start:step:stop");
  const double a = parse_double(s.substr(0, c1));
  const double b = parse_double(s.substr(c1 + 1, c2 - c1 - 1));
  const double c = parse_double(s.substr(c2 + 1));
  if (!(b > 0.0)) throw std::invalid_argument("grid step must be positive");
  if (c < a) throw std::invalid_argument("grid stop is before start");
  const long count = std::lround(std::floor((c - a) / b + 1e-9)) + 1;
  std::vector<double> g;
  g.reserve(static_cast<size_t>(count));
  for (long i = 0; i < count; ++i) g.push_back(a + static_cast<double>(i) * b);
  return g;
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

struct SpecArgs {
  int n = -1;
  int k = -1;
  std::string method = "rm-polar";
  double snr = kDefaultDesignSnrDb;
  std::string config;
};

void add_spec_opts(CLI::App* cmd, SpecArgs& a) {
  auto* on = cmd->add_option("-n,--log2-length", a.n, "log2 of the block length");
  auto* ok = cmd->add_option("-k,--info-bits", a.k, "number of information bits");
  auto* om = cmd->add_option("--method", a.method, "rate profile: rm, rm-polar, reliability");
  auto* os = cmd->add_option("--design-snr", a.snr, "design Eb/N0 in dB for the reliability order");
  auto* oc = cmd->add_option("--config", a.config, "read the code spec from a config file");
  oc->excludes(on)->excludes(ok)->excludes(om)->excludes(os);
}

CodeSpec make_spec(const SpecArgs& a) {
  if (!a.config.empty()) {
    std::ifstream f(a.config);
    if (!f) throw std::invalid_argument("cannot read config: " + a.config);
    std::stringstream ss;
    ss << f.rdbuf();
    return from_config(ss.str());
  }
  if (a.n < 0 || a.k < 0) throw std::invalid_argument("need -n and -k (or --config)");
  return build_profile(a.n, a.k, profile_method_from_string(a.method), a.snr);
}

struct PreArgs {
  std::string poly = "1";
  bool dual = false;
  std::string poly_a, poly_b;
  std::string subset = "auto";
};

void add_pre_opts(CLI::App* cmd, PreArgs& a) {
  cmd->add_option("--poly", a.poly, "precoder taps, e.g. 1,0,1,1,0,1,1 (1 = plain polar)");
  cmd->add_flag("--dual", a.dual, "use the dual shift-register precoder");
  cmd->add_option("--poly-a", a.poly_a, "dual scheme: taps applied to every input");
  cmd->add_option("--poly-b", a.poly_b, "dual scheme: taps over the ingested subset (tap 0 = 0)");
  cmd->add_option("--subset", a.subset, "dual scheme: 'auto' or comma-separated indices");
}

PrecoderSpec make_pre(const PreArgs& a, const CodeSpec& spec) {
  if (!a.dual) {
    if (!a.poly_a.empty() || !a.poly_b.empty())
      throw std::invalid_argument("--poly-a/--poly-b require --dual");
    return PrecoderSpec(SinglePoly{parse_poly(a.poly)});
  }
  if (a.poly_a.empty() || a.poly_b.empty())
    throw std::invalid_argument("--dual requires --poly-a and --poly-b");
  std::vector<int> s;
  if (a.subset == "auto") {
    s = default_dual_subset(spec);
  } else {
    s = parse_int_list(a.subset);
    std::sort(s.begin(), s.end());
  }
  return PrecoderSpec(DualRegister{parse_poly(a.poly_a), parse_poly(a.poly_b), std::move(s)});
}

std::string spec_params(const CodeSpec& spec) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", spec.design_snr_db());
  std::string s = "n=" + std::to_string(spec.n()) + " k=" + std::to_string(spec.K()) +
                  " method=" + to_string(spec.method()) + " design_snr=" + buf;
  if (spec.method() == ProfileMethod::Explicit) s += " A=" + join_ints(spec.info_set());
  return s;
}

std::ostream& open_out(const std::string& path, std::ofstream& file) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw std::invalid_argument("cannot open output file: " + path);
  return file;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void run_profile(const SpecArgs& sa, int memory, const std::string& out_path) {
  const CodeSpec spec = make_spec(sa);
  const IndexSets& sets = spec.index_sets();
  char snr[64];
  std::snprintf(snr, sizeof snr, "%.6g", spec.design_snr_db());
  std::cout << "N=" << spec.N() << "\n"
            << "K=" << spec.K() << "\n"
            << "method=" << to_string(spec.method()) << "\n"
            << "design_snr_db=" << snr << "\n"
            << "A=" << join_ints(spec.info_set()) << "\n"
            << "d_min=" << sets.d_min << "\n"
            << "M=" << join_ints(sets.M) << "\n"
            << "Ncrit=" << join_ints(sets.Ncrit) << "\n"
            << "corollary2=" << (corollary2_holds(spec) ? "true" : "false") << "\n";
  if (memory >= 0) {
    std::cout << "segments=";
    const auto segs = segments(spec, memory);
    for (size_t i = 0; i < segs.size(); ++i) {
      if (i) std::cout << ',';
      std::cout << '[' << segs[i].first << ',' << segs[i].second << ')';
    }
    std::cout << "\n";
  }
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw std::invalid_argument("cannot open output file: " + out_path);
    f << to_config(spec);
  }
}

void run_enumerate(const SpecArgs& sa, const PreArgs& pa, int L, bool exact, int cap, int threads,
                   bool histogram, const std::string& out_path) {
  const auto t0 = std::chrono::steady_clock::now();
  const CodeSpec spec = make_spec(sa);
  const PrecoderSpec pre = make_pre(pa, spec);

  WeightSpectrumEstimate est;
  std::string params = spec_params(spec) + " pre=\"" + pre.describe() + "\"";
  if (exact) {
    if (L >= 0) throw std::invalid_argument("--exact and -L are mutually exclusive");
    est = enumerate_bruteforce(spec, pre, threads);
    params += " mode=exact";
  } else {
    if (L < 0) throw std::invalid_argument("need -L (list size) or --exact");
    est = enumerate_list(spec, pre, L, cap);
    params += " mode=list L=" + std::to_string(L) + " cap=" + std::to_string(cap);
  }

  std::ofstream file;
  std::ostream& out = open_out(out_path, file);
  out << manifest_line("enumerate", params) << "\n"
      << spectrum_csv_header() << "\n"
      << spectrum_csv_row(spec, pre, est) << "\n";
  if (histogram) {
    out << "# histogram\nweight,count\n";
    for (const auto& [w, c] : est.histogram) out << w << ',' << c << "\n";
  }
  std::fprintf(stderr, "enumerate: d_min=%d A_dmin=%llu converged=%d (%.1fs)\n", est.d_min,
               static_cast<unsigned long long>(est.a_dmin), est.converged ? 1 : 0,
               seconds_since(t0));
}

void run_simulate(const SpecArgs& sa, const PreArgs& pa, int L, const std::string& snr,
                  uint64_t max_trials, uint64_t max_errors, uint64_t seed, int threads,
                  bool exact_metric, bool all_zero, const std::string& out_path) {
  const auto t0 = std::chrono::steady_clock::now();
  SimConfig cfg{make_spec(sa), PrecoderSpec::identity()};
  cfg.pre = make_pre(pa, cfg.spec);
  cfg.list_size = L;
  cfg.ebn0_grid = parse_grid(snr);
  cfg.max_trials = max_trials;
  cfg.max_errors = max_errors;
  cfg.rng_seed = seed;
  cfg.threads = threads;
  cfg.exact_metric = exact_metric;
  cfg.all_zero_tx = all_zero;

  std::string params = spec_params(cfg.spec) + " pre=\"" + cfg.pre.describe() + "\"" +
                       " L=" + std::to_string(L) + " snr=" + snr +
                       " max_trials=" + std::to_string(max_trials) +
                       " max_errors=" + std::to_string(max_errors) +
                       " seed=" + std::to_string(seed);
  if (exact_metric) params += " exact_metric=1";
  if (all_zero) params += " all_zero=1";

  std::ofstream file;
  std::ostream& out = open_out(out_path, file);
  out << manifest_line("simulate", params) << "\n" << fer_csv_header() << "\n";
  run_fer(cfg, [&](const FerPoint& pt) {
    out << fer_csv_row(pt) << "\n";
    out.flush();
    std::fprintf(stderr, "%.6g dB: fer=%.3g (%llu errors / %llu trials) [%.1fs]\n", pt.ebn0_db,
                 pt.fer, static_cast<unsigned long long>(pt.errors),
                 static_cast<unsigned long long>(pt.trials), seconds_since(t0));
  });
}

void run_coset(int n, int i, const std::string& frozen, const std::string& info) {
  CosetQuery q;
  q.leading = i;
  if (!frozen.empty()) q.frozen = parse_int_list(frozen);
  if (!info.empty()) q.info = parse_int_list(info);
  const BitBlock row = kron_row(n, static_cast<uint64_t>(i));
  CosetQuery base = q;
  base.info.clear();
  std::cout << "row_weight=" << row.weight() << "\n"
            << "base_weight=" << coset_weight(n, base) << "\n"
            << "coset_weight=" << coset_weight(n, q) << "\n"
            << "case=" << to_string(classify_case(n, i, q.frozen)) << "\n";
}

void run_lemma1(int n, int i, uint64_t trials, uint64_t seed) {
  const bool ok = lemma1_check(n, i, trials, seed);
  std::cout << "holds=" << (ok ? "true" : "false") << "\n";
  if (!ok) throw std::runtime_error("lemma 1 violated — decoder assumptions are broken");
}

void run_protection(const SpecArgs& sa, const PreArgs& pa) {
  const CodeSpec spec = make_spec(sa);
  const PrecoderSpec pre = make_pre(pa, spec);
  const ProtectionProfile pp = protection_profile(pre, spec);
  for (size_t k = 0; k < pp.info.size(); ++k)
    std::cout << "i=" << pp.info[k] << " taps=" << pp.taps[k] << "\n";
  std::cout << "unprotected=" << join_ints(pp.unprotected) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PAC code workbench: rate profiles, weight spectra, FER curves"};
  app.require_subcommand(1);

  auto* prof = app.add_subcommand("profile", "build a rate profile and report its index sets");
  SpecArgs prof_spec;
  add_spec_opts(prof, prof_spec);
  int prof_memory = -1;
  std::string prof_out;
  prof->add_option("--memory", prof_memory, "also print the equilength segments for this memory");
  prof->add_option("--out", prof_out, "write the spec as a config file");

  auto* enu = app.add_subcommand("enumerate", "estimate or count the low part of the spectrum");
  SpecArgs enu_spec;
  PreArgs enu_pre;
  add_spec_opts(enu, enu_spec);
  add_pre_opts(enu, enu_pre);
  int enu_L = -1, enu_cap = 8, enu_threads = 0;
  bool enu_exact = false, enu_hist = false;
  std::string enu_out;
  enu->add_option("-L,--list-size", enu_L, "list size for list enumeration");
  enu->add_flag("--exact", enu_exact, "brute-force every message (K <= 24)");
  enu->add_option("--cap", enu_cap, "keep histogram weights up to d_min + cap");
  enu->add_option("--threads", enu_threads, "worker threads (0 = all cores)");
  enu->add_flag("--histogram", enu_hist, "append the weight histogram");
  enu->add_option("--out", enu_out, "write CSV here instead of stdout");

  auto* sim = app.add_subcommand("simulate", "Monte-Carlo FER over BPSK/AWGN");
  SpecArgs sim_spec;
  PreArgs sim_pre;
  add_spec_opts(sim, sim_spec);
  add_pre_opts(sim, sim_pre);
  int sim_L = 32, sim_threads = 0;
  std::string sim_snr, sim_out;
  uint64_t sim_trials = 2'000'000, sim_errors = 100, sim_seed = 1;
  bool sim_exact = false, sim_zero = false;
  sim->add_option("-L,--list-size", sim_L, "decoder list size");
  sim->add_option("--snr", sim_snr, "Eb/N0 grid in dB: start:step:stop or one value")->required();
  sim->add_option("--max-trials", sim_trials, "frame budget per point");
  sim->add_option("--max-errors", sim_errors, "stop a point after this many frame errors");
  sim->add_option("--seed", sim_seed, "RNG seed");
  sim->add_option("--threads", sim_threads, "worker threads (0 = all cores)");
  sim->add_flag("--exact-metric", sim_exact, "exact log-domain path metric");
  sim->add_flag("--all-zero", sim_zero, "transmit the all-zero codeword (diagnostic)");
  sim->add_option("--out", sim_out, "write CSV here instead of stdout");

  auto* ana = app.add_subcommand("analyze", "coset weights, Lemma 1 spot checks, protection");
  ana->require_subcommand(1);
  auto* cos = ana->add_subcommand("coset", "weight of one coset of the transform");
  int cos_n = 0, cos_i = 0;
  std::string cos_frozen, cos_info;
  cos->add_option("-n,--log2-length", cos_n, "log2 of the block length")->required();
  cos->add_option("-i,--index", cos_i, "leading row index")->required();
  cos->add_option("--frozen", cos_frozen, "later frozen rows set to 1 (comma list)");
  cos->add_option("--info", cos_info, "later info rows set to 1 (comma list)");

  auto* lem = ana->add_subcommand("lemma1", "search a coset for a weight below the row weight");
  int lem_n = 0, lem_i = 0;
  uint64_t lem_trials = 100000, lem_seed = 1;
  lem->add_option("-n,--log2-length", lem_n, "log2 of the block length")->required();
  lem->add_option("-i,--index", lem_i, "leading row index")->required();
  lem->add_option("--trials", lem_trials, "random subsets to try (n > 4)");
  lem->add_option("--seed", lem_seed, "RNG seed");

  auto* pro = ana->add_subcommand("protection", "effective tap count per info index");
  SpecArgs pro_spec;
  PreArgs pro_pre;
  add_spec_opts(pro, pro_spec);
  add_pre_opts(pro, pro_pre);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*prof) {
      run_profile(prof_spec, prof_memory, prof_out);
    } else if (*enu) {
      run_enumerate(enu_spec, enu_pre, enu_L, enu_exact, enu_cap, enu_threads, enu_hist, enu_out);
    } else if (*sim) {
      run_simulate(sim_spec, sim_pre, sim_L, sim_snr, sim_trials, sim_errors, sim_seed,
                   sim_threads, sim_exact, sim_zero, sim_out);
    } else if (*cos) {
      run_coset(cos_n, cos_i, cos_frozen, cos_info);
    } else if (*lem) {
      run_lemma1(lem_n, lem_i, lem_trials, lem_seed);
    } else if (*pro) {
      run_protection(pro_spec, pro_pre);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

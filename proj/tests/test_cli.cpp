// End-to-end checks of the command-line tool; each case shells out to the
// binary named by PAC_CLI (set by ctest) and inspects streams and exit codes.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string& work_dir() {
  static const std::string dir = [] {
    char tmpl[] = "/tmp/pac_cli_XXXXXX";
    const char* d = mkdtemp(tmpl);
    REQUIRE(d != nullptr);
    return std::string(d);
  }();
  return dir;
}

const std::string& cli_path() {
  static const std::string path = [] {
    if (const char* env = std::getenv("PAC_CLI")) return std::string(env);
    return std::string("tools/pac");  // direct invocation from the build tree
  }();
  return path;
}

RunResult run(const std::string& args) {
  const std::string out = work_dir() + "/stdout.txt";
  const std::string err = work_dir() + "/stderr.txt";
  const std::string cmd = cli_path() + " " + args + " >" + out + " 2>" + err;
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("profile reports the derived index sets") {
  const auto r = run("profile -n 6 -k 48");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "N=64\n"));
  CHECK(contains(r.out, "K=48\n"));
  CHECK(contains(r.out, "method=rm-polar\n"));
  CHECK(contains(r.out, "d_min=4\n"));
  CHECK(contains(r.out, "M=20,24,34,36,40,48\n"));
  CHECK(contains(r.out, "Ncrit=32,33\n"));
  CHECK(contains(r.out, "corollary2=false\n"));

  const auto ok = run("profile -n 7 -k 32");
  CHECK(ok.code == 0);
  CHECK(contains(ok.out, "Ncrit=\n"));
  CHECK(contains(ok.out, "corollary2=true\n"));

  const auto seg = run("profile -n 6 -k 32 --memory 6");
  CHECK(seg.code == 0);
  CHECK(contains(seg.out, "segments=[0,64)\n"));
}

TEST_CASE("coset analysis prints the weight ledger") {
  const auto a = run("analyze coset -n 6 -i 20 --frozen 32");
  CHECK(a.code == 0);
  CHECK(a.out == "row_weight=4\nbase_weight=4\ncoset_weight=4\ncase=replaced-same-weight\n");

  const auto b = run("analyze coset -n 6 -i 13 --frozen 18,22");
  CHECK(b.code == 0);
  CHECK(b.out == "row_weight=8\nbase_weight=10\ncoset_weight=10\ncase=weight-increased\n");

  const auto c = run("analyze lemma1 -n 4 -i 5");
  CHECK(c.code == 0);
  CHECK(contains(c.out, "holds=true"));

  const auto d = run("analyze protection -n 6 -k 32 --poly 1,0,1,1,0,1,1");
  CHECK(d.code == 0);
  CHECK(contains(d.out, "unprotected=15,23,27,38,39\n"));
  const auto e = run("analyze protection -n 6 -k 32 --poly 1,0,1,1,0,1,1,0,1");
  CHECK(contains(e.out, "unprotected=15,27\n"));
}

TEST_CASE("exact enumeration emits the golden csv") {
  const auto polar = run("enumerate -n 5 -k 16 --exact");
  CHECK(polar.code == 0);
  CHECK(contains(polar.out,
                 "code,N,K,dmin,profile,poly,method,L,A_dmin,converged\n"
                 "polar,32,16,8,rm-polar,\"1\",exact,0,620,1\n"));

  const auto pac = run("enumerate -n 5 -k 16 --poly 1,0,1,1,0,1,1 --exact --histogram");
  CHECK(pac.code == 0);
  CHECK(contains(pac.out, "pac,32,16,8,rm-polar,\"1,0,1,1,0,1,1\",exact,0,364,1\n"));
  CHECK(contains(pac.out, "# histogram\nweight,count\n0,1\n8,364\n10,2048\n"));
  CHECK(contains(pac.out, "24,364\n32,1\n"));

  const auto dual = run(
      "enumerate -n 5 -k 16 --dual --poly-a 1,0,1,1,0,1,1 --poly-b 0,0,1,1,0,1,1 "
      "--subset auto --exact");
  CHECK(dual.code == 0);
  CHECK(contains(dual.out,
                 "pac,32,16,8,rm-polar,\"a=1,0,1,1,0,1,1|b=0,0,1,1,0,1,1|S=7,11,13,19\","
                 "exact,0,428,1\n"));

  // an explicit identity polynomial is still a polar code
  const auto id = run("enumerate -n 5 -k 16 --poly 1 --exact");
  CHECK(contains(id.out, "polar,32,16,8,"));
}

TEST_CASE("list enumeration matches the exact count once converged") {
  const auto r = run("enumerate -n 5 -k 16 --poly 1,0,1,1,0,1,1 -L 4096");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "pac,32,16,8,rm-polar,\"1,0,1,1,0,1,1\",list,4096,364,1\n"));
}

TEST_CASE("manifest lines carry the command and a stable hash") {
  const auto r = run("enumerate -n 5 -k 16 --exact");
  REQUIRE(contains(r.out, "\n"));
  const std::string first = r.out.substr(0, r.out.find('\n'));
  CHECK(first.rfind("# pac 0.1.0 enumerate n=5 k=16 method=rm-polar design_snr=3 pre=\"1\" "
                    "mode=exact config_hash=",
                    0) == 0);
  const std::string hash = first.substr(first.rfind('=') + 1);
  CHECK(hash.size() == 16);
  CHECK(hash.find_first_not_of("0123456789abcdef") == std::string::npos);
  // same parameters, same hash; different parameters, different hash
  CHECK(run("enumerate -n 5 -k 16 --exact").out.substr(0, first.size()) == first);
  const auto other = run("enumerate -n 5 -k 15 --exact");
  CHECK(other.out.substr(0, other.out.find('\n')) != first);
}

TEST_CASE("simulation output is reproducible byte for byte") {
  const std::string base =
      "simulate -n 4 -k 8 --snr 1:1:3 -L 2 --max-trials 400 --max-errors 30 --seed 7";
  const auto once = run(base);
  CHECK(once.code == 0);
  CHECK(contains(once.out, "ebn0_db,fer,trials,errors,ci_low,ci_high\n"));
  CHECK(contains(once.out, "1,0.194805195,154,30,0.140001385,0.264464865\n"));
  CHECK(contains(once.out, "2,0.130434783,230,30,0.0929150916,0.180097067\n"));
  CHECK(contains(once.out, "3,0.0525,400,21,0.034591265,0.0789225483\n"));

  CHECK(run(base).out == once.out);
  CHECK(run(base + " --threads 2").out == once.out);

  const auto seeded = run(base.substr(0, base.size() - 1) + "8");
  CHECK(seeded.out != once.out);

  const auto flagged = run(
      "simulate -n 4 -k 8 --snr 2 -L 2 --max-trials 100 --max-errors 10 --seed 3 "
      "--exact-metric --all-zero");
  CHECK(flagged.code == 0);
  CHECK(contains(flagged.out, " exact_metric=1 all_zero=1 config_hash="));
}

TEST_CASE("data can be routed to a file") {
  const std::string path = work_dir() + "/spec.csv";
  const auto direct = run("enumerate -n 4 -k 8 --exact");
  const auto filed = run("enumerate -n 4 -k 8 --exact --out " + path);
  CHECK(filed.code == 0);
  CHECK(filed.out.empty());
  CHECK(slurp(path) == direct.out);
}

TEST_CASE("profiles round-trip through config files") {
  const std::string cfg = work_dir() + "/code.cfg";
  const auto saved = run("profile -n 5 -k 16 --out " + cfg);
  CHECK(saved.code == 0);
  const std::string text = slurp(cfg);
  CHECK(contains(text, "n=5\n"));
  CHECK(contains(text, "K=16\n"));
  CHECK(contains(text, "method=rm-polar\n"));
  CHECK(contains(text, "A=7,11,13,"));

  const auto direct = run("profile -n 5 -k 16");
  const auto loaded = run("profile --config " + cfg);
  CHECK(loaded.code == 0);
  CHECK(loaded.out == direct.out);

  const auto en = run("enumerate --config " + cfg + " --exact");
  CHECK(contains(en.out, "polar,32,16,8,rm-polar,\"1\",exact,0,620,1\n"));
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("profile").code == 2);
  CHECK(run("profile -n 6").code == 2);
  CHECK(run("profile -n 31 -k 10").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("enumerate -n 5 -k 25 --exact").code == 2);
  CHECK(run("enumerate -n 5 -k 16").code == 2);                      // no mode picked
  CHECK(run("enumerate -n 5 -k 16 --exact -L 64").code == 2);        // both modes
  CHECK(run("simulate -n 4 -k 8 -L 2").code == 2);                   // missing grid
  CHECK(run("simulate -n 4 -k 8 --snr nope").code == 2);
  CHECK(run("simulate -n 4 -k 8 --snr 3:0:4").code == 2);
  CHECK(run("simulate -n 4 -k 8 --snr 4:1:2").code == 2);
  CHECK(run("enumerate -n 5 -k 16 --poly 1,0,2 --exact").code == 2);
  CHECK(run("enumerate -n 5 -k 16 --poly 0,1 --exact").code == 2);
  CHECK(run("profile --config /nonexistent/x.cfg").code == 2);
}

TEST_CASE("help exits cleanly") {
  CHECK(run("--help").code == 0);
  CHECK(run("profile --help").code == 0);
  CHECK(run("analyze --help").code == 0);
  CHECK(run("analyze coset --help").code == 0);
}

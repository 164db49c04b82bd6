// Drives the installed binary end to end; paths are injected by the build.
#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct CmdResult {
  int code = -1;
  std::string out;  // stdout and stderr interleaved
};

CmdResult run_cmd(const std::string& cmd) {
  FILE* pipe = ::popen((cmd + " 2>&1").c_str(), "r");
  REQUIRE(pipe != nullptr);
  CmdResult r;
  char buf[4096];
  size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

const std::string kCli = P4MR_CLI_PATH;
const fs::path kSamples = P4MR_SAMPLES_DIR;

fs::path scratch() {
  fs::path p = fs::temp_directory_path() / "p4mr_cli_test";
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("usage errors exit 2") {
  CmdResult help = run_cmd(kCli + " --help");
  CHECK(help.code == 0);
  CHECK(help.out.find("compile") != std::string::npos);
  CHECK(run_cmd(kCli).code == 2);
  CHECK(run_cmd(kCli + " frobnicate").code == 2);
  CHECK(run_cmd(kCli + " run --bogus-flag 1").code == 2);
}

TEST_CASE("compile writes the artifact set") {
  fs::path out = scratch() / "art";
  fs::remove_all(out);
  CmdResult r = run_cmd(kCli + " compile --program " +
                        (kSamples / "sum_abc.p4mr").string() + " --topology " +
                        (kSamples / "topo3.json").string() + " --out " +
                        out.string());
  CHECK(r.code == 0);
  for (const char* f : {"ast.json", "dag.json", "placement.json",
                        "routing.json", "switch_configs.json"})
    CHECK(fs::exists(out / f));
  CHECK(r.out.find("placement") != std::string::npos);
}

TEST_CASE("a manifest run passes its own checks, twice identically") {
  fs::path o1 = scratch() / "run1";
  fs::path o2 = scratch() / "run2";
  fs::remove_all(o1);
  fs::remove_all(o2);
  std::string base =
      kCli + " run --manifest " + (kSamples / "run_sum.json").string();
  CmdResult r1 = run_cmd(base + " --out " + o1.string());
  CHECK(r1.code == 0);
  CHECK(r1.out.find("check: PASS") != std::string::npos);
  CHECK(r1.out.find("FAIL") == std::string::npos);
  for (const char* f : {"report.json", "report.csv", "report.meta.json"})
    CHECK(fs::exists(o1 / f));

  CmdResult r2 = run_cmd(base + " --out " + o2.string());
  CHECK(r2.code == 0);
  std::string a = slurp(o1 / "report.json");
  CHECK(!a.empty());
  CHECK(a == slurp(o2 / "report.json"));
  CHECK(slurp(o1 / "report.csv") == slurp(o2 / "report.csv"));
}

TEST_CASE("command-line flags override the manifest") {
  fs::path out = scratch() / "s3";
  fs::remove_all(out);
  CmdResult r = run_cmd(kCli + " run --manifest " +
                        (kSamples / "run_sum.json").string() +
                        " --scenario 3 --out " + out.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("scenario S3") != std::string::npos);
  CHECK(r.out.find("check: PASS") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("word counting from files bound on the command line") {
  fs::path out = scratch() / "wc";
  fs::remove_all(out);
  CmdResult r = run_cmd(
      kCli + " run --program " + (kSamples / "wordcount.p4mr").string() +
      " --topology " + (kSamples / "topo3.json").string() +
      " --data h1:words=" + (kSamples / "data" / "words.txt").string() +
      " --data h2:empty=" + (kSamples / "data" / "empty.txt").string() +
      " --out " + out.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("word counts:") != std::string::npos);
  CHECK(r.out.find("check: PASS") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(slurp(out / "report.csv").find("word_count,") != std::string::npos);
}

TEST_CASE("bad input exits 1, missing files exit 2") {
  fs::path bad = scratch() / "bad.p4mr";
  std::ofstream(bad) << "A = store<uint_64>(\"h1:x\");\n";  // '=' not ':='
  CmdResult r = run_cmd(kCli + " compile --program " + bad.string() +
                        " --topology " + (kSamples / "topo3.json").string() +
                        " --out " + (scratch() / "badout").string());
  CHECK(r.code == 1);
  CHECK(r.out.find("error:") != std::string::npos);

  CmdResult miss = run_cmd(kCli + " compile --program /does/not/exist.p4mr" +
                           " --topology " + (kSamples / "topo3.json").string() +
                           " --out " + (scratch() / "missout").string());
  CHECK(miss.code == 2);
}

TEST_CASE("model prints the closed forms") {
  CmdResult r = run_cmd(kCli + " model --capacity 1e9");
  CHECK(r.code == 0);
  CHECK(r.out.find("C/e") != std::string::npos);
  CHECK(r.out.find("367879441.17") != std::string::npos);
  CHECK(r.out.find("jct S3") != std::string::npos);

  CmdResult g = run_cmd(kCli + " model --sweep --sweep-servers 3" +
                        " --sweep-items 96000");
  CHECK(g.code == 0);
  CHECK(g.out.rfind("scenario,n,K,C,jct,speedup_vs_S1", 0) == 0);
}

TEST_CASE("sweep writes the comparison CSV") {
  fs::path csv = scratch() / "sweep.csv";
  fs::remove_all(csv);
  CmdResult r = run_cmd(kCli +
                        " sweep --servers 3 --items 2000 --delay 1e-6 --out " +
                        csv.string());
  CHECK(r.code == 0);
  std::string text = slurp(csv);
  CHECK(text.rfind("scenario,n,K,C,jct_sim,jct_model,"
                   "speedup_sim_vs_s1,speedup_model_vs_s1",
                   0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}

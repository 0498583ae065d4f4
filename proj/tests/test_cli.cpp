// Integration tests driving the installed verifier binary.
#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

const std::string kBin = VERIFIER_PATH;
const std::string kDir = WORK_DIR;

int run(const std::string& args) {
  int rc = std::system((kBin + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kFastManifest =
    "[run]\nseed=21\n"
    "[family.1]\nchecks=all\nsamples=2\n"
    "[family.3]\nchecks=skew,bracket,berezin,shs\nsamples=2\n";

}  // namespace

TEST_CASE("verify: passing manifest exits 0") {
  std::string mf = kDir + "/mf_ok.ini";
  write_file(mf, kFastManifest);
  CHECK(run("verify --manifest " + mf) == 0);
}

TEST_CASE("verify: impossible tolerance exits 1") {
  std::string mf = kDir + "/mf_tol.ini";
  write_file(mf, "[family.3]\nchecks=homomorphism\nsamples=2\n");
  CHECK(run("verify --manifest " + mf + " --tolerance 1e-20") == 1);
}

TEST_CASE("verify: parse and usage errors exit 2") {
  std::string mf = kDir + "/mf_bad.ini";
  write_file(mf, "[family.3]\nk=0\n");
  CHECK(run("verify --manifest " + mf) == 2);
  CHECK(run("verify --manifest " + kDir + "/does_not_exist.ini") == 2);
  CHECK(run("verify") == 2);                  // missing required option
  CHECK(run("frobnicate") == 2);              // unknown subcommand
  std::string ok = kDir + "/mf_ok2.ini";
  write_file(ok, kFastManifest);
  CHECK(run("verify --manifest " + ok + " --tolerance -1") == 2);
}

TEST_CASE("verify: --report is byte-identical across runs") {
  std::string mf = kDir + "/mf_det.ini";
  write_file(mf, kFastManifest);
  std::string r1 = kDir + "/rep1.json", r2 = kDir + "/rep2.json";
  REQUIRE(run("verify --manifest " + mf + " --report " + r1) == 0);
  REQUIRE(run("verify --manifest " + mf + " --report " + r2) == 0);
  std::string a = read_file(r1), b = read_file(r2);
  CHECK_FALSE(a.empty());
  CHECK(a == b);
  CHECK(a.rfind("{\"checks\":[", 0) == 0);
  CHECK(a.find("\"seed\":21") != std::string::npos);
}

TEST_CASE("verify: --seed overrides the manifest seed") {
  std::string mf = kDir + "/mf_seed.ini";
  write_file(mf, kFastManifest);
  std::string r1 = kDir + "/rep_s1.json", r2 = kDir + "/rep_s2.json";
  REQUIRE(run("verify --manifest " + mf + " --seed 5 --report " + r1) == 0);
  REQUIRE(run("verify --manifest " + mf + " --seed 5 --report " + r2) == 0);
  CHECK(read_file(r1) == read_file(r2));
  CHECK(read_file(r1).find("\"seed\":5") != std::string::npos);
}

TEST_CASE("demo and info subcommands") {
  CHECK(run("demo r01") == 0);
  CHECK(run("demo nonsense") == 2);
  CHECK(run("list-families") == 0);
  CHECK(run("jacobi") == 0);
}

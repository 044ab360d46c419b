#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "fixtures.hpp"
#include "sictower/fiducial_io.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args) {
  fs::path capture = fs::temp_directory_path() / "sictower_cli_capture.txt";
  std::string cmd = std::string(CLI_PATH) + " " + args + " > " +
                    capture.string() + " 2>&1";
  int status = std::system(cmd.c_str());
  std::ifstream in(capture);
  std::stringstream ss;
  ss << in.rdbuf();
  int code = -1;
  if (WIFEXITED(status)) code = WEXITSTATUS(status);
  return RunResult{code, ss.str()};
}

fs::path workdir() {
  fs::path p = fs::temp_directory_path() / "sictower_cli_tests";
  fs::create_directories(p);
  return p;
}

fs::path write_fixture(const sictower::Fiducial& f, const std::string& name) {
  fs::path p = workdir() / name;
  sictower::write_fiducial_file(p, f);
  return p;
}

}  // namespace

TEST_CASE("tower arithmetic and exit codes") {
  RunResult r7 = run("tower --start 7 --rungs 3");
  CHECK(r7.exit_code == 0);
  CHECK(r7.output == "D=2: 7 35 1155\n");

  RunResult r4 = run("tower --start 4 --rungs 3");
  CHECK(r4.output == "D=5: 4 8 48\n");

  RunResult r5 = run("tower --start 5 --rungs 1");
  CHECK(r5.output == "D=3: 5\n");

  CHECK(run("tower --start 3").exit_code == 2);  // below the tower base
}

TEST_CASE("usage errors take exit code 2") {
  CHECK(run("find --dim 1").exit_code == 2);
  CHECK(run("nonsense").exit_code == 2);
  CHECK(run("").exit_code == 2);  // a subcommand is required
}

TEST_CASE("find and verify round trip") {
  fs::path out = workdir() / "found5.fid";
  RunResult found =
      run("find --dim 5 --seeds 8 --restrict-zauner -o " + out.string());
  CHECK(found.exit_code == 0);
  CHECK(fs::exists(out));

  RunResult verified = run("verify --in " + out.string());
  CHECK(verified.exit_code == 0);
  json rep = json::parse(verified.output);
  CHECK(rep["schema_version"] == 1);
  CHECK(rep["pass"] == true);
  CHECK(rep["equiangularity_residual"].get<double>() <= 1e-10);
}

TEST_CASE("verify distinguishes negative results from bad input") {
  // Valid format, not a SIC: exit code 1.
  sictower::Fiducial junk;
  junk.dim = 5;
  junk.components = sictower::Vec::Zero(5);
  junk.components(0) = 1.0;
  fs::path junk_path = write_fixture(junk, "junk.fid");
  CHECK(run("verify --in " + junk_path.string()).exit_code == 1);

  // Unreadable input: exit code 2.
  CHECK(run("verify --in /nonexistent/f.fid").exit_code == 2);
}

TEST_CASE("reports are deterministic") {
  fs::path fid = write_fixture(fixtures::small5(), "det5.fid");
  fs::path r1 = workdir() / "rep1.json";
  fs::path r2 = workdir() / "rep2.json";
  CHECK(run("verify --in " + fid.string() + " -o " + r1.string()).exit_code ==
        0);
  CHECK(run("verify --in " + fid.string() + " -o " + r2.string()).exit_code ==
        0);
  std::ifstream f1(r1), f2(r2);
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  CHECK(s1.str() == s2.str());
  CHECK(!s1.str().empty());
}

TEST_CASE("alignment pipeline from files") {
  fs::path small = write_fixture(fixtures::small5(), "align_small5.fid");
  fs::path big = write_fixture(fixtures::big15(), "align_big15.fid");
  fs::path rep_path = workdir() / "align.json";
  RunResult r = run("align --small " + small.string() + " --big " +
                    big.string() + " -o " + rep_path.string());
  CHECK(r.exit_code == 0);
  std::ifstream in(rep_path);
  json rep = json::parse(in);
  CHECK(rep["verdict"] == "aligned");
  CHECK(rep["alignment"]["parity_of_d"] == "odd");
  CHECK(rep["alignment"]["obs1_residual"].get<double>() <= 1e-8);
  CHECK(rep["alignment"]["obs2_residual"].get<double>() <= 1e-8);
  CHECK(rep["theorems"]["reduced_density_small_factor"]["rank"] == 2);
  CHECK(rep["theorems"]["mub"]["pass"] == true);
  CHECK(rep["theorems"]["extra_symmetry"]["permutation_order"] == 2);
  json etfs = rep["theorems"]["etf_certificates"];
  REQUIRE(etfs.size() == 2);
  CHECK(etfs[0]["pass"] == true);
  CHECK(etfs[1]["pass"] == true);
}

TEST_CASE("even pair skips the tensor-factor theorems") {
  fs::path small = write_fixture(fixtures::small4(), "align_small4.fid");
  fs::path big = write_fixture(fixtures::big8(), "align_big8.fid");
  RunResult r =
      run("align --small " + small.string() + " --big " + big.string());
  CHECK(r.exit_code == 0);
  json rep = json::parse(r.output);
  CHECK(rep["verdict"] == "aligned");
  CHECK(rep["alignment"]["parity_of_d"] == "even");
  CHECK(rep["theorems"] == "skipped: even d");
}

TEST_CASE("mismatched dimensions are invalid input") {
  fs::path small = write_fixture(fixtures::small5(), "mm_small5.fid");
  fs::path big = write_fixture(fixtures::big8(), "mm_big8.fid");
  RunResult r =
      run("align --small " + small.string() + " --big " + big.string());
  CHECK(r.exit_code == 2);
}

TEST_CASE("tolerance environment override is honored") {
  fs::path small = write_fixture(fixtures::small5(), "env_small5.fid");
  fs::path big = write_fixture(fixtures::big15(), "env_big15.fid");
  std::string cmd = "SICTOWER_TOL=1e-6 " + std::string(CLI_PATH) +
                    " align --small " + small.string() + " --big " +
                    big.string() + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 0);
}

TEST_CASE("direct mub construction") {
  RunResult r = run("mub --p 3");
  CHECK(r.exit_code == 0);
  json rep = json::parse(r.output);
  CHECK(rep["bases"] == 4);
  CHECK(rep["pass"] == true);
  CHECK(run("mub --p 9").exit_code == 2);  // composite
}

TEST_CASE("symmetry subcommand reports table orders") {
  fs::path fid =
      write_fixture(fixtures::aligned15().small_choice, "sym5.fid");
  RunResult r = run("symmetry --in " + fid.string());
  CHECK(r.exit_code == 0);
  json rep = json::parse(r.output);
  CHECK(rep["unitary_order"] == 3);
  CHECK(rep["has_order3_trace_minus1"] == true);
}

TEST_CASE("etf subcommand certifies both stride families") {
  fs::path big = write_fixture(fixtures::big15(), "etf_big15.fid");
  RunResult r = run("etf --big " + big.string());
  CHECK(r.exit_code == 0);
  json rep = json::parse(r.output);
  CHECK(rep["pass"] == true);
  CHECK(rep["certificates"][0]["rank"] == 10);
  CHECK(rep["certificates"][1]["rank"] == 6);
}

#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "sictower/fiducial_io.hpp"

using namespace sictower;

TEST_CASE("round trip preserves every component bit for bit") {
  Fiducial f = fixtures::small5();
  f.label = "rung one, seed 3";
  std::stringstream ss;
  write_fiducial(ss, f);
  Fiducial back = read_fiducial(ss);
  CHECK(back.dim == f.dim);
  CHECK(back.label == f.label);
  for (Eigen::Index k = 0; k < f.components.size(); ++k)
    CHECK(back.components(k) == f.components(k));
}

TEST_CASE("comments and blank lines are tolerated") {
  std::stringstream ss(
      "# produced by hand\n"
      "#label:   demo vector  \n"
      "\n"
      "2\n"
      "  0.70710678118654757 0\n"
      "0 -0.70710678118654757\n");
  Fiducial f = read_fiducial(ss);
  CHECK(f.dim == 2);
  CHECK(f.label == "demo vector");
  CHECK(std::real(f.components(0)) == doctest::Approx(0.7071067811865476));
  CHECK(std::imag(f.components(1)) == doctest::Approx(-0.7071067811865476));
}

TEST_CASE("malformed files are rejected") {
  auto parse = [](const char* text) {
    std::stringstream ss(text);
    return read_fiducial(ss);
  };
  CHECK_THROWS_AS(parse(""), std::runtime_error);             // no dimension
  CHECK_THROWS_AS(parse("x\n"), std::runtime_error);          // bad dimension
  CHECK_THROWS_AS(parse("1\n0 0\n"), std::runtime_error);     // dim < 2
  CHECK_THROWS_AS(parse("2\n1 0\n"), std::runtime_error);     // too few rows
  CHECK_THROWS_AS(parse("2\n1 0\n0 1\n1 1\n"), std::runtime_error);  // extra
  CHECK_THROWS_AS(parse("2\n1 oops\n0 1\n"), std::runtime_error);
  CHECK_THROWS_AS(parse("2\n0 0\n0 0\n"), std::runtime_error);  // zero norm
}

TEST_CASE("file based round trip") {
  namespace fs = std::filesystem;
  fs::path tmp = fs::temp_directory_path() / "sictower_io_test.fid";
  Fiducial f = fixtures::small4();
  f.label = "even rung";
  write_fiducial_file(tmp, f);
  Fiducial back = read_fiducial_file(tmp);
  CHECK(back.label == f.label);
  CHECK((back.components - f.components).cwiseAbs().maxCoeff() == 0.0);
  fs::remove(tmp);
  CHECK_THROWS_AS(read_fiducial_file(tmp), std::runtime_error);
}

#include "qcat/io.hpp"

#include <filesystem>
#include <fstream>

#include "doctest.h"

using namespace qcat;
namespace fs = std::filesystem;

TEST_CASE("matrix parsing") {
  SUBCASE("inline literal") {
    IntMatrix m = parse_int_matrix("[[2,3],[1,2]]");
    CHECK(m(0, 0) == 2);
    CHECK(m(1, 1) == 2);
    CHECK(m(0, 1) == 3);
  }
  SUBCASE("whitespace grid") {
    IntMatrix m = parse_int_matrix("2 3\n1 2\n");
    CHECK(m(0, 1) == 3);
  }
  SUBCASE("csv grid") {
    IntMatrix m = parse_int_matrix("0,0,1,0\n0,0,0,1\n-1,0,0,1\n0,-1,1,2\n");
    CHECK(m.rows() == 4);
    CHECK(m(3, 3) == 2);
  }
}

TEST_CASE("csv and manifest determinism") {
  auto dir = fs::temp_directory_path() / "qcat_io_test";
  fs::create_directories(dir);
  CsvWriter csv({"a", "b"});
  csv.row({fmt_double(0.1), fmt_double(1.0 / 3.0)});
  csv.row({fmt_double(-2.5e-17), "3"});
  csv.save(dir / "t.csv");
  std::string c1 = file_checksum(dir / "t.csv");
  csv.save(dir / "t.csv");
  CHECK(file_checksum(dir / "t.csv") == c1);

  Manifest m;
  m.set("n", 1ll);
  m.set("x", 0.25);
  m.add_output(dir / "t.csv");
  m.save(dir / "manifest.txt");
  auto loaded = Manifest::load(dir / "manifest.txt");
  CHECK(loaded.at("n") == "1");
  CHECK(loaded.at("x") == "0.25");
  CHECK(loaded.at("output.t.csv") == c1);
}

TEST_CASE("state round trip") {
  auto dir = fs::temp_directory_path() / "qcat_io_test";
  fs::create_directories(dir);
  Eigen::VectorXcd v(4);
  v << std::complex<double>(1, 2), std::complex<double>(0.5, -0.25),
      std::complex<double>(-3, 0), std::complex<double>(0, 1e-9);
  write_state(dir / "s.qst", 1, 4, {Rat(1, 2), Rat(0)}, v);
  StateFile s = read_state(dir / "s.qst");
  CHECK(s.n == 1);
  CHECK(s.bigN == 4);
  CHECK(s.theta[0] == Rat(1, 2));
  CHECK((s.v - v).norm() == 0.0);
}

TEST_CASE("pgm output shape") {
  auto dir = fs::temp_directory_path() / "qcat_io_test";
  fs::create_directories(dir);
  Eigen::MatrixXd img(3, 5);
  for (int i = 0; i < 3; i++)
    for (int j = 0; j < 5; j++) img(i, j) = i + j;
  write_pgm16(dir / "i.pgm", img, 0.0, 7.0);
  std::ifstream f(dir / "i.pgm", std::ios::binary);
  std::string magic, dims;
  std::getline(f, magic);
  CHECK(magic == "P5");
}

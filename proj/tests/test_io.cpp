#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "core.hpp"
#include "error.hpp"
#include "io.hpp"
#include "rng.hpp"
#include "tmt.hpp"

using namespace rocsbb;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("rocsbb_io_test_" + name);
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return s;
}

}  // namespace

TEST_CASE("load_csv") {
  SUBCASE("two rows per group") {
    const auto p = temp_file("basic.csv");
    write_file(p, "group,value\n1,1.5\n2,2.5\n3,3.5\n1,1.6\n2,2.6\n3,3.6\n");
    const auto s = load_csv(p.string(), {});
    CHECK(s.n1() == 2);
    CHECK(s.n2() == 2);
    CHECK(s.n3() == 2);
    CHECK(s.y1 == std::vector<double>{1.5, 1.6});  // row order preserved
    fs::remove(p);
  }
  SUBCASE("missing group names the absent label") {
    const auto p = temp_file("missing.csv");
    write_file(p, "group,value\n1,1.5\n2,2.5\n");
    CHECK_THROWS_WITH_AS(load_csv(p.string(), {}),
                         doctest::Contains("group '3'"), Error);
    fs::remove(p);
  }
  SUBCASE("unparseable value reports the line number") {
    const auto p = temp_file("badval.csv");
    write_file(p, "group,value\n1,1.5\n2,oops\n3,3.5\n");
    try {
      load_csv(p.string(), {});
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::data);
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    fs::remove(p);
  }
  SUBCASE("unknown label rejected") {
    const auto p = temp_file("label.csv");
    write_file(p, "group,value\n1,1\n2,2\n3,3\nX,4\n");
    CHECK_THROWS_WITH_AS(load_csv(p.string(), {}),
                         doctest::Contains("unknown group label 'X'"), Error);
    fs::remove(p);
  }
  SUBCASE("custom columns and labels") {
    const auto p = temp_file("custom.csv");
    write_file(p, "score,stage\n1.5,mild\n2.5,none\n3.5,severe\n");
    CsvColumns cols;
    cols.group_column = "stage";
    cols.value_column = "score";
    cols.labels = {"none", "mild", "severe"};
    const auto s = load_csv(p.string(), cols);
    CHECK(s.y1 == std::vector<double>{2.5});
    CHECK(s.y2 == std::vector<double>{1.5});
    CHECK(s.y3 == std::vector<double>{3.5});
    fs::remove(p);
  }
  SUBCASE("nonexistent file") {
    CHECK_THROWS_AS(load_csv("/nonexistent/nope.csv", {}), Error);
  }
}

TEST_CASE("format_double round trips") {
  for (double v : {0.1, 1.0 / 3.0, 0.0001, 0.9999, -2.75, 1e-300, 123456.789,
                   0.7452291953570725}) {
    const std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}

TEST_CASE("surface CSV round trip is exact") {
  RocSurfaceEstimate surface;
  surface.grid = default_grid(7);
  surface.values = Matrix(7, 7);
  Rng rng(12);
  for (auto& v : surface.values.data()) v = rng.uniform();

  const auto p = temp_file("surface.csv");
  write_surface_csv(p.string(), surface);

  SUBCASE("header and shape") {
    const std::string text = read_file(p);
    CHECK(text.rfind("p1,p3,rocs\n", 0) == 0);
    CHECK(text.find('\r') == std::string::npos);  // LF only
  }
  SUBCASE("reload is bitwise identical") {
    const auto back = read_surface_csv(p.string());
    CHECK(back.grid.p1_points == surface.grid.p1_points);
    CHECK(back.grid.p3_points == surface.grid.p3_points);
    CHECK(back.values.data() == surface.values.data());
  }
  SUBCASE("p1-major row order") {
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);  // header
    std::getline(in, line);
    // first row: smallest p1 with smallest p3
    CHECK(line.rfind("0.0001,0.0001,", 0) == 0);
    std::getline(in, line);
    // second row: same p1, next p3 (p3 cycles fastest)
    CHECK(line.rfind("0.0001,0.16", 0) == 0);
  }
  fs::remove(p);
  SUBCASE("bad header rejected") {
    const auto q = temp_file("badsurface.csv");
    write_file(q, "a,b,c\n1,2,3\n");
    CHECK_THROWS_AS(read_surface_csv(q.string()), Error);
    fs::remove(q);
  }
}

TEST_CASE("bundled TMT dataset") {
  const auto s = tmt_part_a();
  CHECK(s.n1() == 170);
  CHECK(s.n2() == 52);
  CHECK(s.n3() == 23);
  SUBCASE("pinned checksum") {
    CHECK(sample_checksum(s) == UINT64_C(0x21c1f2e9da05d34e));
    CHECK(tmt_part_a_checksum() == UINT64_C(0x21c1f2e9da05d34e));
  }
  SUBCASE("packaged CSV equals the embedded data") {
    const auto from_csv =
        load_csv(std::string(ROCSBB_DATA_DIR) + "/tmt_part_a.csv", {});
    CHECK(from_csv.y1 == s.y1);
    CHECK(from_csv.y2 == s.y2);
    CHECK(from_csv.y3 == s.y3);
  }
}

TEST_CASE("sample_checksum changes with the data") {
  ThreeGroupSample a{{1.0}, {2.0}, {3.0}};
  ThreeGroupSample b{{1.0}, {2.0}, {3.0000001}};
  CHECK(sample_checksum(a) != sample_checksum(b));
  CHECK(sample_checksum(a) == sample_checksum(a));
}

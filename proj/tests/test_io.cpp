#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "fixtures.hpp"
#include "latlab/construct.hpp"
#include "latlab/error.hpp"
#include "latlab/io.hpp"

using namespace latlab;

namespace {

std::string parse_message(std::string const& text) {
  std::istringstream in(text);
  try {
    read_lat(in);
  } catch (LatticeError const& e) {
    CHECK(e.kind() == ErrorKind::Parse);
    return e.what();
  }
  FAIL("expected a parse error");
  return {};
}

}  // namespace

TEST_CASE("write then read keeps the cover orders") {
  for (auto const& g : enumerate_sr(16, 2)) {
    std::ostringstream out;
    write_lat(out, "x", g.diagram);
    std::istringstream in(out.str());
    auto f = read_lat(in);
    CHECK(f.name == "x");
    REQUIRE(f.diagram.size() == g.diagram.size());
    for (Elem e = 0; e < f.diagram.size(); ++e) {
      CHECK(f.diagram.lower_order(e) == g.diagram.lower_order(e));
      CHECK(f.diagram.upper_order(e) == g.diagram.upper_order(e));
    }
  }
}

TEST_CASE("comments and blank lines") {
  std::istringstream in(
      "# the square\n"
      "lattice sq 4\n"
      "\n"
      "elem 0 lower: upper: 2 1\n"
      "elem 1 lower: 0 upper: 3\n"
      "# corner\n"
      "elem 2 lower: 0 upper: 3\n"
      "elem 3 lower: 2 1 upper:\n");
  auto f = read_lat(in);
  CHECK(f.name == "sq");
  CHECK(canonical_form(f.diagram) == canonical_form(grid(2, 2)));
}

TEST_CASE("parse errors name the line") {
  CHECK(parse_message("lattice\n").find("line 1") != std::string::npos);
  CHECK(parse_message("lattice a 2\nelem 0 lower: upper: 1\nnode 1\n")
            .find("line 3") != std::string::npos);
  CHECK(parse_message("lattice a 2\nelem 0 lower: upper: 7\n")
            .find("line 2") != std::string::npos);
  CHECK(parse_message("lattice a 2\nelem 0 lower: upper: 1\n")
            .find("never defined") != std::string::npos);
  CHECK(parse_message("lattice a 2\nelem 0 lower: upper: 1\n"
                      "elem 0 lower: upper:\n")
            .find("already defined") != std::string::npos);
  auto m = parse_message("lattice a 2\nelem 0 lower: upper: 1\n"
                         "elem 1 lower: upper:\n");
  CHECK(m.find("line") != std::string::npos);
  CHECK(parse_message("").find("header") != std::string::npos);
}

TEST_CASE("files") {
  auto path = std::filesystem::temp_directory_path() / "latlab_io_test.lat";
  write_lat_file(path, "s7", fixtures::s7());
  auto f = read_lat_file(path);
  CHECK(f.name == "s7");
  CHECK(canonical_form(f.diagram) == canonical_form(fixtures::s7()));
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_lat_file(path), LatticeError);
}

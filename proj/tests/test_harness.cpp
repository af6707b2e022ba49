#include <doctest.h>

#include <filesystem>
#include <string>

#include "fixtures.hpp"
#include "latlab/harness.hpp"

using namespace latlab;

namespace {

std::size_t count(std::string const& s, std::string const& what) {
  std::size_t n = 0;
  for (auto pos = s.find(what); pos != std::string::npos;
       pos = s.find(what, pos + 1)) {
    ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("R3 as a colour poset fails 3P3C with an embedding") {
  auto r3 = r3_poset();
  auto r = check_3p3c(r3);
  CHECK_FALSE(r.pass);
  REQUIRE(r.embedding);
  CHECK(is_cover_preserving_embedding(r3, r3, *r.embedding));
  CHECK(std::string(r3_names()[0]) == "a");
  CHECK(std::string(r3_names()[8]) == "z");
}

TEST_CASE("two-cover and 3P3C on small lattices") {
  CHECK(check_two_cover(grid(3, 3)).pass);
  CHECK(check_two_cover(fixtures::s7()).pass);
  CHECK(check_3p3c(grid(3, 3)).pass);
  CHECK(check_3p3c(fixtures::s7()).pass);
  // a colour poset with three upper covers
  std::vector<CoverPair> claw{{0, 1}, {0, 2}, {0, 3}};
  JiPoset ji;
  ji.order = Poset::close_order(4, claw);
  ji.colors.resize(4);
  auto r = check_two_cover(ji);
  CHECK_FALSE(r.pass);
  CHECK(*r.color == 0);
  CHECK(r.covers.size() == 3);
}

TEST_CASE("check names") {
  CHECK(parse_checks("all") == kAllChecks);
  CHECK(parse_checks("swing,3p3c") ==
        (static_cast<CheckSet>(Check::Swing) |
         static_cast<CheckSet>(Check::ThreePThreeC)));
  CHECK_THROWS_AS(parse_checks("swing,bogus"), std::invalid_argument);
  for (auto c : all_checks()) {
    CHECK(parse_checks(check_name(c)) == static_cast<CheckSet>(c));
  }
}

TEST_CASE("small family passes every check") {
  VerifyConfig config;
  config.max_elements = 7;
  config.max_forks = 1;
  std::size_t seen = 0;
  auto summary = verify_family(config, [&](VerificationReport const& r) {
    ++seen;
    CHECK(r.pass());
    CHECK(r.checks.size() == all_checks().size());
  });
  CHECK(summary.lattices >= 2);
  CHECK(seen == summary.lattices);
  CHECK(summary.failures == 0);
}

TEST_CASE("report order does not depend on the number of jobs") {
  auto run = [](std::size_t jobs) {
    VerifyConfig config;
    config.max_elements = 16;
    config.max_forks = 2;
    config.jobs = jobs;
    config.random_count = 20;
    config.random_cap = 30;
    config.options.checks =
        static_cast<CheckSet>(Check::TwoCover) |
        static_cast<CheckSet>(Check::ThreePThreeC) |
        static_cast<CheckSet>(Check::Sr);
    std::vector<std::string> lines;
    verify_family(config, [&](VerificationReport const& r) {
      auto j = r.to_json();
      for (auto& [name, c] : j["checks"].items()) c.erase("millis");
      j.erase("millis");
      lines.push_back(j.dump());
    });
    return lines;
  };
  auto one = run(1);
  CHECK(one.size() == enumerate_sr(16, 2).size() + 20);
  CHECK(one == run(4));
}

TEST_CASE("a failing fork contract replays from its log") {
  Generated g;
  g.log = ConstructionLog::parse("grid 2x2 fork 3/2 fork 3/2");
  g.diagram = g.log.replay();
  g.key = canonical_form(g.diagram);
  VerifyOptions options;
  options.checks = static_cast<CheckSet>(Check::Fork);
  auto a = verify_lattice(g, options);
  auto b = verify_lattice(g, options);
  auto const* fa = a.find(Check::Fork);
  REQUIRE(fa);
  CHECK(fa->status == Status::Fail);
  CHECK(fa->details["colors_before"] == fa->details["colors_after"]);
  CHECK(fa->details == b.find(Check::Fork)->details);
}

TEST_CASE("enumeration cache") {
  auto dir = std::filesystem::temp_directory_path() / "latlab_cache_test";
  std::filesystem::remove_all(dir);
  VerifyConfig config;
  config.max_elements = 12;
  config.max_forks = 1;
  auto plain = family_for(config);
  config.cache_dir = dir;
  auto cold = family_for(config);
  auto warm = family_for(config);
  REQUIRE(plain.size() == 13);
  REQUIRE(cold.size() == plain.size());
  REQUIRE(warm.size() == plain.size());
  for (std::size_t i = 0; i < plain.size(); ++i) {
    CHECK(warm[i].key == plain[i].key);
    CHECK(warm[i].log == plain[i].log);
  }
  CHECK_FALSE(std::filesystem::is_empty(dir));
  std::filesystem::remove_all(dir);
}

TEST_CASE("svg export") {
  auto d = fixtures::s7();
  SvgOptions options;
  auto peak = peak_sublattices(d).front();
  for (auto e : peak.elements()) options.filled.insert(e);
  options.bold = {peak.left_edge(), peak.middle_edge(), peak.right_edge()};
  auto svg = export_svg(d, options);
  CHECK(count(svg, "<circle") == 7);
  CHECK(count(svg, "stroke-width=\"4\"") == 3);
  CHECK(count(svg, "<svg") == 1);
  auto g = export_svg(grid(3, 4));
  CHECK(count(g, "<circle") == 12);
  CHECK(count(g, "<line") == 17);
}

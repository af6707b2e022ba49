#include <doctest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "latlab/congruence.hpp"
#include "latlab/construct.hpp"
#include "latlab/error.hpp"
#include "latlab/swing.hpp"

using namespace latlab;

namespace {

Diagram from_log(char const* text) {
  return ConstructionLog::parse(text).replay();
}

std::size_t color(Diagram const& d, JiPoset const& ji, PrimeInterval e) {
  return ji.color_of[*d.edge_index(e)];
}

}  // namespace

TEST_CASE("swings in S7") {
  auto d = fixtures::s7();
  PrimeInterval left{3, 6}, mid{4, 6}, right{5, 6};
  CHECK(swing(d, left, mid) == SwingKind::External);
  CHECK(swing(d, right, mid) == SwingKind::External);
  CHECK(swing(d, left, right) == SwingKind::None);
  CHECK(swing(d, mid, left) == SwingKind::None);
  CHECK(swing_collapses(d, left, mid));
  CHECK_FALSE(swing_collapses(d, mid, left));
  CHECK(swing_collapses(d, mid, {1, 3}));
}

TEST_CASE("perspectivities in a square") {
  auto d = grid(2, 2);
  // top 3 over left corner 2 and right corner 1
  CHECK(up_perspective(d, {0, 2}, {1, 3}));
  CHECK(down_perspective(d, {1, 3}, {0, 2}));
  CHECK_FALSE(up_perspective(d, {0, 2}, {2, 3}));
  CHECK(swing(d, {2, 3}, {1, 3}) == SwingKind::None);
}

TEST_CASE("swing reachability equals congruence closure") {
  for (auto const& g : enumerate_sr(16, 2)) {
    auto const& d = g.diagram;
    SwingEngine engine(d);
    for (std::size_t p = 0; p < d.edge_count(); ++p) {
      auto ws = engine.witnesses_from(p);
      for (std::size_t q = 0; q < d.edge_count(); ++q) {
        bool oracle = collapses(d.lattice(), d.edges()[p], d.edges()[q]);
        REQUIRE(ws[q].has_value() == oracle);
        if (ws[q]) {
          CHECK(is_descending(d, *ws[q]));
          CHECK(ws[q]->back().to == d.edges()[q]);
        }
      }
    }
  }
}

TEST_CASE("witness formatting and audit") {
  auto d = fixtures::s7();
  auto w = swing_reachable(d, {3, 6}, {4, 6});
  REQUIRE(w);
  CHECK(format_witness(*w) == "[3,6] ↗ [3,6] ↷ex [4,6]");
  CHECK_NOTHROW(audit_descent(d, *w));
  std::vector<SwingStep> bad{{StepKind::UpPerspective, {4, 6}, {4, 6}},
                             {StepKind::SwingExternal, {4, 6}, {4, 6}}};
  CHECK_THROWS_AS(audit_descent(d, bad), LatticeError);
  CHECK_FALSE(is_descending(d, bad));
}

TEST_CASE("equality witnesses match colour equality") {
  auto sq = grid(2, 2);
  auto w = equality_witness(sq, {0, 2}, {1, 3});
  REQUIRE(w);
  CHECK(w->s == w->t);
  for (auto const& g : enumerate_sr(16, 2)) {
    auto const& d = g.diagram;
    SwingEngine engine(d);
    auto ji = ji_con_poset(d);
    for (std::size_t p = 0; p < d.edge_count(); ++p) {
      auto ws = equality_witnesses_from(engine, p);
      for (std::size_t q = 0; q < d.edge_count(); ++q) {
        CHECK(ws[q].has_value() == (ji.color_of[p] == ji.color_of[q]));
      }
    }
  }
}

TEST_CASE("covering witness in S7") {
  auto d = fixtures::s7();
  auto w = covering_witness(d, {3, 6}, {4, 6});
  REQUIRE(w);
  CHECK(w->r == PrimeInterval{3, 6});
  CHECK(w->s == PrimeInterval{3, 6});
  CHECK(w->t == PrimeInterval{3, 6});
  CHECK(w->u == PrimeInterval{4, 6});
  CHECK(w->peak.top == 6);
  CHECK_FALSE(covering_witness(d, {4, 6}, {3, 6}));
  CHECK_FALSE(covering_witness(d, {3, 6}, {5, 6}));
}

TEST_CASE("every Ji cover has a covering witness with a matching peak") {
  for (auto const& g : enumerate_sr(16, 2)) {
    auto const& d = g.diagram;
    SwingEngine engine(d);
    auto ji = ji_con_poset(d);
    for (std::size_t p = 0; p < d.edge_count(); ++p) {
      auto ws = covering_witnesses_from(engine, ji, p);
      for (std::size_t q = 0; q < d.edge_count(); ++q) {
        if (ji.covers(ji.color_of[q], ji.color_of[p])) {
          REQUIRE(ws[q].has_value());
        }
        if (!ws[q]) continue;
        auto const& peak = ws[q]->peak;
        CHECK(is_peak_sublattice(d, peak));
        CHECK(color(d, ji, ws[q]->u) == ji.color_of[q]);
        CHECK(color(d, ji, ws[q]->t) == ji.color_of[p]);
      }
    }
  }
}

TEST_CASE("a swing chain can reach a colour two steps down") {
  // the middle element of the first fork gets a fork of its own under a
  // cell whose top edges have comparable colours
  auto d = from_log("grid 2x2 fork 3/2 fork 3/2 fork 4/9");
  REQUIRE(is_sr(d));
  auto ji = ji_con_poset(d);
  auto p = color(d, ji, {0, 13});
  auto q = color(d, ji, {11, 4});
  auto between = color(d, ji, {4, 3});
  CHECK(ji.leq(q, between));
  CHECK(ji.leq(between, p));
  CHECK_FALSE(ji.covers(q, p));
  // the chain of the covering shape exists nonetheless
  auto w = covering_witness(d, {0, 13}, {11, 4});
  REQUIRE(w);
  CHECK(w->peak.top == 4);
  // and the peak at 4 carries a triple that is not a V
  auto report = v_lemma_check(d, ji);
  CHECK_FALSE(report.ok());
  CHECK(report.stray_peaks.size() >= 1);
}

TEST_CASE("peak sublattices") {
  auto d = fixtures::s7();
  auto peaks = peak_sublattices(d);
  REQUIRE(peaks.size() == 1);
  CHECK(peaks.front() == PeakSublattice{0, 1, 2, 3, 4, 5, 6});
  auto ji = ji_con_poset(d);
  auto vs = v_relations(ji);
  REQUIRE(vs.size() == 1);
  CHECK(peak_triple(d, ji, peaks.front()) == vs.front());
  CHECK(v_lemma_check(d, ji).ok());
  CHECK(peak_sublattices(grid(3, 3)).empty());
}

TEST_CASE("two forks in disjoint cells") {
  auto d = from_log("grid 4x4 fork 5/4 fork 15/14");
  REQUIRE(is_sr(d));
  auto wide = wide_elements(d);
  CHECK(wide.size() == 2);
  auto ji = ji_con_poset(d);
  CHECK(v_relations(ji).size() == 2);
  auto report = v_lemma_check(d, ji);
  CHECK(report.ok());
}

TEST_CASE("W relations") {
  auto d = from_log("grid 2x2 fork 3/2 fork 4/5");
  auto ji = ji_con_poset(d);
  auto vs = v_relations(ji);
  std::set<std::array<std::size_t, 6>> expected;
  for (auto const& x : vs)
    for (auto const& y : vs) {
      if (x.a == y.a) continue;
      // either orientation of each V can be glued
      for (auto [b, c] : {std::pair{x.b, x.c}, std::pair{x.c, x.b}})
        for (auto [e, f] : {std::pair{y.b, y.c}, std::pair{y.c, y.b}})
          if (c == e) expected.insert({x.a, b, c, y.a, e, f});
    }
  std::set<std::array<std::size_t, 6>> got;
  for (auto const& w : w_relations(d, ji)) {
    got.insert(w.colors);
    CHECK((w.version1 || w.version2));
  }
  CHECK_FALSE(got.empty());
  CHECK(got == expected);
  CHECK(w_relations(fixtures::s7(), ji_con_poset(fixtures::s7())).empty());
}

TEST_CASE("three-crown relations") {
  auto d = from_log("grid 4x4 fork 13/12 fork 14/13 fork 10/25 fork 31/32");
  auto ji = ji_con_poset(d);
  std::set<std::array<std::size_t, 6>> expected;
  auto v = [&](std::size_t a, std::size_t b, std::size_t c) {
    return b != c && ji.covers(a, b) && ji.covers(a, c);
  };
  std::size_t n = ji.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        if (!v(a, b, c)) continue;
        for (std::size_t dd = 0; dd < n; ++dd)
          for (std::size_t e = 0; e < n; ++e)
            for (std::size_t f = 0; f < n; ++f) {
              if (a == dd || a == e || dd == e) continue;
              if (v(dd, c, f) && v(e, b, f)) expected.insert({a, b, c, dd, e, f});
            }
      }
  auto got_list = three_crown_relations(ji);
  std::set<std::array<std::size_t, 6>> got(got_list.begin(), got_list.end());
  CHECK(got.size() == 6);
  CHECK(got == expected);
}

TEST_CASE("facing edges of a square") {
  auto d = grid(2, 2);
  CHECK(faces(d, {0, 2}, {1, 3}));
  CHECK(faces(d, {0, 1}, {2, 3}));
  CHECK_FALSE(faces(d, {0, 2}, {2, 3}));
  CHECK_FALSE(faces(d, {0, 2}, {0, 1}));
}

TEST_CASE("faulty swing rules change reachability on S7") {
  auto d = fixtures::s7();
  auto differs = [&](SwingRule rule) {
    SwingEngine good(d), bad(d, rule);
    for (std::size_t p = 0; p < d.edge_count(); ++p)
      for (std::size_t q = 0; q < d.edge_count(); ++q)
        if (good.collapses(p, q) != bad.collapses(p, q)) return true;
    return false;
  };
  CHECK(differs(SwingRule::SwapEndpoints));
  CHECK(differs(SwingRule::DropInteriorCondition));
  // relabelling internal as external leaves reachability alone
  CHECK_FALSE(differs(SwingRule::SwapClassification));
}

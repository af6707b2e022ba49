#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "fixtures.hpp"
#include "latlab/error.hpp"
#include "latlab/harness.hpp"
#include "latlab/poset.hpp"

using namespace latlab;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (LatticeError const& e) {
    return e.kind();
  }
  FAIL("no LatticeError thrown");
  return ErrorKind::InternalFlaw;
}

// Every injective map, checked pointwise. Only for tiny inputs.
bool brute_embedding(Poset const& p, Poset const& q, EmbeddingMode mode) {
  std::vector<Elem> map(p.size());
  std::vector<bool> used(q.size(), false);
  auto ok = [&] {
    for (Elem u = 0; u < p.size(); ++u) {
      for (Elem v = 0; v < p.size(); ++v) {
        if (p.leq(u, v) != q.leq(map[u], map[v])) return false;
        if (p.covers(u, v) && !q.covers(map[u], map[v])) return false;
        if (mode == EmbeddingMode::ReflectCovers &&
            q.covers(map[u], map[v]) && !p.covers(u, v)) {
          return false;
        }
      }
    }
    return true;
  };
  auto rec = [&](auto&& self, Elem i) -> bool {
    if (i == p.size()) return ok();
    for (Elem t = 0; t < q.size(); ++t) {
      if (used[t]) continue;
      used[t] = true;
      map[i] = t;
      if (self(self, i + 1)) return true;
      used[t] = false;
    }
    return false;
  };
  return rec(rec, 0);
}

// Downsets of p, as bit masks; p has at most 10 elements.
std::vector<unsigned> downsets(Poset const& p) {
  std::vector<unsigned> out;
  for (unsigned mask = 0; mask < (1U << p.size()); ++mask) {
    bool closed = true;
    for (Elem b = 0; b < p.size() && closed; ++b) {
      if (!(mask >> b & 1U)) continue;
      for (Elem a = 0; a < p.size(); ++a) {
        if (p.leq(a, b) && !(mask >> a & 1U)) closed = false;
      }
    }
    if (closed) out.push_back(mask);
  }
  return out;
}

Lattice downset_lattice(std::vector<unsigned> const& ds) {
  std::vector<CoverPair> pairs;
  for (Elem i = 0; i < ds.size(); ++i) {
    for (Elem j = 0; j < ds.size(); ++j) {
      if (i != j && (ds[i] & ds[j]) == ds[i]) pairs.push_back({i, j});
    }
  }
  return Lattice::from_poset(Poset::close_order(ds.size(), pairs));
}

}  // namespace

TEST_CASE("close_order rejects bad input") {
  std::vector<CoverPair> cycle{{0, 1}, {1, 2}, {2, 0}};
  CHECK(kind_of([&] { Poset::close_order(3, cycle); }) ==
        ErrorKind::CycleDetected);
  std::vector<CoverPair> loop{{1, 1}};
  CHECK(kind_of([&] { Poset::close_order(2, loop); }) ==
        ErrorKind::CycleDetected);
  std::vector<CoverPair> out_of_range{{0, 5}};
  CHECK(kind_of([&] { Poset::close_order(3, out_of_range); }) ==
        ErrorKind::InvalidElement);
  std::vector<CoverPair> twice{{0, 1}, {0, 1}};
  CHECK(kind_of([&] { Poset::close_order(2, twice); }) ==
        ErrorKind::DuplicateElement);
}

TEST_CASE("implied pairs are dropped from the covers") {
  std::vector<CoverPair> pairs{{0, 1}, {1, 2}, {0, 2}};
  auto p = Poset::close_order(3, pairs);
  CHECK(p.covers(0, 1));
  CHECK_FALSE(p.covers(0, 2));
  CHECK(p.leq(0, 2));
  CHECK(p.cover_pairs().size() == 2);
}

TEST_CASE("random orders agree with a reachability oracle") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 200; ++round) {
    std::size_t n = 1 + rng() % 14;
    std::vector<CoverPair> pairs;
    std::bernoulli_distribution coin(0.3);
    for (Elem i = 0; i < n; ++i)
      for (Elem j = i + 1; j < n; ++j)
        if (coin(rng)) pairs.push_back({i, j});
    auto p = Poset::close_order(n, pairs);
    auto m = fixtures::reach(n, pairs);
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = 0; b < n; ++b) {
        REQUIRE(p.leq(a, b) == m[a][b]);
        bool cover = a != b && m[a][b];
        for (Elem c = 0; c < n && cover; ++c) {
          if (c != a && c != b && m[a][c] && m[c][b]) cover = false;
        }
        REQUIRE(p.covers(a, b) == cover);
      }
    }
    CHECK(transitive_reduction(p.order()) == p.cover_pairs());
    auto const& ext = p.linear_extension();
    REQUIRE(ext.size() == n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        CHECK_FALSE(p.less(ext[j], ext[i]));
  }
}

TEST_CASE("downset lattices have union joins and intersection meets") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 30; ++round) {
    auto p = fixtures::random_poset(rng, 2 + rng() % 5, 0.35);
    auto ds = downsets(p);
    auto lat = downset_lattice(ds);
    for (Elem i = 0; i < ds.size(); ++i) {
      for (Elem j = 0; j < ds.size(); ++j) {
        REQUIRE(ds[lat.join(i, j)] == (ds[i] | ds[j]));
        REQUIRE(ds[lat.meet(i, j)] == (ds[i] & ds[j]));
      }
    }
    CHECK(ds[lat.bottom()] == 0U);
    CHECK(ds[lat.top()] == (1U << p.size()) - 1);

    // join-irreducible downsets are the principal ones and regenerate p
    auto ji = join_irreducibles(lat);
    REQUIRE(ji.size() == p.size());
    // each principal downset has a single maximal element
    std::vector<Elem> generator(ji.size());
    for (std::size_t k = 0; k < ji.size(); ++k) {
      unsigned mask = ds[ji[k]];
      std::vector<Elem> maximal;
      for (Elem e = 0; e < p.size(); ++e) {
        if (!(mask >> e & 1U)) continue;
        bool top = true;
        for (Elem f = 0; f < p.size(); ++f) {
          if (f != e && (mask >> f & 1U) && p.leq(e, f)) top = false;
        }
        if (top) maximal.push_back(e);
      }
      REQUIRE(maximal.size() == 1);
      generator[k] = maximal.front();
    }
    auto sub = induced_subposet(lat.poset(), ji);
    for (std::size_t a = 0; a < ji.size(); ++a)
      for (std::size_t b = 0; b < ji.size(); ++b)
        CHECK(sub.leq(a, b) == p.leq(generator[a], generator[b]));
  }
}

TEST_CASE("posets without a least upper bound are not lattices") {
  std::vector<CoverPair> two_tops{{0, 1}, {0, 2}};
  auto p = Poset::close_order(3, two_tops);
  try {
    Lattice::from_poset(p);
    FAIL("expected NotALattice");
  } catch (LatticeError const& e) {
    CHECK(e.kind() == ErrorKind::NotALattice);
    CHECK(std::string(e.what()).find("1") != std::string::npos);
  }
  CHECK(kind_of([] { Lattice::from_poset(r3_poset()); }) ==
        ErrorKind::NotALattice);
}

TEST_CASE("embedding search agrees with exhaustive search") {
  std::mt19937_64 rng(5);
  int found = 0, absent = 0;
  for (int round = 0; round < 400; ++round) {
    auto pattern = fixtures::random_poset(rng, 1 + rng() % 5, 0.4);
    auto target = fixtures::random_poset(rng, 1 + rng() % 8, 0.3);
    for (auto mode : {EmbeddingMode::PreserveCovers, EmbeddingMode::ReflectCovers}) {
      auto phi = cover_preserving_embedding(pattern, target, mode);
      bool expected = brute_embedding(pattern, target, mode);
      REQUIRE(phi.has_value() == expected);
      if (phi) {
        ++found;
        CHECK(is_cover_preserving_embedding(pattern, target, *phi, mode));
        CHECK(std::set<Elem>(phi->begin(), phi->end()).size() == phi->size());
      } else {
        ++absent;
      }
    }
  }
  CHECK(found > 20);
  CHECK(absent > 20);
}

TEST_CASE("a V has no embedding into an antichain") {
  std::vector<CoverPair> v{{0, 1}, {0, 2}};
  auto pattern = Poset::close_order(3, v);
  auto antichain = Poset::close_order(5, {});
  CHECK_FALSE(cover_preserving_embedding(pattern, antichain).has_value());
}

TEST_CASE("R3 embeds into itself") {
  auto r3 = r3_poset();
  CHECK(r3.size() == 9);
  CHECK(r3.cover_pairs().size() == 12);
  auto phi = cover_preserving_embedding(r3, r3);
  REQUIRE(phi.has_value());
  CHECK(is_cover_preserving_embedding(r3, r3, *phi));
  std::vector<Elem> identity(9);
  std::iota(identity.begin(), identity.end(), Elem{0});
  CHECK(is_cover_preserving_embedding(r3, r3, identity,
                                      EmbeddingMode::ReflectCovers));
}

TEST_CASE("incomparable pairs must stay incomparable") {
  std::vector<CoverPair> sq{{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  auto square = Poset::close_order(4, sq);
  std::vector<CoverPair> ch{{0, 1}, {1, 2}, {2, 3}};
  auto chain4 = Poset::close_order(4, ch);
  CHECK_FALSE(cover_preserving_embedding(square, chain4).has_value());
  // two disjoint 2-chains into a 2+2 crown
  std::vector<CoverPair> cr{{0, 2}, {0, 3}, {1, 2}, {1, 3}};
  auto crown = Poset::close_order(4, cr);
  std::vector<CoverPair> pv{{0, 2}, {1, 3}};
  auto two_chains = Poset::close_order(4, pv);
  CHECK_FALSE(cover_preserving_embedding(two_chains, crown).has_value());
  CHECK(cover_preserving_embedding(two_chains, two_chains).has_value());
}

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "latlab/diagram.hpp"
#include "latlab/poset.hpp"

namespace fixtures {

using latlab::CoverPair;
using latlab::Diagram;
using latlab::Elem;
using latlab::Poset;

// bottom 0, middles 1 2, tops 3 4 5 left to right, top 6
inline Diagram s7() {
  return Diagram::from_orders({{}, {0}, {0}, {1}, {1, 2}, {2}, {3, 4, 5}},
                              {{1, 2}, {3, 4}, {4, 5}, {6}, {6}, {6}, {}});
}

inline Diagram m3() {
  return Diagram::from_orders({{}, {0}, {0}, {0}, {1, 2, 3}},
                              {{1, 2, 3}, {4}, {4}, {4}, {}});
}

// 0 < 1 < 2 < 4, 0 < 3 < 4
inline Diagram n5() {
  return Diagram::from_orders({{}, {0}, {1}, {0}, {2, 3}},
                              {{1, 3}, {2}, {4}, {4}, {}});
}

// A square 0 < 1, 2 < 3 with 3 < 5 and 2 < 6 < 4 < 5: has a 4-cell, is not
// semimodular.
inline Diagram square_with_long_side() {
  return Diagram::from_orders(
      {{}, {0}, {0}, {1, 2}, {6}, {3, 4}, {2}},
      {{1, 2}, {3}, {3, 6}, {5}, {5}, {}, {4}});
}

// Random order on n elements: i < j with probability p for i < j, then
// closed.
inline Poset random_poset(std::mt19937_64& rng, std::size_t n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<CoverPair> pairs;
  for (Elem i = 0; i < n; ++i) {
    for (Elem j = i + 1; j < n; ++j) {
      if (coin(rng)) pairs.push_back({i, j});
    }
  }
  return Poset::close_order(n, pairs);
}

// Floyd-Warshall over the raw relation, independent of Poset.
inline std::vector<std::vector<bool>> reach(std::size_t n,
                                            std::vector<CoverPair> const& r) {
  std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = true;
  for (auto [a, b] : r) m[a][b] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (m[i][k] && m[k][j]) m[i][j] = true;
  return m;
}

inline std::vector<Elem> random_permutation(std::mt19937_64& rng,
                                            std::size_t n) {
  std::vector<Elem> perm(n);
  std::iota(perm.begin(), perm.end(), Elem{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

}  // namespace fixtures

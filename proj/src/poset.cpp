#include "latlab/poset.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <string>

#include "latlab/error.hpp"

namespace latlab {

char const* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CycleDetected: return "CycleDetected";
    case ErrorKind::DuplicateElement: return "DuplicateElement";
    case ErrorKind::InvalidElement: return "InvalidElement";
    case ErrorKind::NotALattice: return "NotALattice";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::NotSps: return "NotSps";
    case ErrorKind::NotAFourCell: return "NotAFourCell";
    case ErrorKind::BadSize: return "BadSize";
    case ErrorKind::NotSemimodular: return "NotSemimodular";
    case ErrorKind::NotPlanar: return "NotPlanar";
    case ErrorKind::InconsistentOrders: return "InconsistentOrders";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::InternalFlaw: return "InternalFlaw";
  }
  return "Unknown";
}

std::vector<CoverPair> transitive_reduction(BitMatrix const& leq) {
  std::size_t const n = leq.size();
  std::vector<CoverPair> out;
  BitMatrix strict(n);
  for (std::size_t a = 0; a < n; ++a) {
    auto src = leq.row(a);
    auto dst = strict.row(a);
    std::copy(src.begin(), src.end(), dst.begin());
    strict.reset(a, a);
  }
  std::vector<std::uint64_t> reach2(leq.words_per_row());
  for (std::size_t a = 0; a < n; ++a) {
    std::fill(reach2.begin(), reach2.end(), 0);
    for (auto c : strict.row_indices(a)) {
      auto rc = strict.row(c);
      for (std::size_t w = 0; w < reach2.size(); ++w) reach2[w] |= rc[w];
    }
    for (auto b : strict.row_indices(a)) {
      if (((reach2[b / 64] >> (b % 64)) & 1U) == 0) {
        out.emplace_back(static_cast<Elem>(a), static_cast<Elem>(b));
      }
    }
  }
  return out;
}

Poset Poset::close_order(std::size_t n, std::span<CoverPair const> covers) {
  std::vector<std::vector<Elem>> succ(n);
  std::set<CoverPair> seen;
  for (auto [a, b] : covers) {
    if (a >= n || b >= n) {
      throw LatticeError(ErrorKind::InvalidElement,
                         "pair (" + std::to_string(a) + "," +
                             std::to_string(b) + ") out of range");
    }
    if (a == b) {
      throw LatticeError(ErrorKind::CycleDetected,
                         "self-loop on " + std::to_string(a));
    }
    if (!seen.insert({a, b}).second) {
      throw LatticeError(ErrorKind::DuplicateElement,
                         "pair (" + std::to_string(a) + "," +
                             std::to_string(b) + ") listed twice");
    }
    succ[a].push_back(b);
  }

  std::vector<std::size_t> indeg(n, 0);
  for (auto const& s : succ) {
    for (auto b : s) ++indeg[b];
  }
  std::priority_queue<Elem, std::vector<Elem>, std::greater<>> ready;
  for (Elem v = 0; v < n; ++v) {
    if (indeg[v] == 0) ready.push(v);
  }
  std::vector<Elem> topo;
  topo.reserve(n);
  while (!ready.empty()) {
    Elem v = ready.top();
    ready.pop();
    topo.push_back(v);
    for (auto b : succ[v]) {
      if (--indeg[b] == 0) ready.push(b);
    }
  }
  if (topo.size() != n) {
    throw LatticeError(ErrorKind::CycleDetected,
                       "cover relation contains a directed cycle");
  }

  Poset p;
  p.n_ = n;
  p.leq_ = BitMatrix(n);
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    Elem a = *it;
    p.leq_.set(a, a);
    for (auto b : succ[a]) p.leq_.or_row(a, b);
  }
  p.geq_ = BitMatrix(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (auto b : p.leq_.row_indices(a)) p.geq_.set(b, a);
  }
  p.cover_ = BitMatrix(n);
  p.up_.assign(n, {});
  p.down_.assign(n, {});
  for (auto [a, b] : transitive_reduction(p.leq_)) {
    p.cover_.set(a, b);
    p.up_[a].push_back(b);
    p.down_[b].push_back(a);
  }
  for (auto& d : p.down_) std::sort(d.begin(), d.end());
  p.topo_ = std::move(topo);
  return p;
}

std::vector<CoverPair> Poset::cover_pairs() const {
  std::vector<CoverPair> out;
  for (Elem a = 0; a < n_; ++a) {
    for (auto b : up_[a]) out.emplace_back(a, b);
  }
  return out;
}

Lattice Lattice::from_poset(Poset p) {
  std::size_t const n = p.size();
  if (n == 0) {
    throw LatticeError(ErrorKind::NotALattice, "empty poset");
  }
  std::vector<std::size_t> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[p.linear_extension()[i]] = i;

  Lattice lat;
  lat.join_.assign(n * n, 0);
  lat.meet_.assign(n * n, 0);
  std::vector<std::uint64_t> bound(p.order().words_per_row());

  auto fail = [](Elem a, Elem b, char const* what) {
    throw LatticeError(ErrorKind::NotALattice,
                       "pair (" + std::to_string(a) + "," + std::to_string(b) +
                           ") has no " + what);
  };

  for (Elem a = 0; a < n; ++a) {
    for (Elem b = a; b < n; ++b) {
      // least upper bound: the bound earliest in a linear extension, if it
      // lies below every other bound
      auto ra = p.order().row(a);
      auto rb = p.order().row(b);
      for (std::size_t w = 0; w < bound.size(); ++w) bound[w] = ra[w] & rb[w];
      constexpr Elem kNone = ~Elem{0};
      Elem best = kNone;
      for (std::size_t w = 0; w < bound.size(); ++w) {
        auto word = bound[w];
        while (word != 0) {
          auto e = static_cast<Elem>(w * 64 + std::countr_zero(word));
          word &= word - 1;
          if (best == kNone || rank[e] < rank[best]) best = e;
        }
      }
      if (best == kNone || !is_subset(bound, p.order().row(best))) {
        fail(a, b, "least upper bound");
      }
      lat.join_[a * n + b] = lat.join_[b * n + a] = best;

      auto da = p.order_transposed().row(a);
      auto db = p.order_transposed().row(b);
      for (std::size_t w = 0; w < bound.size(); ++w) bound[w] = da[w] & db[w];
      best = kNone;
      for (std::size_t w = 0; w < bound.size(); ++w) {
        auto word = bound[w];
        while (word != 0) {
          auto e = static_cast<Elem>(w * 64 + std::countr_zero(word));
          word &= word - 1;
          if (best == kNone || rank[e] > rank[best]) best = e;
        }
      }
      if (best == kNone ||
          !is_subset(bound, p.order_transposed().row(best))) {
        fail(a, b, "greatest lower bound");
      }
      lat.meet_[a * n + b] = lat.meet_[b * n + a] = best;
    }
  }
  lat.bottom_ = p.linear_extension().front();
  lat.top_ = p.linear_extension().back();
  // with n == 1 the loops above already verified the single element
  for (Elem e = 0; e < n; ++e) {
    if (!p.leq(lat.bottom_, e) || !p.leq(e, lat.top_)) {
      fail(lat.bottom_, e, "common bound");
    }
  }
  lat.poset_ = std::move(p);
  return lat;
}

std::vector<Elem> join_irreducibles(Lattice const& lattice) {
  std::vector<Elem> out;
  for (Elem e = 0; e < lattice.size(); ++e) {
    if (lattice.poset().lower_covers(e).size() == 1) out.push_back(e);
  }
  return out;
}

Poset induced_subposet(Poset const& p, std::span<Elem const> elements) {
  std::size_t const k = elements.size();
  BitMatrix leq(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (p.leq(elements[i], elements[j])) leq.set(i, j);
    }
  }
  auto covers = transitive_reduction(leq);
  return Poset::close_order(k, covers);
}

namespace {

class EmbeddingSearch {
 public:
  EmbeddingSearch(Poset const& pattern, Poset const& target,
                  EmbeddingMode mode)
      : p_(pattern), q_(target), mode_(mode), map_(pattern.size(), kFree),
        used_(target.size(), false) {
    order_search();
  }

  std::optional<std::vector<Elem>> run() {
    if (p_.size() > q_.size()) return std::nullopt;
    if (extend(0)) return map_;
    return std::nullopt;
  }

 private:
  static constexpr Elem kFree = ~Elem{0};

  // Most constrained first: repeatedly pick the element with the most
  // already-ordered cover neighbours, ties broken by cover degree then id.
  void order_search() {
    std::size_t const n = p_.size();
    std::vector<bool> placed(n, false);
    for (std::size_t step = 0; step < n; ++step) {
      Elem best = kFree;
      std::pair<std::size_t, std::size_t> best_score{0, 0};
      for (Elem u = 0; u < n; ++u) {
        if (placed[u]) continue;
        std::size_t linked = 0;
        for (auto v : p_.upper_covers(u)) linked += placed[v];
        for (auto v : p_.lower_covers(u)) linked += placed[v];
        std::size_t degree =
            p_.upper_covers(u).size() + p_.lower_covers(u).size();
        std::pair<std::size_t, std::size_t> score{linked, degree};
        if (best == kFree || score > best_score) {
          best = u;
          best_score = score;
        }
      }
      placed[best] = true;
      order_.push_back(best);
    }
  }

  bool compatible(Elem u, Elem x) const {
    if (q_.upper_covers(x).size() < p_.upper_covers(u).size()) return false;
    if (q_.lower_covers(x).size() < p_.lower_covers(u).size()) return false;
    for (Elem v = 0; v < p_.size(); ++v) {
      Elem y = map_[v];
      if (y == kFree) continue;
      if (p_.leq(u, v) != q_.leq(x, y)) return false;
      if (p_.leq(v, u) != q_.leq(y, x)) return false;
      if (p_.covers(u, v) && !q_.covers(x, y)) return false;
      if (p_.covers(v, u) && !q_.covers(y, x)) return false;
      if (mode_ == EmbeddingMode::ReflectCovers) {
        if (q_.covers(x, y) && !p_.covers(u, v)) return false;
        if (q_.covers(y, x) && !p_.covers(v, u)) return false;
      }
    }
    return true;
  }

  bool extend(std::size_t depth) {
    if (depth == order_.size()) return true;
    Elem u = order_[depth];
    for (Elem x = 0; x < q_.size(); ++x) {
      if (used_[x] || !compatible(u, x)) continue;
      map_[u] = x;
      used_[x] = true;
      if (extend(depth + 1)) return true;
      used_[x] = false;
      map_[u] = kFree;
    }
    return false;
  }

  Poset const& p_;
  Poset const& q_;
  EmbeddingMode mode_;
  std::vector<Elem> order_;
  std::vector<Elem> map_;
  std::vector<bool> used_;
};

}  // namespace

std::optional<std::vector<Elem>> cover_preserving_embedding(
    Poset const& pattern, Poset const& target, EmbeddingMode mode) {
  return EmbeddingSearch(pattern, target, mode).run();
}

bool is_cover_preserving_embedding(Poset const& pattern, Poset const& target,
                                   std::span<Elem const> map,
                                   EmbeddingMode mode) {
  std::size_t const n = pattern.size();
  if (map.size() != n) return false;
  for (Elem u = 0; u < n; ++u) {
    if (map[u] >= target.size()) return false;
    for (Elem v = 0; v < n; ++v) {
      if (u != v && map[u] == map[v]) return false;
      if (pattern.leq(u, v) != target.leq(map[u], map[v])) return false;
      if (pattern.covers(u, v) && !target.covers(map[u], map[v])) return false;
      if (mode == EmbeddingMode::ReflectCovers &&
          target.covers(map[u], map[v]) && !pattern.covers(u, v)) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace latlab

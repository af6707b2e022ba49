#include "latlab/congruence.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "latlab/error.hpp"

namespace latlab {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), Elem{0});
  }

  Elem find(Elem x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Returns false when already joined.
  bool unite(Elem a, Elem b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a < b) std::swap(a, b);
    parent_[a] = b;
    return true;
  }

  std::vector<Elem> labels() {
    std::vector<Elem> out(parent_.size());
    for (Elem e = 0; e < out.size(); ++e) out[e] = find(e);
    return out;
  }

 private:
  std::vector<Elem> parent_;
};

}  // namespace

Congruence::Congruence(std::vector<Elem> labels) : labels_(std::move(labels)) {
  // normalize: each block labelled by its smallest element
  std::vector<Elem> smallest(labels_.size(), ~Elem{0});
  for (Elem e = 0; e < labels_.size(); ++e) {
    smallest[labels_[e]] = std::min(smallest[labels_[e]], e);
  }
  for (auto& l : labels_) l = smallest[l];
}

Congruence Congruence::identity(std::size_t n) {
  std::vector<Elem> labels(n);
  std::iota(labels.begin(), labels.end(), Elem{0});
  return Congruence(std::move(labels));
}

std::size_t Congruence::block_count() const {
  std::size_t c = 0;
  for (Elem e = 0; e < labels_.size(); ++e) c += labels_[e] == e;
  return c;
}

std::vector<std::vector<Elem>> Congruence::blocks() const {
  std::vector<std::vector<Elem>> out;
  std::vector<std::size_t> index(labels_.size(), 0);
  for (Elem e = 0; e < labels_.size(); ++e) {
    if (labels_[e] == e) {
      index[e] = out.size();
      out.push_back({e});
    } else {
      out[index[labels_[e]]].push_back(e);
    }
  }
  return out;
}

bool Congruence::leq(Congruence const& other) const {
  for (Elem e = 0; e < labels_.size(); ++e) {
    if (!other.related(e, labels_[e])) return false;
  }
  return true;
}

bool Congruence::is_compatible(Lattice const& lat) const {
  for (Elem x = 0; x < labels_.size(); ++x) {
    Elem y = labels_[x];
    if (x == y) continue;
    for (Elem z = 0; z < lat.size(); ++z) {
      if (!related(lat.meet(x, z), lat.meet(y, z))) return false;
      if (!related(lat.join(x, z), lat.join(y, z))) return false;
    }
  }
  return true;
}

Congruence generated_congruence(Lattice const& lat,
                                std::span<std::pair<Elem, Elem> const> seeds) {
  std::size_t const n = lat.size();
  UnionFind uf(n);
  // Every merged pair is translated by every z; the translated pairs of a
  // generating set suffice for compatibility of the generated equivalence.
  std::deque<std::pair<Elem, Elem>> work;
  for (auto [a, b] : seeds) {
    if (uf.unite(a, b)) work.emplace_back(a, b);
  }
  while (!work.empty()) {
    auto [x, y] = work.front();
    work.pop_front();
    for (Elem z = 0; z < n; ++z) {
      Elem j1 = lat.join(x, z);
      Elem j2 = lat.join(y, z);
      if (uf.unite(j1, j2)) work.emplace_back(j1, j2);
      Elem m1 = lat.meet(x, z);
      Elem m2 = lat.meet(y, z);
      if (uf.unite(m1, m2)) work.emplace_back(m1, m2);
    }
  }
  return Congruence(uf.labels());
}

Congruence principal_congruence(Lattice const& lat, PrimeInterval p) {
  if (p.zero >= lat.size() || p.one >= lat.size() ||
      !lat.covers(p.zero, p.one)) {
    throw LatticeError(ErrorKind::NotPrime, to_string(p) + " is not an edge");
  }
  std::pair<Elem, Elem> seed{p.zero, p.one};
  return generated_congruence(lat, std::span(&seed, 1));
}

Congruence congruence_join(Lattice const& lat, Congruence const& a,
                           Congruence const& b) {
  std::vector<std::pair<Elem, Elem>> seeds;
  for (Elem e = 0; e < a.size(); ++e) {
    if (a.labels()[e] != e) seeds.emplace_back(e, a.labels()[e]);
    if (b.labels()[e] != e) seeds.emplace_back(e, b.labels()[e]);
  }
  return generated_congruence(lat, seeds);
}

bool collapses(Lattice const& lat, PrimeInterval p, PrimeInterval q) {
  return principal_congruence(lat, p).collapses(q);
}

JiPoset ji_con_poset(Diagram const& d) {
  JiPoset ji;
  auto const& edges = d.edges();
  ji.color_of.resize(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto con = principal_congruence(d.lattice(), edges[i]);
    auto it = std::find(ji.colors.begin(), ji.colors.end(), con);
    if (it == ji.colors.end()) {
      ji.color_of[i] = ji.colors.size();
      ji.colors.push_back(std::move(con));
    } else {
      ji.color_of[i] = static_cast<std::size_t>(it - ji.colors.begin());
    }
  }
  std::size_t const k = ji.colors.size();
  BitMatrix leq(k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      if (ji.colors[a].leq(ji.colors[b])) leq.set(a, b);
    }
  }
  auto covers = transitive_reduction(leq);
  ji.order = Poset::close_order(k, covers);
  return ji;
}

std::vector<Congruence> con_lattice(Lattice const& lat, std::size_t cap) {
  if (lat.size() > cap) {
    throw LatticeError(ErrorKind::CapExceeded,
                       std::to_string(lat.size()) + " elements exceeds cap " +
                           std::to_string(cap));
  }
  std::vector<Congruence> principals;
  for (auto [a, b] : lat.poset().cover_pairs()) {
    principals.push_back(principal_congruence(lat, {a, b}));
  }
  std::set<Congruence> all{Congruence::identity(lat.size())};
  std::deque<Congruence> frontier{Congruence::identity(lat.size())};
  while (!frontier.empty()) {
    Congruence c = frontier.front();
    frontier.pop_front();
    for (auto const& p : principals) {
      if (p.leq(c)) continue;
      auto j = congruence_join(lat, c, p);
      if (all.insert(j).second) frontier.push_back(std::move(j));
    }
  }
  return {all.begin(), all.end()};
}

}  // namespace latlab

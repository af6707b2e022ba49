#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "latlab/bitmatrix.hpp"

namespace latlab {

// Element ids are dense: 0..n-1.
using Elem = std::uint32_t;

// a ≺ b
using CoverPair = std::pair<Elem, Elem>;

// Finite partial order. The cover relation is always the transitive
// reduction of the order; both are kept as bit matrices plus sorted
// adjacency lists.
class Poset {
 public:
  Poset() = default;

  // Reflexive-transitive closure of `covers`; pairs implied transitively are
  // dropped. Throws CycleDetected, DuplicateElement or InvalidElement.
  static Poset close_order(std::size_t n, std::span<CoverPair const> covers);

  std::size_t size() const noexcept { return n_; }

  bool leq(Elem a, Elem b) const { return leq_.test(a, b); }
  bool less(Elem a, Elem b) const { return a != b && leq_.test(a, b); }
  bool comparable(Elem a, Elem b) const { return leq(a, b) || leq(b, a); }
  // a ≺ b
  bool covers(Elem a, Elem b) const { return cover_.test(a, b); }

  std::vector<Elem> const& upper_covers(Elem a) const { return up_[a]; }
  std::vector<Elem> const& lower_covers(Elem a) const { return down_[a]; }

  std::vector<CoverPair> cover_pairs() const;

  // Row a holds {b : a ≤ b}.
  BitMatrix const& order() const noexcept { return leq_; }
  // Row b holds {a : a ≤ b}.
  BitMatrix const& order_transposed() const noexcept { return geq_; }

  // A linear extension (Kahn order, smallest id first among ready elements).
  std::vector<Elem> const& linear_extension() const noexcept { return topo_; }

 private:
  std::size_t n_ = 0;
  BitMatrix leq_;
  BitMatrix geq_;
  BitMatrix cover_;
  std::vector<std::vector<Elem>> up_;
  std::vector<std::vector<Elem>> down_;
  std::vector<Elem> topo_;
};

// Recomputes the transitive reduction of p's order from scratch.
std::vector<CoverPair> transitive_reduction(BitMatrix const& leq);

class Lattice {
 public:
  Lattice() = default;

  // Throws NotALattice naming a pair with no least upper bound or no
  // greatest lower bound.
  static Lattice from_poset(Poset p);

  Poset const& poset() const noexcept { return poset_; }
  std::size_t size() const noexcept { return poset_.size(); }

  Elem join(Elem a, Elem b) const { return join_[a * size() + b]; }
  Elem meet(Elem a, Elem b) const { return meet_[a * size() + b]; }
  Elem bottom() const noexcept { return bottom_; }
  Elem top() const noexcept { return top_; }

  bool leq(Elem a, Elem b) const { return poset_.leq(a, b); }
  bool covers(Elem a, Elem b) const { return poset_.covers(a, b); }

 private:
  Poset poset_;
  std::vector<Elem> join_;
  std::vector<Elem> meet_;
  Elem bottom_ = 0;
  Elem top_ = 0;
};

// Elements with exactly one lower cover, ascending.
std::vector<Elem> join_irreducibles(Lattice const& lattice);

// Sub-poset of `p` induced by `elements`; element i of the result is
// elements[i].
Poset induced_subposet(Poset const& p, std::span<Elem const> elements);

enum class EmbeddingMode {
  PreserveCovers,  // u ≺ v implies φu ≺ φv
  ReflectCovers,   // additionally φu ≺ φv implies u ≺ v
};

// Injective φ: P -> Q with u ≤ v iff φu ≤ φv and covers mapped to covers.
// Deterministic backtracking, most constrained element first.
std::optional<std::vector<Elem>> cover_preserving_embedding(
    Poset const& pattern, Poset const& target,
    EmbeddingMode mode = EmbeddingMode::PreserveCovers);

// Pointwise recheck of the embedding conditions.
bool is_cover_preserving_embedding(
    Poset const& pattern, Poset const& target, std::span<Elem const> map,
    EmbeddingMode mode = EmbeddingMode::PreserveCovers);

}  // namespace latlab

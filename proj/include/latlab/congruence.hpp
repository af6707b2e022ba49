#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "latlab/diagram.hpp"
#include "latlab/poset.hpp"

namespace latlab {

// Partition of the element set. Each element is labelled by the smallest
// element of its block, so equal partitions compare equal.
class Congruence {
 public:
  Congruence() = default;
  explicit Congruence(std::vector<Elem> labels);

  static Congruence identity(std::size_t n);

  std::size_t size() const noexcept { return labels_.size(); }
  std::vector<Elem> const& labels() const noexcept { return labels_; }
  bool related(Elem a, Elem b) const { return labels_[a] == labels_[b]; }
  bool collapses(PrimeInterval p) const { return related(p.zero, p.one); }

  std::size_t block_count() const;
  std::vector<std::vector<Elem>> blocks() const;
  bool is_trivial() const { return block_count() == size(); }

  // Refinement order: *this ⊆ other.
  bool leq(Congruence const& other) const;

  // Substitution-rule audit against meet and join.
  bool is_compatible(Lattice const& lattice) const;

  auto operator<=>(Congruence const&) const = default;

 private:
  std::vector<Elem> labels_;
};

// Least congruence containing all seed pairs (union-find closure).
Congruence generated_congruence(Lattice const& lattice,
                                std::span<std::pair<Elem, Elem> const> seeds);

// con(p). Throws NotPrime.
Congruence principal_congruence(Lattice const& lattice, PrimeInterval p);

Congruence congruence_join(Lattice const& lattice, Congruence const& a,
                           Congruence const& b);

// q is collapsed by con(p).
bool collapses(Lattice const& lattice, PrimeInterval p, PrimeInterval q);

// Ji(Con L): the distinct principal congruences of prime intervals ordered
// by refinement, with the colouring edge -> colour.
struct JiPoset {
  std::vector<Congruence> colors;
  Poset order;
  // indexed like Diagram::edges()
  std::vector<std::size_t> color_of;

  std::size_t size() const noexcept { return colors.size(); }
  bool leq(std::size_t a, std::size_t b) const {
    return order.leq(static_cast<Elem>(a), static_cast<Elem>(b));
  }
  bool covers(std::size_t a, std::size_t b) const {
    return order.covers(static_cast<Elem>(a), static_cast<Elem>(b));
  }
};

// Colours are numbered by the first edge (in Diagram::edges() order) that
// carries them.
JiPoset ji_con_poset(Diagram const& d);

inline constexpr std::size_t kDefaultConLatticeCap = 14;

// Every congruence, by closing joins of principal congruences; sorted.
// Exponential; throws CapExceeded above `cap` elements.
std::vector<Congruence> con_lattice(Lattice const& lattice,
                                    std::size_t cap = kDefaultConLatticeCap);

}  // namespace latlab

#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "latlab/poset.hpp"

namespace latlab {

// Edge of the diagram: zero ≺ one.
struct PrimeInterval {
  Elem zero = 0;
  Elem one = 0;

  auto operator<=>(PrimeInterval const&) const = default;
};

std::string to_string(PrimeInterval p);

// A lattice together with a planar drawing given combinatorially: the
// left-to-right order of lower covers and of upper covers of every element.
class Diagram {
 public:
  Diagram() = default;

  // Builds the diagram from per-element cover orders. The two lists must be
  // mutually consistent and describe the Hasse diagram of a lattice.
  static Diagram from_orders(std::vector<std::vector<Elem>> lower,
                             std::vector<std::vector<Elem>> upper);

  Lattice const& lattice() const noexcept { return lattice_; }
  Poset const& poset() const noexcept { return lattice_.poset(); }
  std::size_t size() const noexcept { return lattice_.size(); }

  std::vector<Elem> const& lower_order(Elem e) const { return lower_[e]; }
  std::vector<Elem> const& upper_order(Elem e) const { return upper_[e]; }

  // All prime intervals sorted by (zero, one).
  std::vector<PrimeInterval> const& edges() const noexcept { return edges_; }
  std::optional<std::size_t> edge_index(PrimeInterval p) const;
  std::size_t edge_count() const noexcept { return edges_.size(); }

  // Length of the longest chain from bottom to e.
  std::size_t height(Elem e) const { return height_[e]; }

  // Left-right reflection.
  Diagram mirror() const;
  // Element e of *this becomes perm[e].
  Diagram relabeled(std::span<Elem const> perm) const;

 private:
  Lattice lattice_;
  std::vector<std::vector<Elem>> lower_;
  std::vector<std::vector<Elem>> upper_;
  std::vector<PrimeInterval> edges_;
  std::vector<std::int32_t> edge_lookup_;
  std::vector<std::size_t> height_;
};

struct FourCell {
  Elem top = 0;
  Elem left_corner = 0;
  Elem right_corner = 0;
  Elem bottom = 0;

  auto operator<=>(FourCell const&) const = default;
};

struct Drawing {
  std::vector<double> x;
  std::vector<double> y;
};

struct PlanarityResult {
  bool valid = false;
  Drawing drawing;
  std::optional<std::pair<PrimeInterval, PrimeInterval>> crossing;
};

// Builds a concrete straight-line drawing that respects every cover order and
// reports the first crossing pair of edges, if any. Throws InconsistentOrders
// when the lower and upper orders cannot come from one planar drawing.
PlanarityResult validate_planar(Diagram const& d);

struct SlimResult {
  bool slim = true;
  std::optional<std::array<Elem, 3>> witness;  // atoms of an M3 sublattice
};

SlimResult is_slim(Diagram const& d);
// O(n^3) triple sweep; reference for is_slim.
SlimResult is_slim_naive(Lattice const& lattice);

struct SemimodularResult {
  bool semimodular = true;
  std::optional<std::pair<Elem, Elem>> witness;  // a ∧ b ≺ a but b ⊀ a ∨ b
};

SemimodularResult is_semimodular(Diagram const& d);

struct RectangularResult {
  bool rectangular = false;
  std::optional<Elem> left_corner;
  std::optional<Elem> right_corner;
};

// Throws NotSemimodular or NotPlanar when the precondition fails.
RectangularResult is_rectangular(Diagram const& d);

std::vector<Elem> left_boundary(Diagram const& d);
std::vector<Elem> right_boundary(Diagram const& d);

bool is_doubly_irreducible(Diagram const& d, Elem e);

// Sorted by (top, left_corner).
std::vector<FourCell> four_cells(Diagram const& d);
bool is_four_cell(Diagram const& d, FourCell const& cell);

bool is_sps(Diagram const& d);
bool is_sr(Diagram const& d);

// Elements covering at least three elements.
std::vector<Elem> wide_elements(Diagram const& d);

// Label-invariant key; equal for isomorphic diagrams and for mirror images.
std::string canonical_form(Diagram const& d);

}  // namespace latlab

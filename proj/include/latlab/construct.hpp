#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "latlab/diagram.hpp"

namespace latlab {

// Total order 0 < 1 < ... < k-1. Throws BadSize for k = 0.
Diagram chain(std::size_t k);

// C_m × C_n. Element (i, j) has id i*n + j; raising i moves up-left,
// raising j moves up-right. Throws BadSize unless m, n >= 2.
Diagram grid(std::size_t m, std::size_t n);

// The staircases of 4-cells running down-left and down-right from a cell.
// left_path[i+1] has top left_path[i].left_corner and right corner
// left_path[i].bottom; dually on the right.
struct ForkSite {
  FourCell cell;
  std::vector<FourCell> left_path;
  std::vector<FourCell> right_path;

  std::size_t new_elements() const {
    return 1 + left_path.size() + right_path.size();
  }
};

// Throws NotAFourCell.
ForkSite fork_site(Diagram const& d, FourCell const& cell);

// Inserts a fork into the 4-cell: a middle element under cell.top and one
// element per staircase cell, each splitting its cell in two. New elements
// get ids size(), size()+1, ...: the middle element, then the left
// staircase top-down, then the right one. Throws NotSps or NotAFourCell.
Diagram insert_fork(Diagram const& d, FourCell const& cell);

// Same surgery without the SPS precondition check; for callers that already
// know the input is SPS.
Diagram insert_fork_unchecked(Diagram const& d, FourCell const& cell);

// A 4-cell named by its top and left corner in the diagram it was applied
// to.
struct CellRef {
  Elem top = 0;
  Elem left_corner = 0;

  auto operator<=>(CellRef const&) const = default;
};

struct ConstructionLog {
  std::size_t rows = 2;
  std::size_t cols = 2;
  std::vector<CellRef> forks;

  // "grid 3x4 fork 11/10 fork 7/6"
  std::string to_string() const;
  // Throws Parse.
  static ConstructionLog parse(std::string const& text);

  Diagram replay() const;

  auto operator<=>(ConstructionLog const&) const = default;
};

// Finds the 4-cell with the given top and left corner. Throws NotAFourCell.
FourCell resolve_cell(Diagram const& d, CellRef ref);

struct Generated {
  Diagram diagram;
  ConstructionLog log;
  std::string key;  // canonical_form(diagram)
};

// Grids with m*n <= max_elements and fork sequences of length <= max_forks,
// breadth first, one representative per canonical key.
std::vector<Generated> enumerate_sr(std::size_t max_elements,
                                    std::size_t max_forks);

// Seeded random grid plus up to fork_count forks, all within element_cap.
Generated random_sr(std::uint64_t seed, std::size_t element_cap,
                    std::size_t fork_count);

}  // namespace latlab

#include "latlab/construct.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "latlab/error.hpp"

namespace latlab {

Diagram chain(std::size_t k) {
  if (k == 0) throw LatticeError(ErrorKind::BadSize, "chain needs k >= 1");
  std::vector<std::vector<Elem>> lower(k);
  std::vector<std::vector<Elem>> upper(k);
  for (Elem i = 0; i + 1 < k; ++i) {
    upper[i].push_back(i + 1);
    lower[i + 1].push_back(i);
  }
  return Diagram::from_orders(std::move(lower), std::move(upper));
}

Diagram grid(std::size_t m, std::size_t n) {
  if (m < 2 || n < 2) {
    throw LatticeError(ErrorKind::BadSize, "grid needs m, n >= 2");
  }
  auto id = [n](std::size_t i, std::size_t j) {
    return static_cast<Elem>(i * n + j);
  };
  std::vector<std::vector<Elem>> lower(m * n);
  std::vector<std::vector<Elem>> upper(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto& lo = lower[id(i, j)];
      if (j > 0) lo.push_back(id(i, j - 1));
      if (i > 0) lo.push_back(id(i - 1, j));
      auto& up = upper[id(i, j)];
      if (i + 1 < m) up.push_back(id(i + 1, j));
      if (j + 1 < n) up.push_back(id(i, j + 1));
    }
  }
  return Diagram::from_orders(std::move(lower), std::move(upper));
}

ForkSite fork_site(Diagram const& d, FourCell const& cell) {
  if (!is_four_cell(d, cell)) {
    throw LatticeError(ErrorKind::NotAFourCell,
                       "top " + std::to_string(cell.top) + " left " +
                           std::to_string(cell.left_corner));
  }
  Lattice const& lat = d.lattice();
  ForkSite site;
  site.cell = cell;

  site.left_path.push_back(cell);
  for (;;) {
    auto const& cur = site.left_path.back();
    auto const& lo = d.lower_order(cur.left_corner);
    auto pos = std::find(lo.begin(), lo.end(), cur.bottom) - lo.begin();
    if (pos == 0) break;
    Elem other = lo[pos - 1];
    FourCell next{cur.left_corner, other, cur.bottom, lat.meet(other, cur.bottom)};
    if (!is_four_cell(d, next)) break;
    site.left_path.push_back(next);
  }

  site.right_path.push_back(cell);
  for (;;) {
    auto const& cur = site.right_path.back();
    auto const& lo = d.lower_order(cur.right_corner);
    auto pos = static_cast<std::size_t>(
        std::find(lo.begin(), lo.end(), cur.bottom) - lo.begin());
    if (pos + 1 >= lo.size()) break;
    Elem other = lo[pos + 1];
    FourCell next{cur.right_corner, cur.bottom, other,
                  lat.meet(other, cur.bottom)};
    if (!is_four_cell(d, next)) break;
    site.right_path.push_back(next);
  }
  return site;
}

namespace {

void replace_in(std::vector<Elem>& v, Elem old_value, Elem new_value) {
  auto it = std::find(v.begin(), v.end(), old_value);
  *it = new_value;
}

}  // namespace

Diagram insert_fork_unchecked(Diagram const& d, FourCell const& cell) {
  ForkSite site = fork_site(d, cell);
  std::size_t const n0 = d.size();
  std::size_t const left_count = site.left_path.size();
  std::size_t const right_count = site.right_path.size();
  std::size_t const n1 = n0 + site.new_elements();

  std::vector<std::vector<Elem>> lower(n1);
  std::vector<std::vector<Elem>> upper(n1);
  for (Elem e = 0; e < n0; ++e) {
    lower[e] = d.lower_order(e);
    upper[e] = d.upper_order(e);
  }
  auto const middle = static_cast<Elem>(n0);
  auto left_elem = [&](std::size_t i) { return static_cast<Elem>(n0 + 1 + i); };
  auto right_elem = [&](std::size_t i) {
    return static_cast<Elem>(n0 + 1 + left_count + i);
  };

  auto& top_lower = lower[cell.top];
  top_lower.insert(
      std::find(top_lower.begin(), top_lower.end(), cell.left_corner) + 1,
      middle);
  upper[middle] = {cell.top};
  lower[middle] = {left_elem(0), right_elem(0)};

  for (std::size_t i = 0; i < left_count; ++i) {
    auto const& s = site.left_path[i];
    Elem x = left_elem(i);
    Elem above = i == 0 ? middle : left_elem(i - 1);
    upper[x] = {s.left_corner, above};
    if (i + 1 < left_count) {
      lower[x] = {left_elem(i + 1), s.bottom};
    } else {
      lower[x] = {s.bottom};
    }
    replace_in(upper[s.bottom], s.left_corner, x);
    replace_in(lower[s.left_corner], s.bottom, x);
  }
  for (std::size_t i = 0; i < right_count; ++i) {
    auto const& s = site.right_path[i];
    Elem y = right_elem(i);
    Elem above = i == 0 ? middle : right_elem(i - 1);
    upper[y] = {above, s.right_corner};
    if (i + 1 < right_count) {
      lower[y] = {s.bottom, right_elem(i + 1)};
    } else {
      lower[y] = {s.bottom};
    }
    replace_in(upper[s.bottom], s.right_corner, y);
    replace_in(lower[s.right_corner], s.bottom, y);
  }
  return Diagram::from_orders(std::move(lower), std::move(upper));
}

Diagram insert_fork(Diagram const& d, FourCell const& cell) {
  if (!is_four_cell(d, cell)) {
    throw LatticeError(ErrorKind::NotAFourCell,
                       "top " + std::to_string(cell.top) + " left " +
                           std::to_string(cell.left_corner));
  }
  if (!is_sps(d)) {
    throw LatticeError(ErrorKind::NotSps, "fork insertion needs an SPS lattice");
  }
  return insert_fork_unchecked(d, cell);
}

FourCell resolve_cell(Diagram const& d, CellRef ref) {
  if (ref.top < d.size()) {
    for (auto const& c : four_cells(d)) {
      if (c.top == ref.top && c.left_corner == ref.left_corner) return c;
    }
  }
  throw LatticeError(ErrorKind::NotAFourCell,
                     "no 4-cell with top " + std::to_string(ref.top) +
                         " and left corner " + std::to_string(ref.left_corner));
}

std::string ConstructionLog::to_string() const {
  std::ostringstream out;
  out << "grid " << rows << "x" << cols;
  for (auto const& f : forks) out << " fork " << f.top << "/" << f.left_corner;
  return out.str();
}

ConstructionLog ConstructionLog::parse(std::string const& text) {
  std::istringstream in(text);
  std::string word;
  ConstructionLog log;
  char sep = 0;
  if (!(in >> word) || word != "grid" || !(in >> log.rows >> sep >> log.cols) ||
      sep != 'x') {
    throw LatticeError(ErrorKind::Parse, "expected 'grid MxN' in: " + text);
  }
  while (in >> word) {
    CellRef ref;
    if (word != "fork" || !(in >> ref.top >> sep >> ref.left_corner) ||
        sep != '/') {
      throw LatticeError(ErrorKind::Parse, "expected 'fork T/L' in: " + text);
    }
    log.forks.push_back(ref);
  }
  return log;
}

Diagram ConstructionLog::replay() const {
  Diagram d = grid(rows, cols);
  for (auto const& ref : forks) d = insert_fork(d, resolve_cell(d, ref));
  return d;
}

std::vector<Generated> enumerate_sr(std::size_t max_elements,
                                    std::size_t max_forks) {
  std::vector<Generated> out;
  std::set<std::string> seen;
  std::vector<std::size_t> level;
  for (std::size_t m = 2; 2 * m <= max_elements; ++m) {
    for (std::size_t n = 2; m * n <= max_elements; ++n) {
      Generated g{grid(m, n), ConstructionLog{m, n, {}}, {}};
      g.key = canonical_form(g.diagram);
      if (!seen.insert(g.key).second) continue;
      level.push_back(out.size());
      out.push_back(std::move(g));
    }
  }
  for (std::size_t depth = 0; depth < max_forks; ++depth) {
    std::vector<std::size_t> next_level;
    for (auto idx : level) {
      // copy: `out` grows below
      Diagram base = out[idx].diagram;
      ConstructionLog base_log = out[idx].log;
      for (auto const& cell : four_cells(base)) {
        if (base.size() + fork_site(base, cell).new_elements() > max_elements) {
          continue;
        }
        Generated g{insert_fork_unchecked(base, cell), base_log, {}};
        g.log.forks.push_back({cell.top, cell.left_corner});
        g.key = canonical_form(g.diagram);
        if (!seen.insert(g.key).second) continue;
        next_level.push_back(out.size());
        out.push_back(std::move(g));
      }
    }
    level = std::move(next_level);
  }
  return out;
}

Generated random_sr(std::uint64_t seed, std::size_t element_cap,
                    std::size_t fork_count) {
  if (element_cap < 4) {
    throw LatticeError(ErrorKind::BadSize, "element cap below 4");
  }
  std::mt19937_64 rng(seed);
  auto pick = [&rng](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  // leave about half the budget for forks when forks are requested
  std::size_t const grid_budget =
      std::max<std::size_t>(4, fork_count == 0 ? element_cap : element_cap / 2);
  std::size_t const m = pick(2, std::max<std::size_t>(2, grid_budget / 2));
  std::size_t const n = pick(2, std::max<std::size_t>(2, grid_budget / m));

  Generated g{grid(m, n), ConstructionLog{m, n, {}}, {}};
  for (std::size_t k = 0; k < fork_count; ++k) {
    std::vector<FourCell> fitting;
    for (auto const& cell : four_cells(g.diagram)) {
      if (g.diagram.size() + fork_site(g.diagram, cell).new_elements() <=
          element_cap) {
        fitting.push_back(cell);
      }
    }
    if (fitting.empty()) break;
    auto const& cell = fitting[pick(0, fitting.size() - 1)];
    g.log.forks.push_back({cell.top, cell.left_corner});
    g.diagram = insert_fork_unchecked(g.diagram, cell);
  }
  g.key = canonical_form(g.diagram);
  return g;
}

}  // namespace latlab

#include "latlab/diagram.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <set>
#include <unordered_map>

#include "latlab/error.hpp"

namespace latlab {

std::string to_string(PrimeInterval p) {
  return "[" + std::to_string(p.zero) + "," + std::to_string(p.one) + "]";
}

Diagram Diagram::from_orders(std::vector<std::vector<Elem>> lower,
                             std::vector<std::vector<Elem>> upper) {
  std::size_t const n = lower.size();
  if (upper.size() != n) {
    throw LatticeError(ErrorKind::InconsistentOrders,
                       "lower and upper order tables differ in length");
  }
  std::set<CoverPair> from_lower;
  std::set<CoverPair> from_upper;
  for (Elem b = 0; b < n; ++b) {
    for (auto a : lower[b]) {
      if (a >= n) {
        throw LatticeError(ErrorKind::InvalidElement,
                           "lower cover " + std::to_string(a) + " of " +
                               std::to_string(b) + " out of range");
      }
      if (!from_lower.insert({a, b}).second) {
        throw LatticeError(ErrorKind::DuplicateElement,
                           std::to_string(a) + " listed twice below " +
                               std::to_string(b));
      }
    }
  }
  for (Elem a = 0; a < n; ++a) {
    for (auto b : upper[a]) {
      if (b >= n) {
        throw LatticeError(ErrorKind::InvalidElement,
                           "upper cover " + std::to_string(b) + " of " +
                               std::to_string(a) + " out of range");
      }
      if (!from_upper.insert({a, b}).second) {
        throw LatticeError(ErrorKind::DuplicateElement,
                           std::to_string(b) + " listed twice above " +
                               std::to_string(a));
      }
    }
  }
  if (from_lower != from_upper) {
    throw LatticeError(ErrorKind::InconsistentOrders,
                       "lower and upper cover lists disagree");
  }
  std::vector<CoverPair> pairs(from_lower.begin(), from_lower.end());
  Poset poset = Poset::close_order(n, pairs);
  if (poset.cover_pairs().size() != pairs.size()) {
    throw LatticeError(ErrorKind::InconsistentOrders,
                       "listed covers are not a transitive reduction");
  }

  Diagram d;
  d.lattice_ = Lattice::from_poset(std::move(poset));
  d.lower_ = std::move(lower);
  d.upper_ = std::move(upper);
  d.edges_.reserve(pairs.size());
  d.edge_lookup_.assign(n * n, -1);
  for (auto [a, b] : pairs) {
    d.edge_lookup_[a * n + b] = static_cast<std::int32_t>(d.edges_.size());
    d.edges_.push_back({a, b});
  }
  d.height_.assign(n, 0);
  for (auto e : d.poset().linear_extension()) {
    for (auto u : d.upper_[e]) {
      d.height_[u] = std::max(d.height_[u], d.height_[e] + 1);
    }
  }
  return d;
}

std::optional<std::size_t> Diagram::edge_index(PrimeInterval p) const {
  std::size_t const n = size();
  if (p.zero >= n || p.one >= n) return std::nullopt;
  auto idx = edge_lookup_[p.zero * n + p.one];
  if (idx < 0) return std::nullopt;
  return static_cast<std::size_t>(idx);
}

Diagram Diagram::mirror() const {
  auto lower = lower_;
  auto upper = upper_;
  for (auto& l : lower) std::reverse(l.begin(), l.end());
  for (auto& u : upper) std::reverse(u.begin(), u.end());
  return from_orders(std::move(lower), std::move(upper));
}

Diagram Diagram::relabeled(std::span<Elem const> perm) const {
  std::size_t const n = size();
  std::vector<std::vector<Elem>> lower(n);
  std::vector<std::vector<Elem>> upper(n);
  for (Elem e = 0; e < n; ++e) {
    for (auto x : lower_[e]) lower[perm[e]].push_back(perm[x]);
    for (auto x : upper_[e]) upper[perm[e]].push_back(perm[x]);
  }
  return from_orders(std::move(lower), std::move(upper));
}

// ---------------------------------------------------------------------------
// planarity

namespace {

using Point = std::pair<std::int64_t, std::int64_t>;

// Reverse postorder of a DFS from bottom along upper covers.
std::vector<std::size_t> dfs_positions(Diagram const& d, bool right_first) {
  std::size_t const n = d.size();
  std::vector<bool> seen(n, false);
  std::vector<Elem> post;
  post.reserve(n);
  // (element, next child slot)
  std::vector<std::pair<Elem, std::size_t>> stack;
  Elem root = d.lattice().bottom();
  stack.push_back({root, 0});
  seen[root] = true;
  while (!stack.empty()) {
    auto& [e, slot] = stack.back();
    auto const& ups = d.upper_order(e);
    if (slot == ups.size()) {
      post.push_back(e);
      stack.pop_back();
      continue;
    }
    Elem next = right_first ? ups[ups.size() - 1 - slot] : ups[slot];
    ++slot;
    if (!seen[next]) {
      seen[next] = true;
      stack.push_back({next, 0});
    }
  }
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < post.size(); ++i) {
    pos[post[post.size() - 1 - i]] = i;
  }
  return pos;
}

std::int64_t orient(Point a, Point b, Point c) {
  auto v = (b.first - a.first) * (c.second - a.second) -
           (b.second - a.second) * (c.first - a.first);
  return (v > 0) - (v < 0);
}

bool on_segment(Point a, Point b, Point p) {
  return orient(a, b, p) == 0 &&
         std::min(a.first, b.first) <= p.first &&
         p.first <= std::max(a.first, b.first) &&
         std::min(a.second, b.second) <= p.second &&
         p.second <= std::max(a.second, b.second);
}

bool segments_cross(Point a, Point b, Point c, Point d) {
  auto o1 = orient(a, b, c);
  auto o2 = orient(a, b, d);
  auto o3 = orient(c, d, a);
  auto o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) {
    return true;
  }
  return on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) ||
         on_segment(c, d, b);
}

std::optional<std::pair<PrimeInterval, PrimeInterval>> find_crossing(
    Diagram const& d, std::vector<Point> const& pt) {
  auto const& edges = d.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto e = edges[i];
    Point a = pt[e.zero];
    Point b = pt[e.one];
    // a vertex lying on a non-incident edge
    for (Elem v = 0; v < d.size(); ++v) {
      if (v == e.zero || v == e.one || !on_segment(a, b, pt[v])) continue;
      PrimeInterval other = d.upper_order(v).empty()
                                ? PrimeInterval{d.lower_order(v).front(), v}
                                : PrimeInterval{v, d.upper_order(v).front()};
      return std::make_pair(e, other);
    }
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      auto f = edges[j];
      Point c = pt[f.zero];
      Point dd = pt[f.one];
      bool shared = e.zero == f.zero || e.zero == f.one || e.one == f.zero ||
                    e.one == f.one;
      if (shared) {
        // only a collinear overlap counts
        Elem common = (e.zero == f.zero || e.zero == f.one) ? e.zero : e.one;
        Point base = pt[common];
        Point p1 = common == e.zero ? b : a;
        Point p2 = common == f.zero ? dd : c;
        if (orient(base, p1, p2) == 0 &&
            (p1.first - base.first) * (p2.first - base.first) +
                    (p1.second - base.second) * (p2.second - base.second) >
                0) {
          return std::make_pair(e, f);
        }
        continue;
      }
      if (segments_cross(a, b, c, dd)) return std::make_pair(e, f);
    }
  }
  return std::nullopt;
}

}  // namespace

PlanarityResult validate_planar(Diagram const& d) {
  std::size_t const n = d.size();
  auto left_first = dfs_positions(d, /*right_first=*/true);
  auto right_first = dfs_positions(d, /*right_first=*/false);

  auto check_siblings = [&](std::vector<Elem> const& seq, Elem owner,
                            char const* which) {
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
      Elem x = seq[i];
      Elem y = seq[i + 1];
      if (!(left_first[x] < left_first[y] && right_first[x] > right_first[y])) {
        throw LatticeError(ErrorKind::InconsistentOrders,
                           std::string(which) + " covers of " +
                               std::to_string(owner) + ": " +
                               std::to_string(x) + " cannot lie left of " +
                               std::to_string(y));
      }
    }
  };
  for (Elem e = 0; e < n; ++e) {
    check_siblings(d.upper_order(e), e, "upper");
    check_siblings(d.lower_order(e), e, "lower");
  }

  std::vector<Point> layered(n);
  std::vector<Point> dominance(n);
  for (Elem e = 0; e < n; ++e) {
    auto x = static_cast<std::int64_t>(left_first[e]) -
             static_cast<std::int64_t>(right_first[e]);
    layered[e] = {x, static_cast<std::int64_t>(d.height(e))};
    dominance[e] = {x, static_cast<std::int64_t>(left_first[e] +
                                                 right_first[e])};
  }

  PlanarityResult result;
  auto to_drawing = [&](std::vector<Point> const& pts) {
    Drawing dr;
    for (auto [x, y] : pts) {
      dr.x.push_back(static_cast<double>(x));
      dr.y.push_back(static_cast<double>(y));
    }
    return dr;
  };
  if (!find_crossing(d, layered)) {
    result.valid = true;
    result.drawing = to_drawing(layered);
    return result;
  }
  result.drawing = to_drawing(dominance);
  result.crossing = find_crossing(d, dominance);
  result.valid = !result.crossing.has_value();
  return result;
}

// ---------------------------------------------------------------------------
// slimness, semimodularity, rectangularity

SlimResult is_slim_naive(Lattice const& lat) {
  std::size_t const n = lat.size();
  for (Elem u = 0; u < n; ++u) {
    for (Elem v = u + 1; v < n; ++v) {
      if (lat.poset().comparable(u, v)) continue;
      Elem m = lat.meet(u, v);
      Elem j = lat.join(u, v);
      for (Elem w = v + 1; w < n; ++w) {
        if (lat.poset().comparable(u, w) || lat.poset().comparable(v, w)) {
          continue;
        }
        if (lat.meet(u, w) == m && lat.meet(v, w) == m && lat.join(u, w) == j &&
            lat.join(v, w) == j) {
          return {false, std::array<Elem, 3>{u, v, w}};
        }
      }
    }
  }
  return {};
}

SlimResult is_slim(Diagram const& d) {
  Lattice const& lat = d.lattice();
  std::size_t const n = lat.size();
  // incomparable pairs bucketed by (meet, join); an M3 is a triangle inside
  // one bucket
  std::unordered_map<std::uint64_t, std::vector<std::pair<Elem, Elem>>> buckets;
  for (Elem u = 0; u < n; ++u) {
    for (Elem v = u + 1; v < n; ++v) {
      if (lat.poset().comparable(u, v)) continue;
      std::uint64_t key =
          static_cast<std::uint64_t>(lat.meet(u, v)) * n + lat.join(u, v);
      buckets[key].emplace_back(u, v);
    }
  }
  std::optional<std::array<Elem, 3>> best;
  for (auto const& [key, pairs] : buckets) {
    if (pairs.size() < 3) continue;
    std::unordered_map<Elem, std::set<Elem>> adj;
    for (auto [u, v] : pairs) {
      adj[u].insert(v);
      adj[v].insert(u);
    }
    for (auto [u, v] : pairs) {
      for (auto w : adj[u]) {
        if (w > v && adj[v].count(w) != 0) {
          std::array<Elem, 3> t{u, v, w};
          if (!best || t < *best) best = t;
        }
      }
    }
  }
  if (best) return {false, best};
  return {};
}

SemimodularResult is_semimodular(Diagram const& d) {
  Lattice const& lat = d.lattice();
  std::size_t const n = lat.size();
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      if (lat.covers(lat.meet(a, b), a) && !lat.covers(b, lat.join(a, b))) {
        return {false, std::make_pair(a, b)};
      }
    }
  }
  return {};
}

std::vector<Elem> left_boundary(Diagram const& d) {
  std::vector<Elem> chain{d.lattice().bottom()};
  while (!d.upper_order(chain.back()).empty()) {
    chain.push_back(d.upper_order(chain.back()).front());
  }
  return chain;
}

std::vector<Elem> right_boundary(Diagram const& d) {
  std::vector<Elem> chain{d.lattice().bottom()};
  while (!d.upper_order(chain.back()).empty()) {
    chain.push_back(d.upper_order(chain.back()).back());
  }
  return chain;
}

bool is_doubly_irreducible(Diagram const& d, Elem e) {
  return d.lower_order(e).size() == 1 && d.upper_order(e).size() == 1;
}

RectangularResult is_rectangular(Diagram const& d) {
  if (auto sm = is_semimodular(d); !sm.semimodular) {
    throw LatticeError(ErrorKind::NotSemimodular,
                       "witness (" + std::to_string(sm.witness->first) + "," +
                           std::to_string(sm.witness->second) + ")");
  }
  if (!validate_planar(d).valid) {
    throw LatticeError(ErrorKind::NotPlanar, "drawing has crossing edges");
  }
  auto single_doubly = [&](std::vector<Elem> const& chain) {
    std::optional<Elem> found;
    for (auto e : chain) {
      if (!is_doubly_irreducible(d, e)) continue;
      if (found) return std::optional<Elem>{};
      found = e;
    }
    return found;
  };
  RectangularResult r;
  auto cl = single_doubly(left_boundary(d));
  auto cr = single_doubly(right_boundary(d));
  if (!cl || !cr) return r;
  Lattice const& lat = d.lattice();
  if (lat.join(*cl, *cr) != lat.top() || lat.meet(*cl, *cr) != lat.bottom()) {
    return r;
  }
  r.rectangular = true;
  r.left_corner = cl;
  r.right_corner = cr;
  return r;
}

bool is_four_cell(Diagram const& d, FourCell const& c) {
  Lattice const& lat = d.lattice();
  std::size_t const n = d.size();
  if (c.top >= n || c.left_corner >= n || c.right_corner >= n ||
      c.bottom >= n || c.left_corner == c.right_corner) {
    return false;
  }
  if (!lat.covers(c.left_corner, c.top) || !lat.covers(c.right_corner, c.top) ||
      !lat.covers(c.bottom, c.left_corner) ||
      !lat.covers(c.bottom, c.right_corner)) {
    return false;
  }
  if (lat.meet(c.left_corner, c.right_corner) != c.bottom) return false;
  auto const& lo = d.lower_order(c.top);
  auto li = std::find(lo.begin(), lo.end(), c.left_corner);
  auto ri = std::find(lo.begin(), lo.end(), c.right_corner);
  if (li >= ri) return false;
  for (auto it = li + 1; it != ri; ++it) {
    if (lat.leq(c.bottom, *it)) return false;
  }
  return true;
}

std::vector<FourCell> four_cells(Diagram const& d) {
  Lattice const& lat = d.lattice();
  std::vector<FourCell> cells;
  for (Elem t = 0; t < d.size(); ++t) {
    auto const& lo = d.lower_order(t);
    for (std::size_t i = 0; i < lo.size(); ++i) {
      for (std::size_t j = i + 1; j < lo.size(); ++j) {
        FourCell c{t, lo[i], lo[j], lat.meet(lo[i], lo[j])};
        if (is_four_cell(d, c)) cells.push_back(c);
      }
    }
  }
  std::sort(cells.begin(), cells.end(), [](auto const& x, auto const& y) {
    return std::tie(x.top, x.left_corner) < std::tie(y.top, y.left_corner);
  });
  return cells;
}

bool is_sps(Diagram const& d) {
  if (!is_semimodular(d).semimodular || !is_slim(d).slim) return false;
  try {
    return validate_planar(d).valid;
  } catch (LatticeError const& e) {
    if (e.kind() == ErrorKind::InconsistentOrders) return false;
    throw;
  }
}

bool is_sr(Diagram const& d) {
  return is_sps(d) && is_rectangular(d).rectangular;
}

std::vector<Elem> wide_elements(Diagram const& d) {
  std::vector<Elem> out;
  for (Elem e = 0; e < d.size(); ++e) {
    if (d.lower_order(e).size() >= 3) out.push_back(e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// canonical form

namespace {

void put16(std::string& out, std::size_t v) {
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>(v & 0xff));
}

// Breadth-first numbering from bottom, upper covers taken left to right. The
// ordered cover lists fix every choice, so the numbering is canonical for the
// drawing.
std::string ordered_key(Diagram const& d, bool reflect) {
  std::size_t const n = d.size();
  constexpr Elem kUnset = ~Elem{0};
  std::vector<Elem> label(n, kUnset);
  std::vector<Elem> order;
  order.reserve(n);
  std::deque<Elem> queue{d.lattice().bottom()};
  label[d.lattice().bottom()] = 0;
  order.push_back(d.lattice().bottom());
  while (!queue.empty()) {
    Elem e = queue.front();
    queue.pop_front();
    auto ups = d.upper_order(e);
    if (reflect) std::reverse(ups.begin(), ups.end());
    for (auto u : ups) {
      if (label[u] != kUnset) continue;
      label[u] = static_cast<Elem>(order.size());
      order.push_back(u);
      queue.push_back(u);
    }
  }
  std::string key;
  put16(key, n);
  for (auto e : order) {
    auto ups = d.upper_order(e);
    auto lows = d.lower_order(e);
    if (reflect) {
      std::reverse(ups.begin(), ups.end());
      std::reverse(lows.begin(), lows.end());
    }
    put16(key, ups.size());
    for (auto u : ups) put16(key, label[u]);
    put16(key, lows.size());
    for (auto l : lows) put16(key, label[l]);
  }
  return key;
}

}  // namespace

std::string canonical_form(Diagram const& d) {
  return std::min(ordered_key(d, false), ordered_key(d, true));
}

}  // namespace latlab

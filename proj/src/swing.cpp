#include "latlab/swing.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "latlab/error.hpp"

namespace latlab {

char const* to_string(StepKind kind) {
  switch (kind) {
    case StepKind::UpPerspective: return "up";
    case StepKind::DownPerspective: return "down";
    case StepKind::SwingInternal: return "swing-in";
    case StepKind::SwingExternal: return "swing-ex";
  }
  return "?";
}

bool up_perspective(Diagram const& d, PrimeInterval p, PrimeInterval r) {
  Lattice const& lat = d.lattice();
  return lat.join(p.one, r.zero) == r.one && lat.meet(p.one, r.zero) == p.zero;
}

bool down_perspective(Diagram const& d, PrimeInterval p, PrimeInterval q) {
  Lattice const& lat = d.lattice();
  return lat.meet(p.zero, q.one) == q.zero && lat.join(p.zero, q.one) == p.one;
}

SwingKind swing(Diagram const& d, PrimeInterval p, PrimeInterval q,
                SwingRule rule) {
  if (p == q || p.one != q.one) return SwingKind::None;
  auto const& lo = d.lower_order(p.one);
  if (lo.size() < 3) return SwingKind::None;
  auto boundary = [&](Elem x) { return x == lo.front() || x == lo.back(); };
  switch (rule) {
    case SwingRule::Standard:
      if (boundary(q.zero)) return SwingKind::None;
      return boundary(p.zero) ? SwingKind::External : SwingKind::Internal;
    case SwingRule::SwapEndpoints:
      if (boundary(p.zero)) return SwingKind::None;
      return boundary(q.zero) ? SwingKind::External : SwingKind::Internal;
    case SwingRule::SwapClassification:
      if (boundary(q.zero)) return SwingKind::None;
      return boundary(p.zero) ? SwingKind::Internal : SwingKind::External;
    case SwingRule::DropInteriorCondition:
      return boundary(p.zero) ? SwingKind::External : SwingKind::Internal;
  }
  return SwingKind::None;
}

// ---------------------------------------------------------------------------
// engine

SwingEngine::SwingEngine(Diagram const& d, SwingRule rule)
    : d_(&d), edges_(d.edges()), m_(edges_.size()) {
  up_.assign(m_ * m_, 0);
  down_.assign(m_ * m_, 0);
  swing_.assign(m_ * m_, SwingKind::None);
  for (std::size_t i = 0; i < m_; ++i) {
    for (std::size_t j = 0; j < m_; ++j) {
      up_[i * m_ + j] = up_perspective(d, edges_[i], edges_[j]);
      down_[i * m_ + j] = down_perspective(d, edges_[i], edges_[j]);
      swing_[i * m_ + j] = latlab::swing(d, edges_[i], edges_[j], rule);
    }
  }
  std::vector<std::size_t> by_key(m_);
  for (std::size_t i = 0; i < m_; ++i) by_key[i] = i;
  std::sort(by_key.begin(), by_key.end(), [&](std::size_t a, std::size_t b) {
    auto ka = std::make_tuple(d.height(edges_[a].one), edges_[a].one,
                              edges_[a].zero);
    auto kb = std::make_tuple(d.height(edges_[b].one), edges_[b].one,
                              edges_[b].zero);
    return ka < kb;
  });
  next_.assign(m_, {});
  start_.assign(m_, {});
  for (std::size_t i = 0; i < m_; ++i) {
    for (auto j : by_key) {
      if (up(i, j)) start_[i].push_back(j);
      if (i != j && (down(i, j) || swing(i, j) != SwingKind::None)) {
        next_[i].push_back(j);
      }
    }
  }
  peaks_ = peak_sublattices(d);
}

std::vector<std::optional<std::vector<SwingStep>>> SwingEngine::witnesses_from(
    std::size_t p) const {
  constexpr std::size_t kNone = ~std::size_t{0};
  std::vector<std::size_t> parent(m_, kNone);
  std::vector<bool> seen(m_, false);
  std::deque<std::size_t> queue;
  for (auto r : start_[p]) {
    seen[r] = true;
    queue.push_back(r);
  }
  while (!queue.empty()) {
    auto i = queue.front();
    queue.pop_front();
    for (auto j : next_[i]) {
      if (seen[j]) continue;
      seen[j] = true;
      parent[j] = i;
      queue.push_back(j);
    }
  }
  auto step_kind = [&](std::size_t i, std::size_t j) {
    if (down(i, j)) return StepKind::DownPerspective;
    return swing(i, j) == SwingKind::External ? StepKind::SwingExternal
                                              : StepKind::SwingInternal;
  };
  std::vector<std::optional<std::vector<SwingStep>>> out(m_);
  for (std::size_t q = 0; q < m_; ++q) {
    if (q == p) {
      out[q] = std::vector<SwingStep>{
          {StepKind::UpPerspective, edges_[p], edges_[p]}};
      continue;
    }
    if (!seen[q]) continue;
    std::vector<std::size_t> path{q};
    while (parent[path.back()] != kNone) path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());
    std::vector<SwingStep> steps;
    steps.push_back({StepKind::UpPerspective, edges_[p], edges_[path.front()]});
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      steps.push_back({step_kind(path[k], path[k + 1]), edges_[path[k]],
                       edges_[path[k + 1]]});
    }
    out[q] = std::move(steps);
  }
  return out;
}

std::optional<std::vector<SwingStep>> SwingEngine::reachable(
    std::size_t p, std::size_t q) const {
  return std::move(witnesses_from(p)[q]);
}

bool SwingEngine::collapses(std::size_t p, std::size_t q) const {
  return reachable(p, q).has_value();
}

bool is_descending(Diagram const& d, std::vector<SwingStep> const& w,
                   SwingRule rule) {
  if (w.empty() || w.front().kind != StepKind::UpPerspective) return false;
  if (!up_perspective(d, w.front().from, w.front().to)) return false;
  std::set<PrimeInterval> seen{w.front().to};
  for (std::size_t k = 1; k < w.size(); ++k) {
    auto const& s = w[k];
    if (s.from != w[k - 1].to) return false;
    if (!seen.insert(s.to).second) return false;
    if (!d.lattice().leq(s.to.one, s.from.one)) return false;
    switch (s.kind) {
      case StepKind::UpPerspective:
        return false;
      case StepKind::DownPerspective:
        if (!down_perspective(d, s.from, s.to)) return false;
        break;
      case StepKind::SwingInternal:
      case StepKind::SwingExternal:
        if (swing(d, s.from, s.to, rule) == SwingKind::None) return false;
        break;
    }
  }
  return true;
}

void audit_descent(Diagram const& d, std::vector<SwingStep> const& w) {
  if (!is_descending(d, w)) {
    throw LatticeError(ErrorKind::InternalFlaw,
                       "witness violates descent or distinctness: " +
                           format_witness(w));
  }
}

std::optional<std::vector<SwingStep>> swing_reachable(Diagram const& d,
                                                      PrimeInterval p,
                                                      PrimeInterval q) {
  auto pi = d.edge_index(p);
  auto qi = d.edge_index(q);
  if (!pi || !qi) {
    throw LatticeError(ErrorKind::NotPrime,
                       to_string(pi ? q : p) + " is not an edge");
  }
  SwingEngine engine(d);
  auto w = engine.reachable(*pi, *qi);
  if (w) audit_descent(d, *w);
  return w;
}

bool swing_collapses(Diagram const& d, PrimeInterval p, PrimeInterval q) {
  return p == q || swing_reachable(d, p, q).has_value();
}

std::string format_witness(std::vector<SwingStep> const& w) {
  std::ostringstream out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    auto const& s = w[k];
    if (k == 0) out << to_string(s.from);
    switch (s.kind) {
      case StepKind::UpPerspective: out << " ↗ "; break;
      case StepKind::DownPerspective: out << " ↘ "; break;
      case StepKind::SwingInternal: out << " ↷in "; break;
      case StepKind::SwingExternal: out << " ↷ex "; break;
    }
    out << to_string(s.to);
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Equality and Covering Lemma witnesses

std::vector<std::optional<EqualityWitness>> equality_witnesses_from(
    SwingEngine const& engine, std::size_t p) {
  std::size_t const m = engine.edge_count();
  constexpr std::size_t kNone = ~std::size_t{0};
  // t -> the s it was reached from
  std::vector<std::size_t> via(m, kNone);
  for (auto s : engine.up_targets(p)) {
    if (via[s] == kNone) via[s] = s;
    for (std::size_t t = 0; t < m; ++t) {
      if (via[t] == kNone && engine.swing(s, t) == SwingKind::Internal) {
        via[t] = s;
      }
    }
  }
  std::vector<std::optional<EqualityWitness>> out(m);
  for (std::size_t q = 0; q < m; ++q) {
    for (std::size_t t = 0; t < m; ++t) {
      if (via[t] != kNone && engine.down(t, q)) {
        out[q] = EqualityWitness{engine.edge(via[t]), engine.edge(t)};
        break;
      }
    }
  }
  return out;
}

std::optional<EqualityWitness> equality_witness(SwingEngine const& engine,
                                                PrimeInterval p,
                                                PrimeInterval q) {
  auto pi = engine.diagram().edge_index(p);
  auto qi = engine.diagram().edge_index(q);
  if (!pi || !qi) {
    throw LatticeError(ErrorKind::NotPrime,
                       to_string(pi ? q : p) + " is not an edge");
  }
  return equality_witnesses_from(engine, *pi)[*qi];
}

std::optional<EqualityWitness> equality_witness(Diagram const& d,
                                                PrimeInterval p,
                                                PrimeInterval q) {
  SwingEngine engine(d);
  return equality_witness(engine, p, q);
}

std::vector<std::optional<CoveringWitness>> covering_witnesses_from(
    SwingEngine const& engine, JiPoset const& ji, std::size_t p) {
  Diagram const& d = engine.diagram();
  std::size_t const m = engine.edge_count();
  constexpr std::size_t kNone = ~std::size_t{0};
  std::vector<std::size_t> r_of(m, kNone);  // s -> r
  for (auto r : engine.up_targets(p)) {
    if (r_of[r] == kNone) r_of[r] = r;
    for (std::size_t s = 0; s < m; ++s) {
      if (r_of[s] == kNone && engine.swing(r, s) == SwingKind::Internal) {
        r_of[s] = r;
      }
    }
  }
  std::vector<std::size_t> s_of(m, kNone);  // t -> s
  for (std::size_t s = 0; s < m; ++s) {
    if (r_of[s] == kNone) continue;
    for (std::size_t t = 0; t < m; ++t) {
      if (s_of[t] == kNone && engine.down(s, t)) s_of[t] = s;
    }
  }
  std::vector<std::size_t> t_of(m, kNone);  // u -> t
  for (std::size_t t = 0; t < m; ++t) {
    if (s_of[t] == kNone) continue;
    for (std::size_t u = 0; u < m; ++u) {
      if (t_of[u] == kNone && engine.swing(t, u) == SwingKind::External) {
        t_of[u] = t;
      }
    }
  }

  auto find_peak = [&](PrimeInterval t, PrimeInterval u,
                       std::size_t q) -> std::optional<PeakSublattice> {
    std::optional<PeakSublattice> fallback;
    for (auto const& peak : engine.peaks()) {
      if (peak.top != t.one) continue;
      bool side = peak.left_top == t.zero || peak.right_top == t.zero;
      if (side && peak.mid_top == u.zero) return peak;
      auto mid = *d.edge_index(peak.middle_edge());
      auto left = *d.edge_index(peak.left_edge());
      auto right = *d.edge_index(peak.right_edge());
      if (!fallback && ji.color_of[mid] == ji.color_of[q] &&
          (ji.color_of[left] == ji.color_of[p] ||
           ji.color_of[right] == ji.color_of[p])) {
        fallback = peak;
      }
    }
    return fallback;
  };

  std::vector<std::optional<CoveringWitness>> out(m);
  for (std::size_t q = 0; q < m; ++q) {
    if (ji.color_of[q] == ji.color_of[p]) continue;
    for (std::size_t u = 0; u < m; ++u) {
      if (t_of[u] == kNone || !engine.down(u, q)) continue;
      std::size_t t = t_of[u];
      std::size_t s = s_of[t];
      std::size_t r = r_of[s];
      auto peak = find_peak(engine.edge(t), engine.edge(u), q);
      if (!peak) continue;
      out[q] = CoveringWitness{engine.edge(r), engine.edge(s), engine.edge(t),
                               engine.edge(u), *peak};
      break;
    }
  }
  return out;
}

std::optional<CoveringWitness> covering_witness(SwingEngine const& engine,
                                                JiPoset const& ji,
                                                PrimeInterval p,
                                                PrimeInterval q) {
  auto pi = engine.diagram().edge_index(p);
  auto qi = engine.diagram().edge_index(q);
  if (!pi || !qi) {
    throw LatticeError(ErrorKind::NotPrime,
                       to_string(pi ? q : p) + " is not an edge");
  }
  return covering_witnesses_from(engine, ji, *pi)[*qi];
}

std::optional<CoveringWitness> covering_witness(Diagram const& d,
                                                PrimeInterval p,
                                                PrimeInterval q) {
  SwingEngine engine(d);
  auto ji = ji_con_poset(d);
  return covering_witness(engine, ji, p, q);
}

// ---------------------------------------------------------------------------
// peak sublattices

namespace {

// S7 in role order: bottom, left_mid, right_mid, left_top, mid_top,
// right_top, top.
BitMatrix const& s7_order() {
  static BitMatrix const order = [] {
    std::vector<CoverPair> covers{{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 4},
                                  {2, 5}, {3, 6}, {4, 6}, {5, 6}};
    return Poset::close_order(7, covers).order();
  }();
  return order;
}

}  // namespace

bool is_closed_sublattice(Lattice const& lat, std::span<Elem const> elems) {
  std::set<Elem> set(elems.begin(), elems.end());
  for (auto a : elems) {
    for (auto b : elems) {
      if (set.count(lat.join(a, b)) == 0 || set.count(lat.meet(a, b)) == 0) {
        return false;
      }
    }
  }
  return true;
}

bool is_peak_sublattice(Diagram const& d, PeakSublattice const& s) {
  Lattice const& lat = d.lattice();
  auto el = s.elements();
  for (auto e : el) {
    if (e >= lat.size()) return false;
  }
  std::set<Elem> distinct(el.begin(), el.end());
  if (distinct.size() != 7) return false;
  auto const& shape = s7_order();
  for (std::size_t i = 0; i < 7; ++i) {
    for (std::size_t j = 0; j < 7; ++j) {
      if (shape.test(i, j) != lat.leq(el[i], el[j])) return false;
    }
  }
  if (!lat.covers(s.left_top, s.top) || !lat.covers(s.mid_top, s.top) ||
      !lat.covers(s.right_top, s.top)) {
    return false;
  }
  return is_closed_sublattice(lat, el);
}

std::vector<PeakSublattice> peak_sublattices(Diagram const& d) {
  Lattice const& lat = d.lattice();
  std::vector<PeakSublattice> out;
  for (auto w : wide_elements(d)) {
    auto const& lo = d.lower_order(w);
    for (std::size_t i = 0; i < lo.size(); ++i) {
      for (std::size_t j = i + 1; j < lo.size(); ++j) {
        for (std::size_t k = j + 1; k < lo.size(); ++k) {
          PeakSublattice s{lat.meet(lo[i], lo[k]), lat.meet(lo[i], lo[j]),
                           lat.meet(lo[j], lo[k]), lo[i], lo[j], lo[k], w};
          if (is_peak_sublattice(d, s)) out.push_back(s);
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// V, W and 3-crown relations

std::vector<VRelation> v_relations(JiPoset const& ji) {
  std::vector<VRelation> out;
  for (Elem a = 0; a < ji.size(); ++a) {
    auto const& ups = ji.order.upper_covers(a);
    for (std::size_t i = 0; i < ups.size(); ++i) {
      for (std::size_t j = i + 1; j < ups.size(); ++j) {
        out.push_back({a, ups[i], ups[j]});
      }
    }
  }
  return out;
}

VRelation peak_triple(Diagram const& d, JiPoset const& ji,
                      PeakSublattice const& peak) {
  auto col = [&](PrimeInterval e) { return ji.color_of[*d.edge_index(e)]; };
  auto b = col(peak.left_edge());
  auto c = col(peak.right_edge());
  return {col(peak.middle_edge()), std::min(b, c), std::max(b, c)};
}

VLemmaReport v_lemma_check(Diagram const& d, JiPoset const& ji) {
  VLemmaReport report;
  auto vs = v_relations(ji);
  std::set<VRelation> vset(vs.begin(), vs.end());
  auto peaks = peak_sublattices(d);
  std::set<VRelation> peak_set;
  std::set<Elem> matched_tops;
  for (auto const& peak : peaks) {
    auto t = peak_triple(d, ji, peak);
    peak_set.insert(t);
    if (vset.count(t) == 0) {
      report.stray_peaks.push_back(peak);
    } else {
      matched_tops.insert(peak.top);
    }
    if (d.lower_order(peak.top).size() < 3) {
      report.non_wide_tops.push_back(peak.top);
    }
  }
  for (auto const& v : vs) {
    if (peak_set.count(v) == 0) report.unmatched_relations.push_back(v);
  }
  for (auto w : wide_elements(d)) {
    if (matched_tops.count(w) == 0) report.uncovered_wide.push_back(w);
  }
  return report;
}

namespace {

// Boundary chain of [lo, hi] following the leftmost (or rightmost) upper
// cover that stays inside the interval.
std::vector<Elem> interval_boundary(Diagram const& d, Elem lo, Elem hi,
                                    bool left) {
  Lattice const& lat = d.lattice();
  std::vector<Elem> chain{lo};
  while (chain.back() != hi) {
    auto const& ups = d.upper_order(chain.back());
    std::optional<Elem> next;
    if (left) {
      for (auto u : ups) {
        if (lat.leq(u, hi)) { next = u; break; }
      }
    } else {
      for (auto it = ups.rbegin(); it != ups.rend(); ++it) {
        if (lat.leq(*it, hi)) { next = *it; break; }
      }
    }
    chain.push_back(*next);
  }
  return chain;
}

// Edge index on the chain, or -1; edges below the corner are "lower".
struct SidePosition {
  bool on_chain = false;
  bool lower = false;
};

SidePosition locate(std::vector<Elem> const& chain, std::size_t corner,
                    PrimeInterval e) {
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    if (chain[i] == e.zero && chain[i + 1] == e.one) {
      return {true, i < corner};
    }
  }
  return {};
}

}  // namespace

bool faces(Diagram const& d, PrimeInterval a, PrimeInterval b) {
  if (a == b) return false;
  Lattice const& lat = d.lattice();
  Elem lo = lat.meet(a.zero, b.zero);
  Elem hi = lat.join(a.one, b.one);
  auto left = interval_boundary(d, lo, hi, true);
  auto right = interval_boundary(d, lo, hi, false);
  auto const x = validate_planar(d).drawing.x;
  // corners: the extreme points of the two sides
  std::size_t lc = 0;
  for (std::size_t i = 0; i < left.size(); ++i) {
    if (x[left[i]] < x[left[lc]]) lc = i;
  }
  std::size_t rc = 0;
  for (std::size_t i = 0; i < right.size(); ++i) {
    if (x[right[i]] > x[right[rc]]) rc = i;
  }
  auto opposite = [&](PrimeInterval l, PrimeInterval r) {
    auto pl = locate(left, lc, l);
    auto pr = locate(right, rc, r);
    return pl.on_chain && pr.on_chain && pl.lower != pr.lower;
  };
  return opposite(a, b) || opposite(b, a);
}

namespace {

std::vector<std::array<std::size_t, 3>> ordered_vs(JiPoset const& ji) {
  std::vector<std::array<std::size_t, 3>> out;
  for (auto const& v : v_relations(ji)) {
    out.push_back({v.a, v.b, v.c});
    out.push_back({v.a, v.c, v.b});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<WRelation> w_relations(Diagram const& d, JiPoset const& ji) {
  auto vs = ordered_vs(ji);
  auto peaks = peak_sublattices(d);
  auto col = [&](PrimeInterval e) { return ji.color_of[*d.edge_index(e)]; };
  // side edges of the peaks realising V(a, x, y), keyed by (a, colour)
  auto side_edges = [&](std::size_t a, std::size_t x, std::size_t y,
                        std::size_t wanted) {
    std::vector<PrimeInterval> out;
    VRelation key{a, std::min(x, y), std::max(x, y)};
    for (auto const& peak : peaks) {
      if (peak_triple(d, ji, peak) != key) continue;
      if (col(peak.left_edge()) == wanted) out.push_back(peak.left_edge());
      if (col(peak.right_edge()) == wanted) out.push_back(peak.right_edge());
    }
    return out;
  };
  std::vector<WRelation> out;
  for (auto const& v1 : vs) {
    for (auto const& v2 : vs) {
      if (v1[2] != v2[1] || v1[0] == v2[0]) continue;
      WRelation w;
      w.colors = {v1[0], v1[1], v1[2], v2[0], v2[1], v2[2]};
      auto c_edges = side_edges(v1[0], v1[1], v1[2], v1[2]);
      auto e_edges = side_edges(v2[0], v2[1], v2[2], v2[1]);
      auto f_edges = side_edges(v2[0], v2[1], v2[2], v2[2]);
      for (auto ce : c_edges) {
        for (auto ee : e_edges) w.version1 = w.version1 || faces(d, ce, ee);
        for (auto fe : f_edges) w.version2 = w.version2 || faces(d, ce, fe);
      }
      out.push_back(w);
    }
  }
  return out;
}

std::vector<std::array<std::size_t, 6>> three_crown_relations(
    JiPoset const& ji) {
  auto vs = ordered_vs(ji);
  std::set<std::array<std::size_t, 3>> vset(vs.begin(), vs.end());
  std::vector<std::array<std::size_t, 6>> out;
  for (auto const& [a, b, c] : vs) {
    for (auto const& [dd, c2, f] : vs) {
      if (c2 != c || dd == a) continue;
      for (std::size_t e = 0; e < ji.size(); ++e) {
        if (e == a || e == dd) continue;
        if (vset.count({e, b, f}) != 0) out.push_back({a, b, c, dd, e, f});
      }
    }
  }
  return out;
}

}  // namespace latlab

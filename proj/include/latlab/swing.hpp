#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "latlab/congruence.hpp"
#include "latlab/diagram.hpp"

namespace latlab {

enum class StepKind { UpPerspective, DownPerspective, SwingInternal, SwingExternal };

char const* to_string(StepKind kind);

struct SwingStep {
  StepKind kind = StepKind::UpPerspective;
  PrimeInterval from;
  PrimeInterval to;

  bool operator==(SwingStep const&) const = default;
};

enum class SwingKind { None, Internal, External };

// Swing definition in force. Everything except Standard is a deliberate
// fault, used to show that the test suite notices a wrong definition.
enum class SwingRule {
  Standard,
  // interior test applied to the source edge instead of the target edge
  SwapEndpoints,
  // internal and external labels exchanged
  SwapClassification,
  // any two edges under a wide top swing
  DropInteriorCondition,
};

// p ↗ r: 1_p ∨ 0_r = 1_r and 1_p ∧ 0_r = 0_p.
bool up_perspective(Diagram const& d, PrimeInterval p, PrimeInterval r);
// p ↘ q: 0_p ∧ 1_q = 0_q and 0_p ∨ 1_q = 1_p.
bool down_perspective(Diagram const& d, PrimeInterval p, PrimeInterval q);

SwingKind swing(Diagram const& d, PrimeInterval p, PrimeInterval q,
                SwingRule rule = SwingRule::Standard);

// S7 sublattice whose three top edges are covers of the host.
struct PeakSublattice {
  Elem bottom = 0;
  Elem left_mid = 0;
  Elem right_mid = 0;
  Elem left_top = 0;
  Elem mid_top = 0;
  Elem right_top = 0;
  Elem top = 0;

  std::array<Elem, 7> elements() const {
    return {bottom, left_mid, right_mid, left_top, mid_top, right_top, top};
  }
  PrimeInterval left_edge() const { return {left_top, top}; }
  PrimeInterval middle_edge() const { return {mid_top, top}; }
  PrimeInterval right_edge() const { return {right_top, top}; }

  auto operator<=>(PeakSublattice const&) const = default;
};

// Relation tables over the edges of one diagram plus breadth-first witness
// search. Immutable after construction.
class SwingEngine {
 public:
  explicit SwingEngine(Diagram const& d, SwingRule rule = SwingRule::Standard);

  Diagram const& diagram() const noexcept { return *d_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  PrimeInterval edge(std::size_t i) const { return edges_[i]; }

  bool up(std::size_t p, std::size_t r) const { return up_[p * m_ + r]; }
  bool down(std::size_t p, std::size_t q) const { return down_[p * m_ + q]; }
  SwingKind swing(std::size_t p, std::size_t q) const {
    return swing_[p * m_ + q];
  }

  // Witness r_0 = r, ..., r_n = q with p ↗ r and every later step a down
  // perspectivity or a swing; shortest first, deterministic. For q = p the
  // witness is the single identity hop p ↗ p.
  std::optional<std::vector<SwingStep>> reachable(std::size_t p,
                                                  std::size_t q) const;

  // One search from p; entry q is the witness for q or nullopt.
  std::vector<std::optional<std::vector<SwingStep>>> witnesses_from(
      std::size_t p) const;

  bool collapses(std::size_t p, std::size_t q) const;

  std::vector<std::size_t> const& up_targets(std::size_t p) const {
    return start_[p];
  }
  std::vector<PeakSublattice> const& peaks() const noexcept { return peaks_; }

 private:
  Diagram const* d_;
  std::vector<PrimeInterval> edges_;
  std::size_t m_;
  std::vector<char> up_;
  std::vector<char> down_;
  std::vector<SwingKind> swing_;
  // successors for the search, ordered by (height of 1, 1, 0)
  std::vector<std::vector<std::size_t>> next_;
  std::vector<std::vector<std::size_t>> start_;
  std::vector<PeakSublattice> peaks_;
};

// Throws InternalFlaw when a witness is not descending or repeats an edge.
void audit_descent(Diagram const& d, std::vector<SwingStep> const& witness);
bool is_descending(Diagram const& d, std::vector<SwingStep> const& witness,
                   SwingRule rule = SwingRule::Standard);

std::optional<std::vector<SwingStep>> swing_reachable(Diagram const& d,
                                                      PrimeInterval p,
                                                      PrimeInterval q);
bool swing_collapses(Diagram const& d, PrimeInterval p, PrimeInterval q);

std::string format_witness(std::vector<SwingStep> const& witness);

// p ↗ s, s internal-swing t (or s = t), t ↘ q.
struct EqualityWitness {
  PrimeInterval s;
  PrimeInterval t;
};

std::optional<EqualityWitness> equality_witness(SwingEngine const& engine,
                                                PrimeInterval p,
                                                PrimeInterval q);
std::optional<EqualityWitness> equality_witness(Diagram const& d,
                                                PrimeInterval p,
                                                PrimeInterval q);
// Entry q answers equality_witness(engine, p, q).
std::vector<std::optional<EqualityWitness>> equality_witnesses_from(
    SwingEngine const& engine, std::size_t p);

bool is_closed_sublattice(Lattice const& lattice,
                          std::span<Elem const> elements);
// Closure, S7 shape and the host-cover condition on the top edges.
bool is_peak_sublattice(Diagram const& d, PeakSublattice const& s);

// Sorted by top, then by the positions of the three top elements.
std::vector<PeakSublattice> peak_sublattices(Diagram const& d);

// p ↗ r, r internal-swing s, s ↘ t, t external-swing u, u ↘ q, where the
// first three steps may be identities.
struct CoveringWitness {
  PrimeInterval r;
  PrimeInterval s;
  PrimeInterval t;
  PrimeInterval u;
  PeakSublattice peak;
};

std::optional<CoveringWitness> covering_witness(SwingEngine const& engine,
                                                JiPoset const& ji,
                                                PrimeInterval p,
                                                PrimeInterval q);
std::optional<CoveringWitness> covering_witness(Diagram const& d,
                                                PrimeInterval p,
                                                PrimeInterval q);
// Entry q answers covering_witness(engine, ji, p, q).
std::vector<std::optional<CoveringWitness>> covering_witnesses_from(
    SwingEngine const& engine, JiPoset const& ji, std::size_t p);

// V(a, b, c): a ≺ b and a ≺ c in Ji(Con K), b ≠ c. Listed with b < c.
struct VRelation {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t c = 0;

  auto operator<=>(VRelation const&) const = default;
};

std::vector<VRelation> v_relations(JiPoset const& ji);

// Colours (middle, left, right) of a peak sublattice, as a V triple with the
// side colours sorted.
VRelation peak_triple(Diagram const& d, JiPoset const& ji,
                      PeakSublattice const& peak);

struct VLemmaReport {
  // V-relations without a matching peak sublattice
  std::vector<VRelation> unmatched_relations;
  // peak sublattices whose colours are not a V-relation
  std::vector<PeakSublattice> stray_peaks;
  // wide elements that are not the top of a V-relation's peak
  std::vector<Elem> uncovered_wide;
  // peak tops that are not wide
  std::vector<Elem> non_wide_tops;

  bool ok() const {
    return unmatched_relations.empty() && stray_peaks.empty() &&
           uncovered_wide.empty() && non_wide_tops.empty();
  }
};

VLemmaReport v_lemma_check(Diagram const& d, JiPoset const& ji);

// A and B are opposite sides of the interval they span: one lies on the left
// boundary, the other on the right boundary, and they touch different
// corners of it.
bool faces(Diagram const& d, PrimeInterval a, PrimeInterval b);

// V(a, b, c), V(d, e, f), c = e, a ≠ d.
struct WRelation {
  std::array<std::size_t, 6> colors{};
  bool version1 = false;  // some c-edge faces some e-edge
  bool version2 = false;  // some c-edge faces some f-edge

  auto operator<=>(WRelation const&) const = default;
};

std::vector<WRelation> w_relations(Diagram const& d, JiPoset const& ji);

// V(a, b, c), V(d, c, f), V(e, b, f) with a, d, e distinct; tuple
// (a, b, c, d, e, f).
std::vector<std::array<std::size_t, 6>> three_crown_relations(
    JiPoset const& ji);

}  // namespace latlab

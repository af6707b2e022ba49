#include "latlab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "latlab/error.hpp"

namespace latlab {

using nlohmann::json;

Poset r3_poset() {
  // a b c d e f x y z
  enum : Elem { a, b, c, d, e, f, x, y, z };
  std::vector<CoverPair> covers{
      {a, b}, {a, c}, {d, c}, {d, f}, {e, b}, {e, f},  // crown
      {x, a}, {x, f}, {y, e}, {y, c}, {z, b}, {z, d},  // pendants
  };
  return Poset::close_order(9, covers);
}

std::array<char const*, 9> const& r3_names() {
  static std::array<char const*, 9> const names{"a", "b", "c", "d", "e",
                                                "f", "x", "y", "z"};
  return names;
}

TwoCoverResult check_two_cover(JiPoset const& ji) {
  for (Elem c = 0; c < ji.size(); ++c) {
    auto const& ups = ji.order.upper_covers(c);
    if (ups.size() > 2) {
      return {false, c, std::vector<std::size_t>(ups.begin(), ups.end())};
    }
  }
  return {};
}

TwoCoverResult check_two_cover(Diagram const& d) {
  return check_two_cover(ji_con_poset(d));
}

ThreePThreeCResult check_3p3c(Poset const& ji_order, EmbeddingMode mode) {
  static Poset const r3 = r3_poset();
  auto emb = cover_preserving_embedding(r3, ji_order, mode);
  if (!emb) return {};
  return {false, std::move(emb)};
}

ThreePThreeCResult check_3p3c(Diagram const& d, EmbeddingMode mode) {
  return check_3p3c(ji_con_poset(d).order, mode);
}

// ---------------------------------------------------------------------------
// checks

char const* check_name(Check c) {
  switch (c) {
    case Check::Swing: return "swing";
    case Check::TwoCover: return "2cover";
    case Check::ThreePThreeC: return "3p3c";
    case Check::VLemma: return "vlemma";
    case Check::Equality: return "eq";
    case Check::Covering: return "cover";
    case Check::Fork: return "fork";
    case Check::Sr: return "sr";
  }
  return "?";
}

std::vector<Check> const& all_checks() {
  static std::vector<Check> const checks{
      Check::Swing,    Check::TwoCover, Check::ThreePThreeC, Check::VLemma,
      Check::Equality, Check::Covering, Check::Fork,         Check::Sr};
  return checks;
}

CheckSet parse_checks(std::string const& text) {
  if (text == "all") return kAllChecks;
  CheckSet set = 0;
  std::istringstream in(text);
  std::string name;
  while (std::getline(in, name, ',')) {
    auto const& checks = all_checks();
    auto it = std::find_if(checks.begin(), checks.end(),
                           [&](Check c) { return name == check_name(c); });
    if (it == checks.end()) {
      throw std::invalid_argument("unknown check '" + name + "'");
    }
    set |= static_cast<CheckSet>(*it);
  }
  return set;
}

std::string to_hex(std::string const& bytes) {
  static char const* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char ch : bytes) {
    out.push_back(digits[ch >> 4]);
    out.push_back(digits[ch & 0xf]);
  }
  return out;
}

bool VerificationReport::pass() const {
  return std::none_of(checks.begin(), checks.end(), [](auto const& c) {
    return c.status == Status::Fail;
  });
}

CheckOutcome const* VerificationReport::find(Check c) const {
  for (auto const& o : checks) {
    if (o.check == c) return &o;
  }
  return nullptr;
}

json VerificationReport::to_json() const {
  json j;
  j["key"] = key_hex;
  j["size"] = size;
  j["forks"] = forks;
  j["log"] = log;
  j["pass"] = pass();
  j["millis"] = millis;
  json checks_json = json::object();
  for (auto const& c : checks) {
    json cj = c.details;
    cj["status"] = c.status == Status::Pass   ? "pass"
                   : c.status == Status::Fail ? "fail"
                                              : "skipped";
    cj["millis"] = c.millis;
    checks_json[check_name(c.check)] = std::move(cj);
  }
  j["checks"] = std::move(checks_json);
  return j;
}

namespace {

json edge_json(PrimeInterval p) { return json::array({p.zero, p.one}); }

// Shared per-lattice state, computed on first use.
struct Context {
  Generated const& g;
  VerifyOptions const& options;
  std::optional<JiPoset> ji_;
  std::optional<SwingEngine> engine_;

  Diagram const& d() const { return g.diagram; }
  JiPoset const& ji() {
    if (!ji_) ji_ = ji_con_poset(d());
    return *ji_;
  }
  SwingEngine const& engine() {
    if (!engine_) engine_.emplace(d(), options.rule);
    return *engine_;
  }
  std::size_t color(std::size_t edge) { return ji().color_of[edge]; }
};

void run_swing(Context& ctx, CheckOutcome& out) {
  auto const& engine = ctx.engine();
  auto const& ji = ctx.ji();
  std::size_t const m = engine.edge_count();
  std::size_t pairs = 0;
  std::size_t disagreements = 0;
  std::size_t descent = 0;
  std::size_t witnesses = 0;
  for (std::size_t p = 0; p < m; ++p) {
    auto const& con = ji.colors[ji.color_of[p]];
    auto found = engine.witnesses_from(p);
    for (std::size_t q = 0; q < m; ++q) {
      ++pairs;
      bool by_swing = found[q].has_value();
      bool by_closure = con.collapses(engine.edge(q));
      if (by_swing != by_closure) {
        if (disagreements == 0) {
          out.details["first_disagreement"] = {
              {"p", edge_json(engine.edge(p))},
              {"q", edge_json(engine.edge(q))},
              {"swing", by_swing},
              {"closure", by_closure}};
        }
        ++disagreements;
      }
      if (by_swing) {
        ++witnesses;
        if (!is_descending(ctx.d(), *found[q], ctx.options.rule)) {
          if (descent == 0) {
            out.details["first_descent_violation"] = format_witness(*found[q]);
          }
          ++descent;
        }
      }
    }
  }
  out.details["pairs"] = pairs;
  out.details["witnesses"] = witnesses;
  out.details["disagreements"] = disagreements;
  out.details["descent_violations"] = descent;
  out.status = disagreements == 0 && descent == 0 ? Status::Pass : Status::Fail;
}

void run_two_cover(Context& ctx, CheckOutcome& out) {
  auto r = check_two_cover(ctx.ji());
  out.details["colors"] = ctx.ji().size();
  if (!r.pass) {
    out.details["color"] = *r.color;
    out.details["covers"] = r.covers;
  }
  out.status = r.pass ? Status::Pass : Status::Fail;
}

void run_3p3c(Context& ctx, CheckOutcome& out) {
  auto r = check_3p3c(ctx.ji().order);
  if (!r.pass) {
    json emb = json::object();
    for (std::size_t i = 0; i < 9; ++i) emb[r3_names()[i]] = (*r.embedding)[i];
    out.details["embedding"] = std::move(emb);
  }
  out.status = r.pass ? Status::Pass : Status::Fail;
}

void run_vlemma(Context& ctx, CheckOutcome& out) {
  auto r = v_lemma_check(ctx.d(), ctx.ji());
  out.details["v_relations"] = v_relations(ctx.ji()).size();
  out.details["peaks"] = peak_sublattices(ctx.d()).size();
  out.details["wide"] = wide_elements(ctx.d()).size();
  if (!r.ok()) {
    json unmatched = json::array();
    for (auto const& v : r.unmatched_relations) {
      unmatched.push_back({v.a, v.b, v.c});
    }
    json stray = json::array();
    for (auto const& p : r.stray_peaks) stray.push_back(p.elements());
    out.details["unmatched_relations"] = std::move(unmatched);
    out.details["stray_peaks"] = std::move(stray);
    out.details["uncovered_wide"] = r.uncovered_wide;
    out.details["non_wide_tops"] = r.non_wide_tops;
  }
  out.status = r.ok() ? Status::Pass : Status::Fail;
}

void run_equality(Context& ctx, CheckOutcome& out) {
  auto const& engine = ctx.engine();
  std::size_t const m = engine.edge_count();
  std::size_t mismatches = 0;
  std::size_t present = 0;
  for (std::size_t p = 0; p < m; ++p) {
    auto w = equality_witnesses_from(engine, p);
    for (std::size_t q = 0; q < m; ++q) {
      bool same = ctx.color(p) == ctx.color(q);
      present += w[q].has_value();
      if (w[q].has_value() != same) {
        if (mismatches == 0) {
          out.details["first_mismatch"] = {{"p", edge_json(engine.edge(p))},
                                           {"q", edge_json(engine.edge(q))},
                                           {"witness", w[q].has_value()},
                                           {"same_color", same}};
        }
        ++mismatches;
      }
    }
  }
  out.details["witnesses"] = present;
  out.details["mismatches"] = mismatches;
  out.status = mismatches == 0 ? Status::Pass : Status::Fail;
}

// Steps of a covering witness hold in the diagram and descend.
bool covering_witness_sound(Context& ctx, PrimeInterval p, PrimeInterval q,
                            CoveringWitness const& w) {
  Diagram const& d = ctx.d();
  auto rule = ctx.options.rule;
  Lattice const& lat = d.lattice();
  if (!up_perspective(d, p, w.r)) return false;
  if (w.r != w.s && swing(d, w.r, w.s, rule) != SwingKind::Internal) {
    return false;
  }
  if (!down_perspective(d, w.s, w.t)) return false;
  if (swing(d, w.t, w.u, rule) != SwingKind::External) return false;
  if (!down_perspective(d, w.u, q)) return false;
  return lat.leq(w.s.one, w.r.one) && lat.leq(w.t.one, w.s.one) &&
         lat.leq(w.u.one, w.t.one) && lat.leq(q.one, w.u.one);
}

void run_covering(Context& ctx, CheckOutcome& out) {
  auto const& engine = ctx.engine();
  auto const& ji = ctx.ji();
  Diagram const& d = ctx.d();
  std::size_t const m = engine.edge_count();
  std::size_t mismatches = 0;
  std::size_t bad_peaks = 0;
  std::size_t unsound = 0;
  std::size_t present = 0;
  for (std::size_t p = 0; p < m; ++p) {
    auto ws = covering_witnesses_from(engine, ji, p);
    for (std::size_t q = 0; q < m; ++q) {
      bool covered = ji.covers(ctx.color(q), ctx.color(p));
      auto const& w = ws[q];
      present += w.has_value();
      if (w.has_value() != covered) {
        if (mismatches == 0) {
          out.details["first_mismatch"] = {{"p", edge_json(engine.edge(p))},
                                           {"q", edge_json(engine.edge(q))},
                                           {"witness", w.has_value()},
                                           {"ji_cover", covered}};
        }
        ++mismatches;
      }
      if (!w) continue;
      auto col = [&](PrimeInterval e) { return ctx.color(*d.edge_index(e)); };
      bool peak_ok = is_peak_sublattice(d, w->peak) &&
                     col(w->u) == ctx.color(q) && col(w->t) == ctx.color(p) &&
                     col(w->peak.middle_edge()) == ctx.color(q) &&
                     (col(w->peak.left_edge()) == ctx.color(p) ||
                      col(w->peak.right_edge()) == ctx.color(p));
      bad_peaks += !peak_ok;
      unsound += !covering_witness_sound(ctx, engine.edge(p), engine.edge(q), *w);
    }
  }
  out.details["witnesses"] = present;
  out.details["mismatches"] = mismatches;
  out.details["bad_peaks"] = bad_peaks;
  out.details["unsound_witnesses"] = unsound;
  out.status = mismatches == 0 && bad_peaks == 0 && unsound == 0
                   ? Status::Pass
                   : Status::Fail;
}

void run_fork(Context& ctx, CheckOutcome& out) {
  auto const& log = ctx.g.log;
  if (log.forks.empty()) {
    out.status = Status::Skipped;
    return;
  }
  ConstructionLog parent_log = log;
  parent_log.forks.pop_back();
  Diagram parent = parent_log.replay();
  FourCell cell = resolve_cell(parent, log.forks.back());
  auto site = fork_site(parent, cell);
  Diagram const& child = ctx.d();
  auto const& ji = ctx.ji();
  auto parent_ji = ji_con_poset(parent);

  Elem middle = static_cast<Elem>(parent.size());
  auto col = [&](PrimeInterval e) -> std::optional<std::size_t> {
    auto idx = child.edge_index(e);
    if (!idx) return std::nullopt;
    return ji.color_of[*idx];
  };
  auto e = col({middle, cell.top});
  auto b = col({cell.left_corner, cell.top});
  auto f = col({cell.right_corner, cell.top});
  bool size_ok = child.size() == parent.size() + site.new_elements();
  bool one_new = ji.size() == parent_ji.size() + 1;
  bool v_ok = e && b && f && *b != *f && *e != *b && *e != *f &&
              ji.covers(*e, *b) && ji.covers(*e, *f);
  bool sps = is_sps(child);
  out.details["new_elements"] = child.size() - parent.size();
  out.details["colors_before"] = parent_ji.size();
  out.details["colors_after"] = ji.size();
  if (e && b && f) out.details["v"] = {*e, *b, *f};
  out.details["sps"] = sps;
  out.status = size_ok && one_new && v_ok && sps ? Status::Pass : Status::Fail;
}

void run_sr(Context& ctx, CheckOutcome& out) {
  Diagram const& d = ctx.d();
  auto slim = is_slim(d);
  auto semi = is_semimodular(d);
  auto planar = validate_planar(d);
  bool rect = slim.slim && semi.semimodular && planar.valid &&
              is_rectangular(d).rectangular;
  out.details["slim"] = slim.slim;
  out.details["semimodular"] = semi.semimodular;
  out.details["planar"] = planar.valid;
  out.details["rectangular"] = rect;
  out.status = rect ? Status::Pass : Status::Fail;
}

}  // namespace

VerificationReport verify_lattice(Generated const& g,
                                  VerifyOptions const& options) {
  using clock = std::chrono::steady_clock;
  auto const start = clock::now();
  VerificationReport report;
  report.key_hex = to_hex(g.key);
  report.size = g.diagram.size();
  report.forks = g.log.forks.size();
  report.log = g.log.to_string();
  Context ctx{g, options, {}, {}};
  for (auto c : all_checks()) {
    if ((options.checks & static_cast<CheckSet>(c)) == 0) continue;
    CheckOutcome out;
    out.check = c;
    auto const t0 = clock::now();
    bool pairwise = c == Check::Equality || c == Check::Covering;
    try {
      if (pairwise && g.diagram.size() > options.pairwise_cap) {
        out.status = Status::Skipped;
      } else {
        switch (c) {
          case Check::Swing: run_swing(ctx, out); break;
          case Check::TwoCover: run_two_cover(ctx, out); break;
          case Check::ThreePThreeC: run_3p3c(ctx, out); break;
          case Check::VLemma: run_vlemma(ctx, out); break;
          case Check::Equality: run_equality(ctx, out); break;
          case Check::Covering: run_covering(ctx, out); break;
          case Check::Fork: run_fork(ctx, out); break;
          case Check::Sr: run_sr(ctx, out); break;
        }
      }
    } catch (std::exception const& ex) {
      out.status = Status::Fail;
      out.details["error"] = ex.what();
    }
    out.millis =
        std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    report.checks.push_back(std::move(out));
  }
  report.millis =
      std::chrono::duration<double, std::milli>(clock::now() - start).count();
  return report;
}

json VerifySummary::to_json() const {
  json j;
  j["summary"] = true;
  j["lattices"] = lattices;
  j["enumerated"] = enumerated;
  j["random"] = random;
  j["failures"] = failures;
  json by_check = json::object();
  for (auto const& [name, count] : failures_by_check) by_check[name] = count;
  j["failures_by_check"] = std::move(by_check);
  json slow = json::array();
  for (auto const& [ms, log] : slowest) slow.push_back({{"millis", ms}, {"log", log}});
  j["slowest"] = std::move(slow);
  j["millis"] = millis;
  j["assumption"] =
      "slim rectangular lattices are exactly grids with inserted forks";
  return j;
}

namespace {

std::vector<Generated> cached_enumeration(
    std::size_t max_elements, std::size_t max_forks,
    std::optional<std::filesystem::path> const& cache_dir) {
  if (!cache_dir) return enumerate_sr(max_elements, max_forks);
  auto file = *cache_dir / ("enum-" + std::to_string(max_elements) + "-" +
                            std::to_string(max_forks) + ".tsv");
  if (std::ifstream in(file); in) {
    std::vector<Generated> out;
    std::string line;
    while (std::getline(in, line)) {
      auto tab = line.find('\t');
      if (tab == std::string::npos) continue;
      Generated g;
      g.log = ConstructionLog::parse(line.substr(tab + 1));
      g.diagram = g.log.replay();
      g.key = canonical_form(g.diagram);
      if (to_hex(g.key) != line.substr(0, tab)) {
        throw LatticeError(ErrorKind::Parse,
                           "cache entry does not replay: " + line);
      }
      out.push_back(std::move(g));
    }
    return out;
  }
  auto out = enumerate_sr(max_elements, max_forks);
  std::filesystem::create_directories(*cache_dir);
  std::ofstream cache(file);
  for (auto const& g : out) {
    cache << to_hex(g.key) << '\t' << g.log.to_string() << '\n';
  }
  return out;
}

}  // namespace

std::vector<Generated> family_for(VerifyConfig const& config) {
  auto family = cached_enumeration(config.max_elements, config.max_forks,
                                   config.cache_dir);
  for (std::size_t i = 0; i < config.random_count; ++i) {
    family.push_back(random_sr(config.random_seed + i, config.random_cap,
                               i % (config.random_max_forks + 1)));
  }
  return family;
}

VerifySummary verify_family(
    VerifyConfig const& config,
    std::function<void(VerificationReport const&)> const& sink) {
  auto const start = std::chrono::steady_clock::now();
  auto family = family_for(config);
  std::size_t const total = family.size();
  std::size_t const enumerated = total - config.random_count;

  std::vector<std::optional<VerificationReport>> results(total);
  std::mutex mutex;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= total) return;
      VerifyOptions options = config.options;
      if (i >= enumerated) options.checks = config.random_checks;
      auto report = verify_lattice(family[i], options);
      {
        std::lock_guard lock(mutex);
        results[i] = std::move(report);
      }
      ready.notify_all();
    }
  };
  std::vector<std::jthread> pool;
  for (std::size_t j = 0; j < std::max<std::size_t>(1, config.jobs); ++j) {
    pool.emplace_back(worker);
  }

  VerifySummary summary;
  summary.lattices = total;
  summary.enumerated = enumerated;
  summary.random = config.random_count;
  for (auto c : all_checks()) summary.failures_by_check.emplace_back(check_name(c), 0);
  for (std::size_t i = 0; i < total; ++i) {
    VerificationReport report;
    {
      std::unique_lock lock(mutex);
      ready.wait(lock, [&] { return results[i].has_value(); });
      report = std::move(*results[i]);
      results[i].reset();
    }
    if (!report.pass()) ++summary.failures;
    for (auto const& c : report.checks) {
      if (c.status != Status::Fail) continue;
      for (auto& [name, count] : summary.failures_by_check) {
        if (name == check_name(c.check)) ++count;
      }
    }
    summary.slowest.emplace_back(report.millis, report.log);
    std::sort(summary.slowest.begin(), summary.slowest.end(),
              [](auto const& a, auto const& b) { return a.first > b.first; });
    if (summary.slowest.size() > 5) summary.slowest.pop_back();
    sink(report);
  }
  pool.clear();
  summary.millis = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return summary;
}

// ---------------------------------------------------------------------------
// SVG

std::string export_svg(Diagram const& d, SvgOptions const& options) {
  auto planar = validate_planar(d);
  if (!planar.valid) {
    throw LatticeError(ErrorKind::NotPlanar, "drawing has crossing edges");
  }
  auto const& xs = planar.drawing.x;
  auto const& ys = planar.drawing.y;
  double const unit = 40;
  double const margin = 30;
  double min_x = *std::min_element(xs.begin(), xs.end());
  double max_x = *std::max_element(xs.begin(), xs.end());
  double max_y = *std::max_element(ys.begin(), ys.end());
  double width = (max_x - min_x) * unit / 2 + 2 * margin;
  double height = max_y * unit + 2 * margin;
  auto px = [&](Elem e) { return margin + (xs[e] - min_x) * unit / 2; };
  auto py = [&](Elem e) { return margin + (max_y - ys[e]) * unit; };

  static char const* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                  "#9467bd", "#8c564b", "#e377c2", "#17becf",
                                  "#bcbd22", "#7f7f7f"};
  std::set<PrimeInterval> on_path(options.path.begin(), options.path.end());

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  auto const& edges = d.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto e = edges[i];
    std::string stroke = "#000000";
    if (!options.edge_colors.empty()) {
      stroke = palette[options.edge_colors[i] % std::size(palette)];
    }
    double w = options.bold.count(e) != 0 ? 4 : 1.5;
    svg << "  <line class=\"edge\" x1=\"" << px(e.zero) << "\" y1=\""
        << py(e.zero) << "\" x2=\"" << px(e.one) << "\" y2=\"" << py(e.one)
        << "\" stroke=\"" << stroke << "\" stroke-width=\"" << w << "\"";
    if (on_path.count(e) != 0) svg << " stroke-dasharray=\"6,3\"";
    if (!options.edge_colors.empty()) {
      svg << " data-color=\"" << options.edge_colors[i] << "\"";
    }
    svg << "/>\n";
  }
  for (Elem e = 0; e < d.size(); ++e) {
    bool fill = options.filled.count(e) != 0;
    svg << "  <circle class=\"node\" cx=\"" << px(e) << "\" cy=\"" << py(e)
        << "\" r=\"5\" fill=\"" << (fill ? "#000000" : "#ffffff")
        << "\" stroke=\"#000000\"/>\n";
    if (options.labels) {
      svg << "  <text x=\"" << px(e) + 7 << "\" y=\"" << py(e) + 4
          << "\" font-size=\"10\">" << e << "</text>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace latlab

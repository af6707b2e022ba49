#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "latlab/construct.hpp"
#include "latlab/error.hpp"
#include "latlab/harness.hpp"
#include "latlab/io.hpp"
#include "latlab/swing.hpp"

using namespace latlab;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kCheckFailed = 2;

PrimeInterval parse_edge(std::string const& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw CLI::ValidationError("edge", "expected a,b but got '" + text + "'");
  }
  try {
    return {static_cast<Elem>(std::stoul(text.substr(0, comma))),
            static_cast<Elem>(std::stoul(text.substr(comma + 1)))};
  } catch (std::exception const&) {
    throw CLI::ValidationError("edge", "bad element id in '" + text + "'");
  }
}

std::string edge_list(Diagram const& d, JiPoset const& ji, std::size_t color) {
  std::string out;
  for (std::size_t i = 0; i < d.edge_count(); ++i) {
    if (ji.color_of[i] != color) continue;
    if (!out.empty()) out += ' ';
    out += to_string(d.edges()[i]);
  }
  return out;
}

std::string blocks_text(Congruence const& c) {
  std::string out;
  for (auto const& block : c.blocks()) {
    if (block.size() < 2) continue;
    out += '{';
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(block[i]);
    }
    out += '}';
  }
  return out.empty() ? "identity" : out;
}

json blocks_json(Congruence const& c) {
  json out = json::array();
  for (auto const& block : c.blocks()) out.push_back(block);
  return out;
}

// ---------------------------------------------------------------------------

struct CheckArgs {
  std::string file;
  bool all = false, slim = false, planar = false, semimodular = false,
       rectangular = false;
};

int run_check(CheckArgs const& a) {
  auto d = read_lat_file(a.file).diagram;
  bool none = !(a.slim || a.planar || a.semimodular || a.rectangular);
  bool every = a.all || none;
  bool ok = true;
  auto line = [&](char const* pred, bool value, std::string const& witness) {
    std::cout << pred << ": " << (value ? "true" : "false");
    if (!witness.empty()) std::cout << " witness: " << witness;
    std::cout << "\n";
    ok = ok && value;
  };
  if (every || a.slim) {
    auto r = is_slim(d);
    std::string w;
    if (r.witness) {
      auto [x, y, z] = *r.witness;
      w = "M3 atoms " + std::to_string(x) + "," + std::to_string(y) + "," +
          std::to_string(z);
    }
    line("slim", r.slim, w);
  }
  if (every || a.planar) {
    std::string w;
    bool valid = false;
    try {
      auto r = validate_planar(d);
      valid = r.valid;
      if (r.crossing) {
        w = "crossing " + to_string(r.crossing->first) + " " +
            to_string(r.crossing->second);
      }
    } catch (LatticeError const& e) {
      w = e.what();
    }
    line("planar", valid, w);
  }
  if (every || a.semimodular) {
    auto r = is_semimodular(d);
    std::string w;
    if (r.witness) {
      w = "pair " + std::to_string(r.witness->first) + "," +
          std::to_string(r.witness->second);
    }
    line("semimodular", r.semimodular, w);
  }
  if (every || a.rectangular) {
    std::string w;
    bool rect = false;
    try {
      auto r = is_rectangular(d);
      rect = r.rectangular;
      if (rect) {
        w = "corners " + std::to_string(*r.left_corner) + "," +
            std::to_string(*r.right_corner);
      }
    } catch (LatticeError const& e) {
      w = e.what();
    }
    line("rectangular", rect, w);
  }
  return ok ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------------------

struct CongruenceArgs {
  std::string file;
  bool ji = false;
  bool all = false;
  bool as_json = false;
};

int run_congruences(CongruenceArgs const& a) {
  auto d = read_lat_file(a.file).diagram;
  auto ji = ji_con_poset(d);
  bool show_ji = a.ji || !a.all;
  if (a.as_json) {
    json out;
    if (show_ji) {
      json colors = json::array();
      for (std::size_t c = 0; c < ji.size(); ++c) {
        json edges = json::array();
        for (std::size_t i = 0; i < d.edge_count(); ++i) {
          if (ji.color_of[i] == c) {
            edges.push_back({d.edges()[i].zero, d.edges()[i].one});
          }
        }
        colors.push_back(
            {{"color", c}, {"blocks", blocks_json(ji.colors[c])}, {"edges", edges}});
      }
      json covers = json::array();
      for (auto const& [lo, hi] : ji.order.cover_pairs()) {
        covers.push_back({lo, hi});
      }
      out["colors"] = colors;
      out["covers"] = covers;
    }
    if (a.all) {
      json all = json::array();
      for (auto const& c : con_lattice(d.lattice())) all.push_back(blocks_json(c));
      out["congruences"] = all;
    }
    std::cout << out.dump(1) << "\n";
    return kOk;
  }
  if (show_ji) {
    std::cout << ji.size() << " colors\n";
    for (std::size_t c = 0; c < ji.size(); ++c) {
      std::cout << "color " << c << ": " << blocks_text(ji.colors[c])
                << "  edges " << edge_list(d, ji, c) << "\n";
    }
    for (auto const& [lo, hi] : ji.order.cover_pairs()) {
      std::cout << lo << " < " << hi << "\n";
    }
  }
  if (a.all) {
    auto all = con_lattice(d.lattice());
    std::cout << all.size() << " congruences\n";
    for (auto const& c : all) std::cout << blocks_text(c) << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct SwingArgs {
  std::string file;
  std::string from;
  std::string to;
  bool witness = false;
};

char const* step_symbol(StepKind k) {
  switch (k) {
    case StepKind::UpPerspective: return "↗";
    case StepKind::DownPerspective: return "↘";
    case StepKind::SwingInternal: return "↷in";
    case StepKind::SwingExternal: return "↷ex";
  }
  return "?";
}

int run_swing(SwingArgs const& a) {
  auto d = read_lat_file(a.file).diagram;
  auto p = parse_edge(a.from);
  auto q = parse_edge(a.to);
  auto w = swing_reachable(d, p, q);
  std::cout << "Collapses: " << (w ? "yes" : "no") << "\n";
  if (w && a.witness) {
    std::cout << to_string(p) << "\n";
    for (auto const& step : *w) {
      std::cout << step_symbol(step.kind) << " " << to_string(step.to) << "\n";
    }
    std::cout << "= " << to_string(q) << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct RelationArgs {
  std::string file;
  bool v = false, w = false, crown = false, peaks = false;
};

int run_relations(RelationArgs const& a) {
  auto d = read_lat_file(a.file).diagram;
  auto ji = ji_con_poset(d);
  bool every = !(a.v || a.w || a.crown || a.peaks);
  if (every || a.v) {
    auto vs = v_relations(ji);
    std::cout << "V " << vs.size() << "\n";
    for (auto const& v : vs) {
      std::cout << "V(" << v.a << "," << v.b << "," << v.c << ")\n";
    }
  }
  if (every || a.w) {
    auto ws = w_relations(d, ji);
    std::cout << "W " << ws.size() << "\n";
    for (auto const& w : ws) {
      std::cout << "W(";
      for (std::size_t i = 0; i < 6; ++i) {
        std::cout << (i ? "," : "") << w.colors[i];
      }
      std::cout << ")";
      if (w.version1) std::cout << " version1";
      if (w.version2) std::cout << " version2";
      std::cout << "\n";
    }
  }
  if (every || a.crown) {
    auto cs = three_crown_relations(ji);
    std::cout << "3C " << cs.size() << "\n";
    for (auto const& c : cs) {
      std::cout << "3C(";
      for (std::size_t i = 0; i < 6; ++i) std::cout << (i ? "," : "") << c[i];
      std::cout << ")\n";
    }
  }
  if (every || a.peaks) {
    auto ps = peak_sublattices(d);
    std::cout << "peaks " << ps.size() << "\n";
    for (auto const& p : ps) {
      auto t = peak_triple(d, ji, p);
      std::cout << "top " << p.top << " tops " << p.left_top << ","
                << p.mid_top << "," << p.right_top << " bottom " << p.bottom
                << " colors " << t.a << ";" << t.b << "," << t.c << "\n";
    }
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
  std::vector<std::size_t> grid;
  std::vector<std::size_t> enumerate;
  std::vector<std::uint64_t> random;
  std::vector<Elem> forks;
  std::string replay;
  std::string out;
};

std::string lat_name(ConstructionLog const& log) {
  auto s = log.to_string();
  for (auto& ch : s) {
    if (ch == ' ') ch = '_';
  }
  return s;
}

int run_generate(GenerateArgs const& a) {
  int modes = !a.grid.empty() + !a.enumerate.empty() + !a.random.empty() +
              !a.replay.empty();
  if (modes != 1) {
    std::cerr << "generate: give exactly one of --grid, --enumerate, --random, "
                 "--replay\n";
    return kUsage;
  }
  if (!a.enumerate.empty()) {
    if (!a.forks.empty()) {
      std::cerr << "generate: --fork does not combine with --enumerate\n";
      return kUsage;
    }
    std::filesystem::path dir = a.out;
    std::filesystem::create_directories(dir);
    auto family = enumerate_sr(a.enumerate[0], a.enumerate[1]);
    std::ofstream index(dir / "index.tsv");
    index << "file\tkey\tsize\tforks\tlog\n";
    std::size_t k = 0;
    for (auto const& g : family) {
      std::ostringstream file;
      file << "sr_" << std::setw(5) << std::setfill('0') << k++ << ".lat";
      write_lat_file(dir / file.str(), lat_name(g.log), g.diagram);
      index << file.str() << '\t' << to_hex(g.key) << '\t' << g.diagram.size()
            << '\t' << g.log.forks.size() << '\t' << g.log.to_string() << '\n';
    }
    std::cerr << family.size() << " lattices written to " << dir.string()
              << "\n";
    return kOk;
  }
  ConstructionLog log;
  if (!a.grid.empty()) {
    log.rows = a.grid[0];
    log.cols = a.grid[1];
  } else if (!a.random.empty()) {
    log = random_sr(a.random[0], a.random[1], a.random[2]).log;
  } else {
    log = ConstructionLog::parse(a.replay);
  }
  if (a.forks.size() % 2 != 0) {
    std::cerr << "generate: --fork takes a top and a left corner\n";
    return kUsage;
  }
  for (std::size_t i = 0; i < a.forks.size(); i += 2) {
    log.forks.push_back({a.forks[i], a.forks[i + 1]});
  }
  auto d = log.replay();
  if (a.out.empty() || a.out == "-") {
    write_lat(std::cout, lat_name(log), d);
  } else {
    write_lat_file(a.out, lat_name(log), d);
  }
  std::cerr << log.to_string() << " (" << d.size() << " elements)\n";
  return kOk;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::size_t max_elements = 7;
  std::size_t max_forks = 1;
  std::string checks = "all";
  std::size_t jobs = 1;
  std::string report;
  std::size_t random = 0;
  std::size_t random_cap = 60;
  std::size_t random_forks = 6;
  std::uint64_t seed = 0;
  std::string random_checks = "2cover,3p3c";
  std::string log;
  std::string rule = "standard";
};

SwingRule parse_rule(std::string const& s) {
  if (s == "standard") return SwingRule::Standard;
  if (s == "swap-endpoints") return SwingRule::SwapEndpoints;
  if (s == "swap-classification") return SwingRule::SwapClassification;
  if (s == "drop-interior") return SwingRule::DropInteriorCondition;
  throw CLI::ValidationError("--rule", "unknown rule '" + s + "'");
}

int run_verify(VerifyArgs const& a) {
  VerifyOptions options;
  try {
    options.checks = parse_checks(a.checks);
  } catch (std::invalid_argument const& e) {
    std::cerr << "verify: " << e.what() << "\n";
    return kUsage;
  }
  options.rule = parse_rule(a.rule);

  std::ofstream report_file;
  std::ostream* report = nullptr;
  if (!a.report.empty()) {
    report_file.open(a.report);
    if (!report_file) {
      std::cerr << "verify: cannot write " << a.report << "\n";
      return kUsage;
    }
    report = &report_file;
  }

  if (!a.log.empty()) {
    auto log = ConstructionLog::parse(a.log);
    auto d = log.replay();
    auto key = canonical_form(d);
    auto r = verify_lattice(Generated{std::move(d), log, key}, options);
    auto line = r.to_json().dump();
    if (report) *report << line << "\n";
    std::cout << line << "\n";
    return r.pass() ? kOk : kCheckFailed;
  }

  VerifyConfig config;
  config.max_elements = a.max_elements;
  config.max_forks = a.max_forks;
  config.options = options;
  config.jobs = std::max<std::size_t>(a.jobs, 1);
  config.random_count = a.random;
  config.random_cap = a.random_cap;
  config.random_max_forks = a.random_forks;
  config.random_seed = a.seed;
  try {
    config.random_checks = parse_checks(a.random_checks);
  } catch (std::invalid_argument const& e) {
    std::cerr << "verify: " << e.what() << "\n";
    return kUsage;
  }
  if (char const* cache = std::getenv("LATLAB_CACHE"); cache && *cache) {
    config.cache_dir = cache;
  }

  auto summary = verify_family(config, [&](VerificationReport const& r) {
    if (report) *report << r.to_json().dump() << "\n";
    if (!r.pass()) {
      std::cerr << "FAIL " << r.log << ":";
      for (auto const& c : r.checks) {
        if (c.status == Status::Fail) std::cerr << " " << check_name(c.check);
      }
      std::cerr << "\n";
    }
  });
  auto s = summary.to_json();
  if (report) *report << s.dump() << "\n";
  std::cout << s.dump(1) << "\n";
  return summary.failures == 0 ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------------------

struct RenderArgs {
  std::string file;
  bool color_edges = false;
  bool peaks = false;
  std::string witness;
  std::string out;
};

int run_render(RenderArgs const& a) {
  auto d = read_lat_file(a.file).diagram;
  SvgOptions options;
  if (a.color_edges) options.edge_colors = ji_con_poset(d).color_of;
  if (a.peaks) {
    for (auto const& p : peak_sublattices(d)) {
      for (auto e : p.elements()) options.filled.insert(e);
      options.bold.insert(p.left_edge());
      options.bold.insert(p.middle_edge());
      options.bold.insert(p.right_edge());
    }
  }
  if (!a.witness.empty()) {
    auto colon = a.witness.find(':');
    if (colon == std::string::npos) {
      std::cerr << "render: --witness wants e1,e2:e3,e4\n";
      return kUsage;
    }
    auto p = parse_edge(a.witness.substr(0, colon));
    auto q = parse_edge(a.witness.substr(colon + 1));
    auto w = swing_reachable(d, p, q);
    if (!w) {
      std::cerr << "render: " << to_string(p) << " does not collapse "
                << to_string(q) << "\n";
      return kCheckFailed;
    }
    options.path.push_back(p);
    for (auto const& step : *w) {
      if (step.to != options.path.back()) options.path.push_back(step.to);
    }
  }
  auto svg = export_svg(d, options);
  if (a.out.empty() || a.out == "-") {
    std::cout << svg;
  } else {
    std::ofstream(a.out) << svg;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Slim planar semimodular lattice toolkit"};
  app.require_subcommand(1);

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Test lattice predicates");
  c->add_option("file", check.file, ".lat file")->required();
  c->add_flag("--all", check.all);
  c->add_flag("--slim", check.slim);
  c->add_flag("--planar", check.planar);
  c->add_flag("--semimodular", check.semimodular);
  c->add_flag("--rectangular", check.rectangular);

  CongruenceArgs cong;
  auto* g = app.add_subcommand("congruences", "Colors and congruences");
  g->add_option("file", cong.file, ".lat file")->required();
  g->add_flag("--ji", cong.ji, "join-irreducible congruences (default)");
  g->add_flag("--all", cong.all, "the whole congruence lattice");
  g->add_flag("--json", cong.as_json);

  SwingArgs sw;
  auto* s = app.add_subcommand("swing", "Does con(from) collapse to?");
  s->add_option("file", sw.file, ".lat file")->required();
  s->add_option("--from", sw.from, "edge a,b")->required();
  s->add_option("--to", sw.to, "edge a,b")->required();
  s->add_flag("--witness", sw.witness);

  RelationArgs rel;
  auto* r = app.add_subcommand("relations", "V, W and 3C relations, peaks");
  r->add_option("file", rel.file, ".lat file")->required();
  r->add_flag("--v", rel.v);
  r->add_flag("--w", rel.w);
  r->add_flag("--3c", rel.crown);
  r->add_flag("--peaks", rel.peaks);

  GenerateArgs gen;
  auto* n = app.add_subcommand("generate", "Build slim rectangular lattices");
  n->add_option("--grid", gen.grid, "m n")->expected(2);
  n->add_option("--enumerate", gen.enumerate, "maxE maxF")->expected(2);
  n->add_option("--random", gen.random, "seed capE nF")->expected(3);
  n->add_option("--fork", gen.forks, "top left-corner of a 4-cell")
      ->expected(2)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  n->add_option("--replay", gen.replay, "construction log");
  n->add_option("-o,--out", gen.out, "output file, or directory for --enumerate");

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "Run checks over a lattice family");
  v->add_option("--max-elements", ver.max_elements);
  v->add_option("--max-forks", ver.max_forks);
  v->add_option("--checks", ver.checks, "comma list or all");
  v->add_option("--jobs", ver.jobs);
  v->add_option("--report", ver.report, "JSON lines output");
  v->add_option("--random", ver.random, "extra seeded random lattices");
  v->add_option("--random-cap", ver.random_cap);
  v->add_option("--random-forks", ver.random_forks);
  v->add_option("--seed", ver.seed);
  v->add_option("--random-checks", ver.random_checks);
  v->add_option("--log", ver.log, "verify one construction log");
  v->add_option("--rule", ver.rule,
                "standard|swap-endpoints|swap-classification|drop-interior");

  RenderArgs ren;
  auto* d = app.add_subcommand("render", "SVG drawing");
  d->add_option("file", ren.file, ".lat file")->required();
  d->add_flag("--color-edges", ren.color_edges);
  d->add_flag("--peaks", ren.peaks);
  d->add_option("--witness", ren.witness, "e1,e2:e3,e4");
  d->add_option("-o,--out", ren.out);

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*c) return run_check(check);
    if (*g) return run_congruences(cong);
    if (*s) return run_swing(sw);
    if (*r) return run_relations(rel);
    if (*n) return run_generate(gen);
    if (*v) return run_verify(ver);
    if (*d) return run_render(ren);
  } catch (CLI::Error const& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (LatticeError const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

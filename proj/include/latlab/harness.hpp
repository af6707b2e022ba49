#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "latlab/congruence.hpp"
#include "latlab/construct.hpp"
#include "latlab/diagram.hpp"
#include "latlab/swing.hpp"

namespace latlab {

// Three-pendant three-crown poset. Crown a..f (ids 0..5), pendants x, y, z
// (ids 6..8).
Poset r3_poset();
std::array<char const*, 9> const& r3_names();

struct TwoCoverResult {
  bool pass = true;
  std::optional<std::size_t> color;
  std::vector<std::size_t> covers;
};

// Every colour has at most two upper covers in Ji(Con L).
TwoCoverResult check_two_cover(JiPoset const& ji);
TwoCoverResult check_two_cover(Diagram const& d);

struct ThreePThreeCResult {
  bool pass = true;
  std::optional<std::vector<Elem>> embedding;  // R3 element -> colour
};

// Passes iff R3 has no cover-preserving embedding into the given order.
ThreePThreeCResult check_3p3c(Poset const& ji_order,
                              EmbeddingMode mode = EmbeddingMode::PreserveCovers);
ThreePThreeCResult check_3p3c(Diagram const& d,
                              EmbeddingMode mode = EmbeddingMode::PreserveCovers);

// ---------------------------------------------------------------------------
// verification campaign

enum class Check : unsigned {
  Swing = 1U << 0,     // swing reachability vs. congruence closure
  TwoCover = 1U << 1,
  ThreePThreeC = 1U << 2,
  VLemma = 1U << 3,
  Equality = 1U << 4,  // equality witnesses vs. colour equality
  Covering = 1U << 5,  // covering witnesses vs. Ji covers
  Fork = 1U << 6,      // last fork added one colour with its V-relation
  Sr = 1U << 7,        // the lattice is slim rectangular
};

using CheckSet = unsigned;
inline constexpr CheckSet kAllChecks = 0xffU;

char const* check_name(Check c);
std::vector<Check> const& all_checks();
// "swing,2cover,3p3c,vlemma,eq,cover,fork,sr" or "all". Throws
// std::invalid_argument.
CheckSet parse_checks(std::string const& text);

enum class Status { Pass, Fail, Skipped };

struct CheckOutcome {
  Check check = Check::Swing;
  Status status = Status::Pass;
  double millis = 0;
  nlohmann::json details = nlohmann::json::object();
};

struct VerificationReport {
  std::string key_hex;
  std::size_t size = 0;
  std::size_t forks = 0;
  std::string log;
  std::vector<CheckOutcome> checks;
  double millis = 0;

  bool pass() const;
  CheckOutcome const* find(Check c) const;
  nlohmann::json to_json() const;
};

struct VerifyOptions {
  CheckSet checks = kAllChecks;
  SwingRule rule = SwingRule::Standard;
  // equality/covering witness sweeps are skipped above this size
  std::size_t pairwise_cap = 20;
};

VerificationReport verify_lattice(Generated const& g,
                                  VerifyOptions const& options = {});

struct VerifyConfig {
  std::size_t max_elements = 7;
  std::size_t max_forks = 1;
  VerifyOptions options;
  std::size_t jobs = 1;
  // additional seeded random lattices
  std::size_t random_count = 0;
  std::size_t random_cap = 60;
  std::size_t random_max_forks = 6;
  std::uint64_t random_seed = 0;
  CheckSet random_checks =
      static_cast<CheckSet>(Check::TwoCover) |
      static_cast<CheckSet>(Check::ThreePThreeC);
  std::optional<std::filesystem::path> cache_dir;
};

struct VerifySummary {
  std::size_t lattices = 0;
  std::size_t failures = 0;
  std::size_t enumerated = 0;
  std::size_t random = 0;
  std::vector<std::pair<std::string, std::size_t>> failures_by_check;
  // (millis, log) of the slowest lattices, slowest first
  std::vector<std::pair<double, std::string>> slowest;
  double millis = 0;

  nlohmann::json to_json() const;
};

// The lattice family for a config: the enumeration (read from or written to
// the cache directory when one is set) followed by the random lattices.
std::vector<Generated> family_for(VerifyConfig const& config);

// Runs every selected check on every lattice. Reports reach `sink` in family
// order whatever the number of jobs.
VerifySummary verify_family(
    VerifyConfig const& config,
    std::function<void(VerificationReport const&)> const& sink);

std::string to_hex(std::string const& bytes);

// ---------------------------------------------------------------------------
// SVG export

struct SvgOptions {
  // colour index per edge (Diagram::edges() order); empty draws black
  std::vector<std::size_t> edge_colors;
  std::set<Elem> filled;
  std::set<PrimeInterval> bold;
  std::vector<PrimeInterval> path;
  bool labels = true;
};

// Throws NotPlanar.
std::string export_svg(Diagram const& d, SvgOptions const& options = {});

}  // namespace latlab

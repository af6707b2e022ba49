#include "latlab/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "latlab/error.hpp"

namespace latlab {

namespace {

[[noreturn]] void parse_error(std::size_t line, std::string const& what) {
  throw LatticeError(ErrorKind::Parse,
                     "line " + std::to_string(line) + ": " + what);
}

std::optional<std::size_t> to_id(std::string const& token) {
  if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos) {
    return std::nullopt;
  }
  return std::stoul(token);
}

}  // namespace

LatFile read_lat(std::istream& in) {
  LatFile file;
  std::string text;
  std::size_t lineno = 0;
  std::optional<std::size_t> n;
  std::vector<std::vector<Elem>> lower;
  std::vector<std::vector<Elem>> upper;
  std::vector<std::size_t> defined_at;

  while (std::getline(in, text)) {
    ++lineno;
    std::istringstream line(text);
    std::string word;
    if (!(line >> word) || word[0] == '#') continue;
    if (!n) {
      std::string count;
      if (word != "lattice" || !(line >> file.name >> count)) {
        parse_error(lineno, "expected 'lattice <name> <n>'");
      }
      n = to_id(count);
      if (!n || *n == 0) parse_error(lineno, "bad element count '" + count + "'");
      lower.resize(*n);
      upper.resize(*n);
      defined_at.assign(*n, 0);
      continue;
    }
    if (word != "elem") parse_error(lineno, "expected 'elem', got '" + word + "'");
    std::string tok;
    line >> tok;
    auto id = to_id(tok);
    if (!id || *id >= *n) parse_error(lineno, "bad element id '" + tok + "'");
    if (defined_at[*id] != 0) {
      parse_error(lineno, "element " + tok + " already defined on line " +
                              std::to_string(defined_at[*id]));
    }
    defined_at[*id] = lineno;
    std::vector<Elem>* target = nullptr;
    bool saw_lower = false;
    bool saw_upper = false;
    while (line >> tok) {
      if (tok == "lower:") {
        target = &lower[*id];
        saw_lower = true;
      } else if (tok == "upper:") {
        target = &upper[*id];
        saw_upper = true;
      } else {
        auto other = to_id(tok);
        if (!target) parse_error(lineno, "id before 'lower:'/'upper:'");
        if (!other || *other >= *n) parse_error(lineno, "bad cover id '" + tok + "'");
        target->push_back(static_cast<Elem>(*other));
      }
    }
    if (!saw_lower || !saw_upper) {
      parse_error(lineno, "need both 'lower:' and 'upper:' lists");
    }
  }
  if (!n) parse_error(lineno, "missing 'lattice' header");
  for (std::size_t e = 0; e < *n; ++e) {
    if (defined_at[e] == 0) {
      parse_error(lineno, "element " + std::to_string(e) + " never defined");
    }
  }
  for (Elem b = 0; b < *n; ++b) {
    for (auto a : lower[b]) {
      auto const& ups = upper[a];
      if (std::find(ups.begin(), ups.end(), b) == ups.end()) {
        parse_error(defined_at[b],
                    std::to_string(a) + " is below " + std::to_string(b) +
                        " but line " + std::to_string(defined_at[a]) +
                        " does not list " + std::to_string(b) + " above it");
      }
    }
    for (auto c : upper[b]) {
      auto const& lows = lower[c];
      if (std::find(lows.begin(), lows.end(), b) == lows.end()) {
        parse_error(defined_at[b],
                    std::to_string(c) + " is above " + std::to_string(b) +
                        " but line " + std::to_string(defined_at[c]) +
                        " does not list " + std::to_string(b) + " below it");
      }
    }
  }
  file.diagram = Diagram::from_orders(std::move(lower), std::move(upper));
  return file;
}

LatFile read_lat_file(std::filesystem::path const& path) {
  std::ifstream in(path);
  if (!in) {
    throw LatticeError(ErrorKind::Parse, "cannot open " + path.string());
  }
  return read_lat(in);
}

void write_lat(std::ostream& out, std::string const& name, Diagram const& d) {
  out << "lattice " << name << " " << d.size() << "\n";
  for (Elem e = 0; e < d.size(); ++e) {
    out << "elem " << e << " lower:";
    for (auto x : d.lower_order(e)) out << " " << x;
    out << " upper:";
    for (auto x : d.upper_order(e)) out << " " << x;
    out << "\n";
  }
}

void write_lat_file(std::filesystem::path const& path, std::string const& name,
                    Diagram const& d) {
  std::ofstream out(path);
  if (!out) {
    throw LatticeError(ErrorKind::Parse, "cannot write " + path.string());
  }
  write_lat(out, name, d);
}

}  // namespace latlab

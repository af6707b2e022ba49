#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "latlab/diagram.hpp"

namespace latlab {

// `.lat` text format:
//   lattice <name> <n>
//   elem <i> lower: <ids left-to-right> upper: <ids left-to-right>
// one elem line per element. Blank lines and lines starting with '#' are
// skipped.
struct LatFile {
  std::string name;
  Diagram diagram;
};

// Throws LatticeError(Parse) with a line number, or the Diagram
// construction errors.
LatFile read_lat(std::istream& in);
LatFile read_lat_file(std::filesystem::path const& path);

void write_lat(std::ostream& out, std::string const& name, Diagram const& d);
void write_lat_file(std::filesystem::path const& path, std::string const& name,
                    Diagram const& d);

}  // namespace latlab

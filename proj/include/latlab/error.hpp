#pragma once

#include <stdexcept>
#include <string>

namespace latlab {

enum class ErrorKind {
  CycleDetected,
  DuplicateElement,
  InvalidElement,
  NotALattice,
  NotPrime,
  NotSps,
  NotAFourCell,
  BadSize,
  NotSemimodular,
  NotPlanar,
  InconsistentOrders,
  CapExceeded,
  Parse,
  InternalFlaw,
};

char const* to_string(ErrorKind kind);

class LatticeError : public std::runtime_error {
 public:
  LatticeError(ErrorKind kind, std::string const& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace latlab

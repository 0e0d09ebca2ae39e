#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dchaos {

enum class ErrorKind {
  Representation,  // elements of different representations combined
  Domain,          // argument outside the mathematical domain
  Sector,          // complex argument outside both asymptotic sectors
  Window,          // support left the sampled window
  TimeGrid,        // time not representable on the spatial grid
  Precondition,    // violated operation precondition
  Overflow,        // result not representable as a finite double
  Quadrature,      // quadrature did not reach its tolerance
  Schema,          // scenario configuration invalid
  Io,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

/// Absolute slack applied to every floating-point comparison in the library.
inline constexpr double kSlack = 1e-12;

}  // namespace dchaos

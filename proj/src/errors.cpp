#include "dchaos/errors.hpp"

namespace dchaos {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Representation: return "representation";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Sector: return "sector";
    case ErrorKind::Window: return "window";
    case ErrorKind::TimeGrid: return "time-grid";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Overflow: return "overflow";
    case ErrorKind::Quadrature: return "quadrature";
    case ErrorKind::Schema: return "schema";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, std::string(to_string(kind)) + " error: " + message);
}

}  // namespace dchaos

#include "gausslink/error.hpp"

namespace gausslink {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::SingularOperatingPoint: return "singular operating point";
    case ErrorKind::InvalidOperatingMode: return "invalid operating mode";
    case ErrorKind::Unstable: return "unstable operating point";
    case ErrorKind::ConstraintViolation: return "constraint violation";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Config: return "configuration error";
    case ErrorKind::Io: return "I/O error";
  }
  return "unknown";
}

}  // namespace gausslink

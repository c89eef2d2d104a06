#include "invsq/errors.hpp"

namespace invsq {

const char* kind_name(ErrorKind k) noexcept {
  switch (k) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::Resonance: return "resonant";
    case ErrorKind::Subcritical: return "subcritical-coupling";
    case ErrorKind::GridMismatch: return "grid-mismatch";
    case ErrorKind::Verification: return "verification-failure";
    case ErrorKind::NonConvergence: return "nonconvergence";
  }
  return "unknown";
}

int exit_code(ErrorKind k) noexcept {
  switch (k) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::GridMismatch: return 2;
    case ErrorKind::Domain:
    case ErrorKind::Pole:
    case ErrorKind::Resonance:
    case ErrorKind::Subcritical: return 3;
    case ErrorKind::Verification: return 4;
    case ErrorKind::NonConvergence: return 5;
  }
  return 1;
}

void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace invsq

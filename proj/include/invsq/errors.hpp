#pragma once

#include <stdexcept>
#include <string>

namespace invsq {

enum class ErrorKind {
  InvalidArgument,
  Domain,
  Pole,
  Resonance,
  Subcritical,
  GridMismatch,
  Verification,
  NonConvergence,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

// Series or quadrature that ran out of budget. Keeps what it had so far.
class NonConvergenceError : public Error {
public:
  NonConvergenceError(const std::string& what, double partial, double tail)
      : Error(ErrorKind::NonConvergence, what), partial_sum(partial), tail_estimate(tail) {}
  double partial_sum;
  double tail_estimate;
};

const char* kind_name(ErrorKind k) noexcept;

// 2 invalid args, 3 domain-type failures, 4 verification, 5 nonconvergence
int exit_code(ErrorKind k) noexcept;

[[noreturn]] void fail(ErrorKind kind, const std::string& msg);

}  // namespace invsq

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ptlab {

enum class ErrorKind {
  kRejectedInput,      // malformed or dimension-mismatched arguments
  kCapability,         // requested derivative order not provided by the cost
  kDomain,             // argument outside the mathematical domain
  kNonDegeneracy,      // singular mixed Hessian
  kDegenerateGradient, // |grad_x c| vanishes
  kDegenerate,         // geometric degeneracy (1-D A3 form, zero b1, ...)
  kCutLocus,           // antipodal input on the sphere
  kConfiguration,      // scenario or example tuning is infeasible
  kParse,              // scenario text could not be parsed
  kInternal,           // invariant broken inside the library
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace ptlab

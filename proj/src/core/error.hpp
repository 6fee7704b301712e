#pragma once

#include <stdexcept>
#include <string>

namespace qll {

enum class ErrorKind {
  kDomain,       // point outside the chart domain
  kGeometry,     // degenerate metric or surface
  kNumeric,      // non-finite values, degenerate integrals
  kConfig,       // bad parameters or configuration
  kHypothesis,   // a theorem hypothesis (e.g. H > 0) does not hold
  kUnsupported,  // outside the implemented cases
  kFlow,         // flow failure with a last valid state
  kIo,
};

const char* to_string(ErrorKind kind);

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

}  // namespace qll

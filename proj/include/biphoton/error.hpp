#pragma once

#include <stdexcept>
#include <string>

namespace biphoton {

enum class ErrorKind {
  domain,       // argument outside the mathematical domain of an operation
  config,       // malformed or inconsistent configuration
  lookup,       // unknown preset, key or axis name
  contract,     // numerical contract violated (unnormalized input, grid mismatch, ...)
  unsupported,  // operation not defined for this model
  io,
};

const char* to_string(ErrorKind kind) noexcept;

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

}  // namespace biphoton

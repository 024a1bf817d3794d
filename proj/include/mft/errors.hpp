#pragma once

#include <stdexcept>
#include <string>

namespace mft {

enum class ErrorKind {
  input,       // malformed or inconsistent input data
  config,      // invalid configuration value
  shape,       // histogram length mismatch
  numeric,     // non-finite intermediate result
  sequencing,  // frames delivered out of order
  metric,      // metric undefined for the given data
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

}  // namespace mft

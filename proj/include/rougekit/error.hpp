#pragma once

#include <stdexcept>
#include <string>

namespace rougekit {

// Base type for every toolkit failure: parse errors, validation errors,
// precondition violations. The message carries the context (file, line,
// field, document id).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rougekit

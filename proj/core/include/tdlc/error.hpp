#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tdlc {

// Base class for all library errors. The message is prefixed with the
// name of the module that raised it, e.g. "germ: unknown germ kind 'x'".
class Error : public std::runtime_error {
 public:
  Error(std::string_view module, const std::string& message);

  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

// Malformed input: bad spec strings, JSON, DSL syntax, unknown names.
class InputError : public Error {
 public:
  using Error::Error;
};

// A configured resource cap (vertices, simplices, group order) was hit.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

// A structural invariant failed on data that passed input validation,
// e.g. a deflated boundary with nonzero square.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

struct Caps {
  std::size_t vertices = 200'000;
  std::size_t simplices = 2'000'000;
  std::size_t group_order = 200'000;
};

}  // namespace tdlc

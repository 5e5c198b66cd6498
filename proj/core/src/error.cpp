#include "tdlc/error.hpp"

namespace tdlc {

Error::Error(std::string_view module, const std::string& message)
    : std::runtime_error(std::string(module) + ": " + message), module_(module) {}

}  // namespace tdlc

#pragma once

#include <string>
#include <string_view>

namespace tdlc::io {

// Whole file as text; InputError tagged with `module` if it cannot be read.
std::string read_text_file(const std::string& path, std::string_view module);

}  // namespace tdlc::io

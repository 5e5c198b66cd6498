#include "tdlc/io.hpp"

#include <fstream>
#include <sstream>

#include "tdlc/error.hpp"

namespace tdlc::io {

std::string read_text_file(const std::string& path, std::string_view module) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(module, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace tdlc::io

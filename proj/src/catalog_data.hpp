#pragma once

#include <span>
#include <string_view>

namespace pegsol::catalog::detail {

struct File {
  std::string_view path;  // relative to data/
  std::string_view text;
};

// Generated at build time from data/.
std::span<const File> files();

}  // namespace pegsol::catalog::detail

#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>

namespace ume {

// Shortest decimal that parses back to exactly the same double. Used for LP
// text and CSV output so files are byte-stable and exactly re-parseable.
inline std::string format_double(double v) {
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace ume

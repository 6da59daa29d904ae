#pragma once

#include <cstdio>
#include <string>

namespace extdiv {

/// Shortest-round-trip-ish stable formatting for CSV/metadata output.
/// snprintf keeps the byte representation identical across runs.
inline std::string fmt_double(double v, const char* spec = "%.12g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

inline std::string fmt_int(long long v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%lld", v);
  return buf;
}

}  // namespace extdiv

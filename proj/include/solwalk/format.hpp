#ifndef SOLWALK_FORMAT_HPP_
#define SOLWALK_FORMAT_HPP_

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

namespace solwalk {

// Shortest-faithful float formatting: 17 significant digits round-trip any
// IEEE double, so emitted reports are reproducible bit for bit.
inline std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return std::string(buf);
}

// RFC 4180 quoting; only applied when the field needs it.
inline std::string csv_field(std::string_view s) {
  bool needs = s.find_first_of(",\"\n\r") != std::string_view::npos;
  if (!needs) return std::string(s);
  std::string out;
  out.reserve(s.size() + 2);
  out.push_back('"');
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= static_cast<std::uint64_t>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return std::string(buf);
}

}  // namespace solwalk

#endif  // SOLWALK_FORMAT_HPP_

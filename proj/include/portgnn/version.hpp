#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace portgnn {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr std::string_view kToolName = "portgnn";

// FNV-1a, used to fingerprint experiment parameter blocks in report headers.
inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string fnv1a_hex(std::string_view s) {
  static constexpr char digits[] = "0123456789abcdef";
  std::uint64_t h = fnv1a(s);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace portgnn

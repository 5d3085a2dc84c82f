#pragma once

#include <array>
#include <charconv>
#include <string>

namespace penrose_ctqw {

/// Shortest round-trip decimal form, independent of the C locale.
inline std::string format_double(double v) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return ec == std::errc{} ? std::string(buf.data(), end) : std::string("nan");
}

} // namespace penrose_ctqw

#pragma once

#include <charconv>
#include <limits>
#include <string>
#include <string_view>

#include "penrose_ctqw/error.hpp"
#include "penrose_ctqw/lattice.hpp"

namespace penrose_ctqw {

namespace detail {

template <typename F>
std::size_t nearest_center_where(const PenroseLattice& lattice, F&& keep) {
  std::size_t best = kNoVertex;
  double best_r = std::numeric_limits<double>::infinity();
  for (const auto& v : lattice.vertices()) {
    if (!keep(v.id)) continue;
    // ids ascend, so strict < keeps the lowest id on ties
    const double r = v.pos.norm();
    if (r < best_r - 1e-9) {
      best_r = r;
      best = v.id;
    }
  }
  return best;
}

inline bool parse_index(std::string_view s, std::size_t& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

} // namespace detail

/// Resolves a node selector:
///   "<id>"                     explicit vertex id
///   "center"                   vertex closest to the origin
///   "max-degree"               highest edge-degree, closest to the origin
///   "degree:<d>:nearest-center"  edge-degree d, closest to the origin
inline std::size_t select_node(const PenroseLattice& lattice, std::string_view selector) {
  std::size_t id = 0;
  if (detail::parse_index(selector, id)) {
    if (id >= lattice.size())
      throw BoundsError("node " + std::to_string(id) + " outside 0.." + std::to_string(lattice.size()));
    return id;
  }
  std::size_t found = kNoVertex;
  if (selector == "center") {
    found = detail::nearest_center_where(lattice, [](std::size_t) { return true; });
  } else if (selector == "max-degree") {
    int top = -1;
    for (int d : lattice.degrees()) top = std::max(top, d);
    found = detail::nearest_center_where(lattice, [&](std::size_t i) { return lattice.degree(i) == top; });
  } else if (selector.starts_with("degree:") && selector.ends_with(":nearest-center")) {
    const auto body = selector.substr(7, selector.size() - 7 - 15);
    std::size_t d = 0;
    if (!detail::parse_index(body, d)) throw InvalidArgument("bad node selector '" + std::string(selector) + "'");
    found = detail::nearest_center_where(lattice, [&](std::size_t i) {
      return static_cast<std::size_t>(lattice.degree(i)) == d;
    });
  } else {
    throw InvalidArgument("bad node selector '" + std::string(selector) + "'");
  }
  if (found == kNoVertex) throw InvalidArgument("no vertex matches selector '" + std::string(selector) + "'");
  return found;
}

} // namespace penrose_ctqw

#pragma once

// Finite patches of the Penrose rhombus (P3) tiling and the pair classes
// used by the three-parameter hopping model.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "penrose_ctqw/error.hpp"

namespace penrose_ctqw {

inline constexpr double kGoldenRatio = std::numbers::phi;
inline constexpr double kEdgeLength = 1.0;
/// Short diagonal of the thin (36 degree) rhombus, 2 sin 18.
inline const double kThinDiagonal = 2.0 * std::sin(std::numbers::pi / 10.0);
/// Short diagonal of the fat (72 degree) rhombus, 2 sin 36.
inline const double kFatDiagonal = 2.0 * std::sin(std::numbers::pi / 5.0);
inline constexpr double kPairTolerance = 1e-6;
inline constexpr double kDedupTolerance = 1e-6;
inline constexpr int kMaxDepth = 8;
inline constexpr std::size_t kNoVertex = std::numeric_limits<std::size_t>::max();

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
  double norm() const { return std::hypot(x, y); }
};

inline double distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

struct Vertex {
  std::size_t id = 0;
  Vec2 pos;
};

/// Unordered vertex pair stored with first < second.
using Pair = std::pair<std::size_t, std::size_t>;

struct BondSet {
  std::vector<Pair> edges;
  std::vector<Pair> thin_diagonals;
  std::vector<Pair> fat_diagonals;

  friend bool operator==(const BondSet&, const BondSet&) = default;
};

enum class RhombusKind { Thin, Fat };

/// A rhombus of the tiling. Corners run cyclically: apex, base end b,
/// opposite apex, base end c, where b-c is the diagonal the two Robinson
/// half-tiles share. Rim tiles whose mirror half lies outside the patch
/// have `complete == false` and corners[2] == kNoVertex.
struct Rhombus {
  RhombusKind kind = RhombusKind::Fat;
  std::array<std::size_t, 4> corners{};
  bool complete = false;

  friend bool operator==(const Rhombus&, const Rhombus&) = default;
};

/// Robinson half-tile counts; each complete rhombus contributes two.
struct TileCounts {
  std::size_t fat_halves = 0;
  std::size_t thin_halves = 0;

  friend bool operator==(const TileCounts&, const TileCounts&) = default;
};

class PenroseLattice;
PenroseLattice generate(int depth);

/// Immutable vertex set plus classified bonds. Produced by generate(), or
/// from an arbitrary graph through from_graph() (toy graphs in tests and
/// lattices loaded from file carry no tiling information).
class PenroseLattice {
public:
  PenroseLattice() = default;

  static PenroseLattice from_graph(std::vector<Vec2> positions, BondSet bonds);

  std::size_t size() const { return vertices_.size(); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  Vec2 position(std::size_t id) const { return vertices_.at(id).pos; }
  const BondSet& bonds() const { return bonds_; }
  /// Number of incident edges (diagonals excluded).
  const std::vector<int>& degrees() const { return degrees_; }
  int degree(std::size_t id) const { return degrees_.at(id); }

  bool has_tiling() const { return depth_ >= 0; }
  /// Subdivision depth, or -1 when not produced by generate().
  int depth() const { return depth_; }
  const std::vector<Rhombus>& rhombi() const { return rhombi_; }
  TileCounts tile_counts() const { return tile_counts_; }
  /// True when the full 360 degrees around the vertex is covered by
  /// complete rhombi. Always false without tiling information.
  bool is_interior(std::size_t id) const { return has_tiling() && interior_.at(id); }

  const std::vector<std::vector<std::size_t>>& edge_neighbors() const { return neighbors_; }

private:
  friend PenroseLattice generate(int depth);

  void finalize_degrees();

  std::vector<Vertex> vertices_;
  BondSet bonds_;
  std::vector<int> degrees_;
  std::vector<std::vector<std::size_t>> neighbors_;
  std::vector<Rhombus> rhombi_;
  std::vector<bool> interior_;
  TileCounts tile_counts_;
  int depth_ = -1;
};

namespace detail {

using Complex = std::complex<double>;

struct HalfTile {
  RhombusKind kind;
  Complex apex;
  Complex b;
  Complex c;
};

/// Five fat rhombi meeting with their 72 degree corners at the origin, each
/// split along its long diagonal into two obtuse Robinson triangles.
inline std::vector<HalfTile> sun_seed(double edge) {
  std::vector<HalfTile> tiles;
  tiles.reserve(10);
  const double step = 2.0 * std::numbers::pi / 5.0;
  for (int k = 0; k < 5; ++k) {
    const Complex left = std::polar(edge, step * k);
    const Complex right = std::polar(edge, step * (k + 1));
    const Complex far = std::polar(edge * kGoldenRatio, step * k + std::numbers::pi / 5.0);
    tiles.push_back({RhombusKind::Fat, left, far, Complex{0.0, 0.0}});
    tiles.push_back({RhombusKind::Fat, right, far, Complex{0.0, 0.0}});
  }
  return tiles;
}

/// One Robinson deflation step; edge length shrinks by the golden ratio.
inline std::vector<HalfTile> subdivide(const std::vector<HalfTile>& tiles) {
  const double inv = 1.0 / kGoldenRatio;
  std::vector<HalfTile> out;
  out.reserve(tiles.size() * 3);
  for (const auto& t : tiles) {
    if (t.kind == RhombusKind::Thin) {
      const Complex p = t.apex + (t.b - t.apex) * inv;
      out.push_back({RhombusKind::Thin, t.c, p, t.b});
      out.push_back({RhombusKind::Fat, p, t.c, t.apex});
    } else {
      const Complex q = t.b + (t.apex - t.b) * inv;
      const Complex r = t.b + (t.c - t.b) * inv;
      out.push_back({RhombusKind::Fat, r, t.c, t.apex});
      out.push_back({RhombusKind::Fat, q, r, t.b});
      out.push_back({RhombusKind::Thin, r, q, t.apex});
    }
  }
  return out;
}

inline std::int64_t quantize(double v, double tol) { return std::llround(v / tol); }

struct KeyHash {
  std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& k) const noexcept {
    const auto h1 = static_cast<std::uint64_t>(k.first) * 0x9E3779B97F4A7C15ULL;
    const auto h2 = static_cast<std::uint64_t>(k.second) + 0x632BE59BD9B4E019ULL;
    return static_cast<std::size_t>(h1 ^ (h2 + (h1 << 6) + (h1 >> 2)));
  }
};

/// Merges points closer than `tol`; looks at neighbouring quantization
/// cells so points straddling a rounding boundary still merge.
class VertexPool {
public:
  explicit VertexPool(double tol) : tol_(tol) {}

  std::size_t insert(Complex z) {
    const std::int64_t kx = quantize(z.real(), tol_);
    const std::int64_t ky = quantize(z.imag(), tol_);
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = index_.find({kx + dx, ky + dy});
        if (it != index_.end() && std::abs(points_[it->second] - z) < tol_) return it->second;
      }
    }
    const std::size_t id = points_.size();
    points_.push_back(z);
    index_.emplace(std::make_pair(kx, ky), id);
    return id;
  }

  const std::vector<Complex>& points() const { return points_; }

private:
  double tol_;
  std::vector<Complex> points_;
  std::unordered_map<std::pair<std::int64_t, std::int64_t>, std::size_t, KeyHash> index_;
};

inline Pair ordered(std::size_t i, std::size_t j) { return i < j ? Pair{i, j} : Pair{j, i}; }

inline void normalize_pairs(std::vector<Pair>& pairs) {
  for (auto& p : pairs) p = ordered(p.first, p.second);
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
}

} // namespace detail

/// Distance scan over all vertex pairs: unit edges, thin short diagonals and
/// fat short diagonals, each within kPairTolerance. Lists are sorted.
inline BondSet classify_pairs(std::span<const Vec2> points) {
  const double lengths[3] = {kEdgeLength, kThinDiagonal, kFatDiagonal};
  const double cell = 1.25;

  std::unordered_map<std::pair<std::int64_t, std::int64_t>, std::vector<std::size_t>, detail::KeyHash>
      grid;
  auto cell_of = [&](Vec2 p) {
    return std::make_pair(static_cast<std::int64_t>(std::floor(p.x / cell)),
                          static_cast<std::int64_t>(std::floor(p.y / cell)));
  };
  for (std::size_t i = 0; i < points.size(); ++i) grid[cell_of(points[i])].push_back(i);

  BondSet out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [cx, cy] = cell_of(points[i]);
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = grid.find({cx + dx, cy + dy});
        if (it == grid.end()) continue;
        for (std::size_t j : it->second) {
          if (j <= i) continue;
          const double d = distance(points[i], points[j]);
          int matched = -1;
          for (int k = 0; k < 3; ++k) {
            if (std::abs(d - lengths[k]) <= kPairTolerance) {
              if (matched >= 0)
                throw ConsistencyError("pair (" + std::to_string(i) + ", " + std::to_string(j) +
                                       ") matches two bond classes");
              matched = k;
            }
          }
          if (matched == 0) out.edges.emplace_back(i, j);
          if (matched == 1) out.thin_diagonals.emplace_back(i, j);
          if (matched == 2) out.fat_diagonals.emplace_back(i, j);
        }
      }
    }
  }
  std::sort(out.edges.begin(), out.edges.end());
  std::sort(out.thin_diagonals.begin(), out.thin_diagonals.end());
  std::sort(out.fat_diagonals.begin(), out.fat_diagonals.end());
  return out;
}

inline BondSet classify_pairs(const PenroseLattice& lattice) {
  std::vector<Vec2> points;
  points.reserve(lattice.size());
  for (const auto& v : lattice.vertices()) points.push_back(v.pos);
  return classify_pairs(points);
}

inline void PenroseLattice::finalize_degrees() {
  degrees_.assign(vertices_.size(), 0);
  neighbors_.assign(vertices_.size(), {});
  for (auto [i, j] : bonds_.edges) {
    ++degrees_[i];
    ++degrees_[j];
    neighbors_[i].push_back(j);
    neighbors_[j].push_back(i);
  }
  for (auto& n : neighbors_) std::sort(n.begin(), n.end());
}

inline PenroseLattice PenroseLattice::from_graph(std::vector<Vec2> positions, BondSet bonds) {
  const std::size_t n = positions.size();
  for (auto* list : {&bonds.edges, &bonds.thin_diagonals, &bonds.fat_diagonals}) {
    for (auto [i, j] : *list) {
      if (i >= n || j >= n)
        throw BoundsError("bond (" + std::to_string(i) + ", " + std::to_string(j) +
                          ") references a vertex outside 0.." + std::to_string(n));
      if (i == j) throw InvalidArgument("self-bond at vertex " + std::to_string(i));
    }
    detail::normalize_pairs(*list);
  }
  std::vector<Pair> all;
  all.insert(all.end(), bonds.edges.begin(), bonds.edges.end());
  all.insert(all.end(), bonds.thin_diagonals.begin(), bonds.thin_diagonals.end());
  all.insert(all.end(), bonds.fat_diagonals.begin(), bonds.fat_diagonals.end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    throw InvalidArgument("bond classes are not disjoint");

  PenroseLattice lat;
  lat.vertices_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) lat.vertices_.push_back({i, positions[i]});
  lat.bonds_ = std::move(bonds);
  lat.finalize_degrees();
  return lat;
}

/// Robinson-triangle subdivision of the sun seed, `depth` times. Vertices
/// are deduplicated, edge length is 1 and ids follow the lexicographic order
/// of the quantized (x, y) coordinates.
inline PenroseLattice generate(int depth) {
  if (depth < 0 || depth > kMaxDepth)
    throw BoundsError("depth " + std::to_string(depth) + " outside 0.." + std::to_string(kMaxDepth));

  // Seeding at edge phi^depth makes the final edge length exactly the unit.
  auto tiles = detail::sun_seed(std::pow(kGoldenRatio, depth));
  for (int i = 0; i < depth; ++i) tiles = detail::subdivide(tiles);

  detail::VertexPool pool(kDedupTolerance);
  struct Indexed {
    RhombusKind kind;
    std::size_t apex, b, c;
  };
  std::vector<Indexed> halves;
  halves.reserve(tiles.size());
  for (const auto& t : tiles) halves.push_back({t.kind, pool.insert(t.apex), pool.insert(t.b), pool.insert(t.c)});

  const auto& raw = pool.points();
  const std::size_t n = raw.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  auto key = [&](std::size_t i) {
    return std::make_pair(detail::quantize(raw[i].real(), kDedupTolerance),
                          detail::quantize(raw[i].imag(), kDedupTolerance));
  };
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return key(l) < key(r); });
  std::vector<std::size_t> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[order[i]] = i;

  PenroseLattice lat;
  lat.depth_ = depth;
  lat.vertices_.reserve(n);
  std::vector<Vec2> positions(n);
  for (std::size_t i = 0; i < n; ++i) {
    positions[i] = {raw[order[i]].real(), raw[order[i]].imag()};
    lat.vertices_.push_back({i, positions[i]});
  }

  // Pair mirror halves across their shared base into rhombi.
  std::map<std::tuple<int, std::size_t, std::size_t>, std::vector<std::size_t>> by_base;
  for (std::size_t h = 0; h < halves.size(); ++h) {
    auto& t = halves[h];
    t = {t.kind, rank[t.apex], rank[t.b], rank[t.c]};
    const auto [lo, hi] = detail::ordered(t.b, t.c);
    by_base[{t.kind == RhombusKind::Fat ? 1 : 0, lo, hi}].push_back(h);
    if (t.kind == RhombusKind::Fat)
      ++lat.tile_counts_.fat_halves;
    else
      ++lat.tile_counts_.thin_halves;
  }

  std::vector<int> angle(n, 0);
  std::vector<bool> touches_partial(n, false);
  for (const auto& [base, members] : by_base) {
    if (members.size() > 2) throw ConsistencyError("more than two half-tiles share a base");
    const auto& first = halves[members[0]];
    Rhombus r;
    r.kind = first.kind;
    r.complete = members.size() == 2;
    r.corners = {first.apex, first.b, r.complete ? halves[members[1]].apex : kNoVertex, first.c};
    for (std::size_t h : members) {
      const auto& t = halves[h];
      const bool fat = t.kind == RhombusKind::Fat;
      angle[t.apex] += fat ? 108 : 36;
      angle[t.b] += fat ? 36 : 72;
      angle[t.c] += fat ? 36 : 72;
      if (!r.complete) touches_partial[t.apex] = touches_partial[t.b] = touches_partial[t.c] = true;
    }
    lat.rhombi_.push_back(r);
  }
  std::sort(lat.rhombi_.begin(), lat.rhombi_.end(), [](const Rhombus& l, const Rhombus& r) {
    return std::tie(l.kind, l.corners) < std::tie(r.kind, r.corners);
  });

  lat.interior_.resize(n);
  for (std::size_t i = 0; i < n; ++i) lat.interior_[i] = angle[i] == 360 && !touches_partial[i];

  lat.bonds_ = classify_pairs(positions);
  lat.finalize_degrees();
  return lat;
}

/// Edge-degree -> number of vertices.
inline std::map<int, std::size_t> degree_histogram(const PenroseLattice& lattice) {
  std::map<int, std::size_t> hist;
  for (int d : lattice.degrees()) ++hist[d];
  return hist;
}

/// BFS two-colouring of the edge graph; nullopt if an odd cycle exists.
inline std::optional<std::vector<int>> edge_graph_coloring(const PenroseLattice& lattice) {
  const auto& nbr = lattice.edge_neighbors();
  std::vector<int> color(lattice.size(), -1);
  for (std::size_t s = 0; s < lattice.size(); ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    std::queue<std::size_t> q;
    q.push(s);
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop();
      for (std::size_t v : nbr[u]) {
        if (color[v] < 0) {
          color[v] = 1 - color[u];
          q.push(v);
        } else if (color[v] == color[u]) {
          return std::nullopt;
        }
      }
    }
  }
  return color;
}

inline bool edge_graph_connected(const PenroseLattice& lattice) {
  if (lattice.size() == 0) return true;
  const auto& nbr = lattice.edge_neighbors();
  std::vector<bool> seen(lattice.size(), false);
  std::queue<std::size_t> q;
  q.push(0);
  seen[0] = true;
  std::size_t count = 1;
  while (!q.empty()) {
    const std::size_t u = q.front();
    q.pop();
    for (std::size_t v : nbr[u]) {
      if (!seen[v]) {
        seen[v] = true;
        ++count;
        q.push(v);
      }
    }
  }
  return count == lattice.size();
}

} // namespace penrose_ctqw

#pragma once

// File formats: lattice JSON, CSV/JSON tables, spectrum and sweep dumps,
// the SVG heatmap and candidate-state files.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "penrose_ctqw/ctqw.hpp"
#include "penrose_ctqw/error.hpp"
#include "penrose_ctqw/format.hpp"
#include "penrose_ctqw/lattice.hpp"
#include "penrose_ctqw/select.hpp"
#include "penrose_ctqw/spectral.hpp"
#include "penrose_ctqw/transport.hpp"

namespace penrose_ctqw {

using nlohmann::json;

// ---------------------------------------------------------------- lattice

inline json lattice_to_json(const PenroseLattice& lattice) {
  json j;
  j["edge_length"] = kEdgeLength;
  json verts = json::array();
  for (const auto& v : lattice.vertices()) verts.push_back({v.pos.x, v.pos.y});
  j["vertices"] = std::move(verts);
  auto pairs = [](const std::vector<Pair>& ps) {
    json a = json::array();
    for (auto [i, k] : ps) a.push_back({i, k});
    return a;
  };
  j["edges"] = pairs(lattice.bonds().edges);
  j["thin_diagonals"] = pairs(lattice.bonds().thin_diagonals);
  j["fat_diagonals"] = pairs(lattice.bonds().fat_diagonals);
  return j;
}

inline void write_lattice_json(std::ostream& os, const PenroseLattice& lattice) {
  os << lattice_to_json(lattice).dump(1) << '\n';
}

/// Schema problems in a lattice document; empty when it is valid.
inline std::vector<std::string> validate_lattice_json(const json& j) {
  std::vector<std::string> errs;
  if (!j.is_object()) return {"document is not an object"};
  for (const char* key : {"edge_length", "vertices", "edges", "thin_diagonals", "fat_diagonals"})
    if (!j.contains(key)) errs.push_back(std::string("missing key '") + key + "'");
  if (!errs.empty()) return errs;
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "edge_length" && it.key() != "vertices" && it.key() != "edges" &&
        it.key() != "thin_diagonals" && it.key() != "fat_diagonals")
      errs.push_back("unknown key '" + it.key() + "'");
  if (!j["edge_length"].is_number() || j["edge_length"].get<double>() != 1.0)
    errs.push_back("edge_length must be 1.0");
  const auto& verts = j["vertices"];
  std::size_t n = 0;
  if (!verts.is_array()) {
    errs.push_back("vertices must be an array");
  } else {
    n = verts.size();
    for (std::size_t i = 0; i < n; ++i)
      if (!verts[i].is_array() || verts[i].size() != 2 || !verts[i][0].is_number() || !verts[i][1].is_number())
        errs.push_back("vertex " + std::to_string(i) + " is not an [x, y] pair");
  }
  for (const char* key : {"edges", "thin_diagonals", "fat_diagonals"}) {
    const auto& list = j[key];
    if (!list.is_array()) {
      errs.push_back(std::string(key) + " must be an array");
      continue;
    }
    std::pair<std::uint64_t, std::uint64_t> prev{0, 0};
    for (std::size_t k = 0; k < list.size(); ++k) {
      const auto& p = list[k];
      const std::string where = std::string(key) + "[" + std::to_string(k) + "]";
      if (!p.is_array() || p.size() != 2 || !p[0].is_number_unsigned() || !p[1].is_number_unsigned()) {
        errs.push_back(where + " is not a pair of non-negative integers");
        continue;
      }
      const std::pair<std::uint64_t, std::uint64_t> cur{p[0].get<std::uint64_t>(), p[1].get<std::uint64_t>()};
      if (cur.first >= cur.second) errs.push_back(where + " must satisfy i < j");
      if (cur.second >= n) errs.push_back(where + " references a missing vertex");
      if (k > 0 && !(prev < cur)) errs.push_back(where + " breaks lexicographic order");
      prev = cur;
    }
  }
  return errs;
}

inline PenroseLattice lattice_from_json(const json& j) {
  const auto errs = validate_lattice_json(j);
  if (!errs.empty()) throw FormatError("invalid lattice file: " + errs.front());
  std::vector<Vec2> pos;
  for (const auto& v : j["vertices"]) pos.push_back({v[0].get<double>(), v[1].get<double>()});
  auto pairs = [](const json& list) {
    std::vector<Pair> out;
    for (const auto& p : list) out.emplace_back(p[0].get<std::size_t>(), p[1].get<std::size_t>());
    return out;
  };
  return PenroseLattice::from_graph(std::move(pos),
                                    {pairs(j["edges"]), pairs(j["thin_diagonals"]), pairs(j["fat_diagonals"])});
}

// ---------------------------------------------------------------- tables

/// Column-named rows of integers or reals, written as CSV or as a JSON
/// array of objects.
struct Table {
  using Cell = std::variant<std::int64_t, double>;

  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw ConsistencyError("table row width mismatch");
    rows.push_back(std::move(row));
  }
};

inline std::string format_cell(const Table::Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return format_double(std::get<double>(c));
}

inline void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t k = 0; k < t.columns.size(); ++k) os << (k ? "," : "") << t.columns[k];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << format_cell(row[k]);
    os << '\n';
  }
}

inline json table_to_json(const Table& t) {
  json out = json::array();
  for (const auto& row : t.rows) {
    json obj = json::object();
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (const auto* i = std::get_if<std::int64_t>(&row[k]))
        obj[t.columns[k]] = *i;
      else
        obj[t.columns[k]] = std::get<double>(row[k]);
    }
    out.push_back(std::move(obj));
  }
  return out;
}

enum class TableFormat { Csv, Json };

inline void write_table(std::ostream& os, const Table& t, TableFormat f) {
  if (f == TableFormat::Csv)
    write_csv(os, t);
  else
    os << table_to_json(t).dump(1) << '\n';
}

/// index,eigenvalue,cluster_id
inline Table spectrum_table(const Spectrum& spec) {
  Table t{{"index", "eigenvalue", "cluster_id"}, {}};
  const auto ids = spec.cluster_ids();
  for (std::size_t n = 0; n < spec.size(); ++n)
    t.add({static_cast<std::int64_t>(n), spec.eigenvalues(static_cast<Eigen::Index>(n)),
           static_cast<std::int64_t>(ids[n])});
  return t;
}

/// node_id,x,y,probability
inline Table distribution_table(const PenroseLattice& lattice, const Eigen::VectorXd& probs) {
  if (static_cast<std::size_t>(probs.size()) != lattice.size())
    throw InvalidArgument("distribution and lattice sizes differ");
  Table t{{"node_id", "x", "y", "probability"}, {}};
  for (const auto& v : lattice.vertices())
    t.add({static_cast<std::int64_t>(v.id), v.pos.x, v.pos.y, probs(static_cast<Eigen::Index>(v.id))});
  return t;
}

/// b,c,chi_bar rows, b-major.
inline Table sweep_table(const SweepGrid& grid) {
  Table t{{"b", "c", "chi_bar"}, {}};
  for (std::size_t ib = 0; ib < grid.b_values.size(); ++ib)
    for (std::size_t ic = 0; ic < grid.c_values.size(); ++ic)
      t.add({grid.b_values[ib], grid.c_values[ic],
             grid.chi_bar(static_cast<Eigen::Index>(ib), static_cast<Eigen::Index>(ic))});
  return t;
}

inline json report_to_json(const EfficiencyReport& r) {
  json j;
  j["n"] = r.n;
  j["chi_bar"] = r.chi_bar;
  j["d0_over_n"] = r.d0_over_n;
  j["d0_upper_bound"] = r.d0_upper_bound;
  j["degeneracy_lta"] = r.degeneracy_lta;
  json series = json::array();
  for (auto [t, v] : r.alpha_bar_series) series.push_back({{"t", t}, {"alpha_bar_sq", v}});
  j["alpha_bar_series"] = std::move(series);
  return j;
}

// ---------------------------------------------------------------- states

/// Accepts {"amplitudes": [[id, amp], ...]} or {"amplitudes": {"id": amp, ...}}.
inline SparseState sparse_state_from_json(const json& j) {
  if (!j.is_object() || !j.contains("amplitudes")) throw FormatError("state file needs an 'amplitudes' entry");
  SparseState out;
  const auto& a = j["amplitudes"];
  auto put = [&](std::size_t id, double amp) {
    if (!out.emplace(id, amp).second) throw FormatError("node " + std::to_string(id) + " listed twice");
  };
  if (a.is_array()) {
    for (const auto& e : a) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number())
        throw FormatError("amplitude entries must be [id, value]");
      put(e[0].get<std::size_t>(), e[1].get<double>());
    }
  } else if (a.is_object()) {
    for (auto it = a.begin(); it != a.end(); ++it) {
      std::size_t id = 0;
      if (!detail::parse_index(it.key(), id) || !it.value().is_number())
        throw FormatError("amplitude keys must be node ids with numeric values");
      put(id, it.value().get<double>());
    }
  } else {
    throw FormatError("'amplitudes' must be an array or object");
  }
  return out;
}

// ---------------------------------------------------------------- SVG

/// Heatmap of a sweep: one rect per cell, linear blue-to-red map between the
/// grid minimum and maximum, labelled axes. Failed (NaN) cells are grey.
inline void write_sweep_svg(std::ostream& os, const SweepGrid& grid) {
  const std::size_t nb = grid.b_values.size(), nc = grid.c_values.size();
  const double cell = 24.0, left = 70.0, top = 30.0, bar = 20.0;
  const double width = left + cell * static_cast<double>(nb) + 110.0;
  const double height = top + cell * static_cast<double>(nc) + 60.0;

  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (Eigen::Index i = 0; i < grid.chi_bar.size(); ++i) {
    const double v = grid.chi_bar.data()[i];
    if (std::isnan(v)) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  auto color = [&](double v) {
    if (std::isnan(v)) return std::string("#888888");
    const double s = hi > lo ? (v - lo) / (hi - lo) : 0.0;
    const int r = static_cast<int>(std::lround(255.0 * s));
    const int b = static_cast<int>(std::lround(255.0 * (1.0 - s)));
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, 64, b);
    return std::string(buf);
  };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_double(width) << "\" height=\""
     << format_double(height) << "\">\n";
  os << "<title>chi_bar over (b, c), a = " << format_double(grid.a) << ", N = " << grid.n << "</title>\n";
  // b runs left to right, c bottom to top
  for (std::size_t ib = 0; ib < nb; ++ib) {
    for (std::size_t ic = 0; ic < nc; ++ic) {
      const double v = grid.chi_bar(static_cast<Eigen::Index>(ib), static_cast<Eigen::Index>(ic));
      const double x = left + cell * static_cast<double>(ib);
      const double y = top + cell * static_cast<double>(nc - 1 - ic);
      os << "<rect x=\"" << format_double(x) << "\" y=\"" << format_double(y) << "\" width=\"" << cell
         << "\" height=\"" << cell << "\" fill=\"" << color(v) << "\"><title>b=" << format_double(grid.b_values[ib])
         << " c=" << format_double(grid.c_values[ic]) << " chi_bar=" << format_double(v) << "</title></rect>\n";
    }
  }
  const double plot_bottom = top + cell * static_cast<double>(nc);
  os << "<text x=\"" << format_double(left + cell * static_cast<double>(nb) / 2) << "\" y=\""
     << format_double(plot_bottom + 40) << "\" text-anchor=\"middle\" font-size=\"14\">b</text>\n";
  os << "<text x=\"20\" y=\"" << format_double(top + cell * static_cast<double>(nc) / 2)
     << "\" text-anchor=\"middle\" font-size=\"14\">c</text>\n";
  os << "<text x=\"" << format_double(left) << "\" y=\"" << format_double(plot_bottom + 18)
     << "\" font-size=\"11\">" << format_double(grid.b_values.front()) << "</text>\n";
  os << "<text x=\"" << format_double(left + cell * static_cast<double>(nb)) << "\" y=\""
     << format_double(plot_bottom + 18) << "\" text-anchor=\"end\" font-size=\"11\">"
     << format_double(grid.b_values.back()) << "</text>\n";
  os << "<text x=\"" << format_double(left - 6) << "\" y=\"" << format_double(plot_bottom)
     << "\" text-anchor=\"end\" font-size=\"11\">" << format_double(grid.c_values.front()) << "</text>\n";
  os << "<text x=\"" << format_double(left - 6) << "\" y=\"" << format_double(top + 10)
     << "\" text-anchor=\"end\" font-size=\"11\">" << format_double(grid.c_values.back()) << "</text>\n";
  // color bar
  const double bx = left + cell * static_cast<double>(nb) + 20;
  for (int k = 0; k < 10; ++k) {
    const double v = lo + (hi - lo) * (9 - k) / 9.0;
    os << "<rect x=\"" << format_double(bx) << "\" y=\"" << format_double(top + k * 15.0) << "\" width=\"" << bar
       << "\" height=\"15\" fill=\"" << color(v) << "\"/>\n";
  }
  os << "<text x=\"" << format_double(bx + bar + 4) << "\" y=\"" << format_double(top + 10)
     << "\" font-size=\"11\">" << format_double(hi) << "</text>\n";
  os << "<text x=\"" << format_double(bx + bar + 4) << "\" y=\"" << format_double(top + 150)
     << "\" font-size=\"11\">" << format_double(lo) << "</text>\n";
  os << "</svg>\n";
}

} // namespace penrose_ctqw

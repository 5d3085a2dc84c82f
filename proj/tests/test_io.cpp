#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "penrose_ctqw/io.hpp"

using namespace penrose_ctqw;

namespace {

std::size_t count_of(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

} // namespace

TEST(LatticeJson, RoundTrip) {
  const auto lat = generate(3);
  std::stringstream ss;
  write_lattice_json(ss, lat);
  const auto doc = json::parse(ss.str());
  EXPECT_TRUE(validate_lattice_json(doc).empty());
  const auto back = lattice_from_json(doc);
  ASSERT_EQ(back.size(), lat.size());
  EXPECT_EQ(back.bonds(), lat.bonds());
  for (std::size_t i = 0; i < lat.size(); ++i) {
    EXPECT_EQ(back.position(i).x, lat.position(i).x);
    EXPECT_EQ(back.position(i).y, lat.position(i).y);
  }
  EXPECT_EQ(doc["edge_length"], 1.0);
}

TEST(LatticeJson, ValidationErrors) {
  auto doc = lattice_to_json(generate(0));
  EXPECT_TRUE(validate_lattice_json(doc).empty());

  auto missing = doc;
  missing.erase("edges");
  EXPECT_FALSE(validate_lattice_json(missing).empty());

  auto extra = doc;
  extra["colour"] = "red";
  EXPECT_FALSE(validate_lattice_json(extra).empty());

  auto unordered = doc;
  std::swap(unordered["edges"][0], unordered["edges"][1]);
  EXPECT_FALSE(validate_lattice_json(unordered).empty());

  auto reversed = doc;
  reversed["edges"][0] = {3, 1};
  EXPECT_FALSE(validate_lattice_json(reversed).empty());

  auto dangling = doc;
  dangling["fat_diagonals"] = {{0, 99}};
  EXPECT_FALSE(validate_lattice_json(dangling).empty());

  auto scale = doc;
  scale["edge_length"] = 2.0;
  EXPECT_FALSE(validate_lattice_json(scale).empty());

  EXPECT_THROW(lattice_from_json(dangling), FormatError);
  EXPECT_FALSE(validate_lattice_json(json::array()).empty());
}

TEST(Tables, CsvHeadersAndRows) {
  const auto spec = decompose(build(oracle::cycle(4), HoppingModel::edges_only()));
  std::ostringstream os;
  write_csv(os, spectrum_table(spec));
  const auto text = os.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "index,eigenvalue,cluster_id");
  EXPECT_EQ(count_of(text, "\n"), 5u);

  Eigen::VectorXd p = Eigen::VectorXd::Constant(4, 0.25);
  std::ostringstream d;
  write_csv(d, distribution_table(oracle::cycle(4), p));
  EXPECT_EQ(d.str().substr(0, d.str().find('\n')), "node_id,x,y,probability");
  EXPECT_NE(d.str().find("\n2,2,0,0.25\n"), std::string::npos);
  EXPECT_THROW(distribution_table(oracle::cycle(4), Eigen::VectorXd::Zero(3)), InvalidArgument);
}

TEST(Tables, JsonRowsAreObjects) {
  Table t{{"k", "v"}, {}};
  t.add({std::int64_t{3}, 0.5});
  const auto j = table_to_json(t);
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0]["k"], 3);
  EXPECT_EQ(j[0]["v"], 0.5);
  EXPECT_THROW(t.add({1.0}), ConsistencyError);
  std::ostringstream os;
  write_table(os, t, TableFormat::Json);
  EXPECT_EQ(json::parse(os.str()), j);
}

TEST(Tables, DoublesRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(1.618), "1.618");
  const double x = 0.1 + 0.2;
  EXPECT_EQ(std::stod(format_double(x)), x);
}

TEST(Sweep, TableAndSvg) {
  const auto grid = sweep(generate(1), 1.0, {0.0, 1.0}, {0.0, 0.5, 1.0}, {1, std::nullopt});
  const auto t = sweep_table(grid);
  EXPECT_EQ(t.columns, (std::vector<std::string>{"b", "c", "chi_bar"}));
  ASSERT_EQ(t.rows.size(), 6u);
  EXPECT_EQ(std::get<double>(t.rows[1][1]), 0.5);
  std::ostringstream os;
  write_sweep_svg(os, grid);
  const auto svg = os.str();
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  // six cells plus ten colour-bar swatches
  EXPECT_EQ(count_of(svg, "<rect"), 16u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(Report, JsonFields) {
  const auto spec = decompose(build(oracle::cycle(4), HoppingModel::edges_only()));
  const std::vector<double> times{0.0};
  const auto j = report_to_json(efficiency_report(spec, times));
  EXPECT_EQ(j["n"], 4);
  EXPECT_NEAR(j["chi_bar"].get<double>(), 0.375, 1e-12);
  EXPECT_NEAR(j["d0_over_n"].get<double>(), 0.5, 1e-12);
  EXPECT_EQ(j["alpha_bar_series"].size(), 1u);
}

TEST(State, BothAmplitudeForms) {
  const auto a = sparse_state_from_json(json::parse(R"({"amplitudes": [[0, 0.6], [3, -0.8]]})"));
  const auto b = sparse_state_from_json(json::parse(R"({"amplitudes": {"0": 0.6, "3": -0.8}})"));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.at(3), -0.8);
  EXPECT_THROW(sparse_state_from_json(json::parse(R"({"amplitudes": [[0, 1], [0, 1]]})")), FormatError);
  EXPECT_THROW(sparse_state_from_json(json::parse(R"({"amplitudes": [[-1, 1]]})")), FormatError);
  EXPECT_THROW(sparse_state_from_json(json::parse(R"({"amps": []})")), FormatError);
  EXPECT_THROW(sparse_state_from_json(json::parse(R"({"amplitudes": {"x": 1}})")), FormatError);
}

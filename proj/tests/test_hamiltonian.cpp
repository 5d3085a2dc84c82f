#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "penrose_ctqw/hamiltonian.hpp"
#include "penrose_ctqw/lattice.hpp"

using namespace penrose_ctqw;

TEST(Build, EdgesOnlyIsTheAdjacencyMatrix) {
  const auto lat = generate(4);
  const auto h = build(lat, HoppingModel::edges_only());
  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(lat.size(), lat.size());
  for (auto [i, j] : lat.bonds().edges) adj(i, j) = adj(j, i) = 1.0;
  EXPECT_EQ(h.matrix(), adj);
  EXPECT_EQ(h.matrix().diagonal(), Eigen::VectorXd::Zero(lat.size()));
}

TEST(Build, DiagonalHoppingsStoredExactly) {
  const auto lat = generate(3);
  const auto h = build(lat, HoppingModel::thin_fat_near());
  for (auto [i, j] : lat.bonds().edges) EXPECT_EQ(h(i, j), 1.0);
  for (auto [i, j] : lat.bonds().thin_diagonals) {
    EXPECT_EQ(h(i, j), 1.618);
    EXPECT_EQ(h(j, i), 1.618);
  }
  for (auto [i, j] : lat.bonds().fat_diagonals) EXPECT_EQ(h(i, j), 0.85);
}

TEST(Build, NonzeroCountIsTwicePerActiveBond) {
  const auto lat = generate(4);
  const auto& b = lat.bonds();
  EXPECT_EQ(build(lat, {1, 0, 0}).nonzeros(), 2 * b.edges.size());
  EXPECT_EQ(build(lat, {1, 1.618, 0}).nonzeros(), 2 * (b.edges.size() + b.thin_diagonals.size()));
  EXPECT_EQ(build(lat, {1, 1.618, 0.85}).nonzeros(),
            2 * (b.edges.size() + b.thin_diagonals.size() + b.fat_diagonals.size()));
}

TEST(Build, TwoSiteToy) {
  const auto h = build(oracle::path(2), {2.0, 0.0, 0.0});
  Eigen::Matrix2d expected;
  expected << 0, 2, 2, 0;
  EXPECT_EQ(h.matrix(), Eigen::MatrixXd(expected));
  EXPECT_DOUBLE_EQ(h.norm(), 2.0);
}

TEST(Build, RejectsInvalidModels) {
  const auto lat = oracle::path(3);
  EXPECT_THROW(build(lat, {0.0, 0.0, 0.0}), InvalidArgument);
  EXPECT_THROW(build(lat, {-1.0, 0.0, 0.0}), InvalidArgument);
  EXPECT_THROW(build(lat, {1.0, -0.1, 0.0}), InvalidArgument);
  EXPECT_THROW(build(lat, {1.0, 0.0, -0.1}), InvalidArgument);
  EXPECT_THROW(build(lat, {1.0, std::nan(""), 0.0}), InvalidArgument);
  EXPECT_THROW(build(lat, {1.0, 0.0, INFINITY}), InvalidArgument);
}

TEST(Build, InverseDistancePreset) {
  const auto m = HoppingModel::inverse_distance();
  EXPECT_NEAR(m.b, 1.0 / (2.0 * std::sin(M_PI / 10)), 1e-12);
  EXPECT_NEAR(m.c, 1.0 / (2.0 * std::sin(M_PI / 5)), 1e-12);
}

TEST(Hamiltonian, FromMatrixRequiresSymmetry) {
  Eigen::MatrixXd m(2, 2);
  m << 0, 1, 1.0000001, 0;
  EXPECT_THROW(Hamiltonian::from_matrix(m), InvalidArgument);
  EXPECT_THROW(Hamiltonian::from_matrix(Eigen::MatrixXd::Zero(2, 3)), InvalidArgument);
}

TEST(Hamiltonian, CoordinateDump) {
  const auto h = build(oracle::path(3), {1.0, 0.0, 0.0});
  std::ostringstream os;
  write_coordinate_dump(os, h);
  EXPECT_EQ(os.str(), "0 1 1\n1 0 1\n1 2 1\n2 1 1\n");
}

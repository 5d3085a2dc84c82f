#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "penrose_ctqw/transport.hpp"

using namespace penrose_ctqw;

namespace {

Spectrum spectrum_of(const PenroseLattice& lat, HoppingModel m = HoppingModel::edges_only()) {
  return decompose(build(lat, m));
}

} // namespace

TEST(ReturnProbability, AverageStartsAtOne) {
  const auto spec = spectrum_of(generate(3));
  EXPECT_NEAR(average_return_probability(spec, 0.0), 1.0, 1e-12);
  for (double t : {0.5, 2.0, 40.0})
    EXPECT_GE(average_return_probability(spec, t) + 1e-12, std::norm(alpha_bar(spec, t)));
}

TEST(ReturnProbability, FourCycleMatchesClosedForm) {
  const auto spec = spectrum_of(oracle::cycle(4));
  for (double t : {0.3, 1.7})
    EXPECT_NEAR(average_return_probability(spec, t), std::pow(std::cos(t), 4), 1e-12);
  EXPECT_NEAR(std::abs(alpha_bar(spec, M_PI / 2)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(alpha_bar(spec, 0.0)), 1.0, 1e-12);
  EXPECT_NEAR(alpha_bar_squared_lta(spec), 0.25 * 0.25 + 0.5 * 0.5 + 0.25 * 0.25, 1e-12);
}

TEST(AlphaBar, TimeAverageApproachesDegeneracyLta) {
  const auto spec = spectrum_of(generate(2));
  double sum = 0.0;
  const int samples = 20000;
  const double horizon = 4000.0;
  for (int s = 0; s < samples; ++s) sum += std::norm(alpha_bar(spec, horizon * (s + 0.5) / samples));
  EXPECT_NEAR(sum / samples, alpha_bar_squared_lta(spec), 5e-3);
}

TEST(AlphaBar, DegeneracyLtaExamples) {
  EXPECT_NEAR(alpha_bar_squared_lta(spectrum_of(oracle::path(2))), 0.5, 1e-12);
  // K5: eigenvalues 4 and -1 (x4)
  EXPECT_NEAR(alpha_bar_squared_lta(spectrum_of(oracle::complete(5))), 0.04 + 0.64, 1e-12);
}

TEST(Efficiency, InequalityChain) {
  for (auto m : {HoppingModel::edges_only(), HoppingModel::thin_near(), HoppingModel::thin_fat_near()}) {
    const auto spec = spectrum_of(generate(4), m);
    const auto r = efficiency_report(spec);
    EXPECT_EQ(r.n, 306u);
    EXPECT_GE(r.chi_bar + 1e-12, r.degeneracy_lta);
    EXPECT_GE(r.degeneracy_lta + 1e-12, r.d0_over_n * r.d0_over_n);
    EXPECT_GE(r.d0_upper_bound + 1e-12, r.d0_over_n);
    EXPECT_NEAR(r.d0_upper_bound, std::sqrt(r.chi_bar), 1e-15);
  }
}

TEST(Efficiency, SeriesSampled) {
  const auto spec = spectrum_of(oracle::cycle(4));
  const std::vector<double> times{0.0, M_PI / 2};
  const auto r = efficiency_report(spec, times);
  ASSERT_EQ(r.alpha_bar_series.size(), 2u);
  EXPECT_NEAR(r.alpha_bar_series[0].second, 1.0, 1e-12);
  EXPECT_NEAR(r.alpha_bar_series[1].second, 0.0, 1e-12);
  EXPECT_NEAR(r.chi_bar, 3.0 / 8.0, 1e-12);
}

TEST(ThresholdTable, CountsAndMonotone) {
  Eigen::VectorXd r(4);
  r << 0.01, 0.02, 0.05, 0.1;
  const std::vector<double> th{0.015, 0.05, 0.2};
  EXPECT_EQ(threshold_table(r, th), (std::vector<double>{0.75, 0.5, 0.0}));
  const std::vector<double> bad{0.05, 0.01};
  EXPECT_THROW(threshold_table(r, bad), InvalidArgument);

  const auto spec = spectrum_of(generate(4));
  const auto frac = threshold_table(lta_exact(spec), table1_thresholds());
  ASSERT_EQ(frac.size(), 6u);
  for (std::size_t i = 1; i < frac.size(); ++i) EXPECT_LE(frac[i], frac[i - 1]);
  for (double f : frac) {
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0);
  }
}

TEST(Transport, ChiBarPermutationInvariant) {
  const auto lat = generate(3);
  std::vector<std::size_t> perm(lat.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), std::mt19937(7));
  std::vector<Vec2> pos(lat.size());
  for (std::size_t i = 0; i < lat.size(); ++i) pos[perm[i]] = lat.position(i);
  auto remap = [&](const std::vector<Pair>& ps) {
    std::vector<Pair> out;
    for (auto [i, j] : ps) out.emplace_back(perm[i], perm[j]);
    return out;
  };
  const auto& b = lat.bonds();
  const auto shuffled = PenroseLattice::from_graph(pos, {remap(b.edges), remap(b.thin_diagonals), remap(b.fat_diagonals)});
  for (auto m : {HoppingModel::edges_only(), HoppingModel::thin_fat_near()})
    EXPECT_NEAR(chi_bar_for(lat, m), chi_bar_for(shuffled, m), 1e-10);
}

TEST(Transport, ZeroStateSupportProfile) {
  const auto lat = generate(5);
  const auto spec = spectrum_of(lat);
  const auto profile = zero_state_support_profile(spec, lat);
  double total = 0.0;
  for (auto [d, w] : profile) total += w;
  EXPECT_NEAR(total, static_cast<double>(spec.d0()), 1e-8);
  EXPECT_GT(profile.at(3), profile.at(5));
  EXPECT_TRUE(zero_state_support_profile(spectrum_of(oracle::path(2)), oracle::path(2)).empty());
  EXPECT_THROW(zero_state_support_profile(spec, generate(4)), InvalidArgument);
}

TEST(Transport, HubCarriesLittleZeroWeightWithThinBonds) {
  const auto lat = generate(5);
  const auto spec = spectrum_of(lat, HoppingModel::thin_near());
  const auto p0 = spec.zero_projector_diagonal();
  double hub = 0.0, rest = 0.0;
  std::size_t n_hub = 0;
  for (std::size_t j = 0; j < lat.size(); ++j) {
    if (lat.degree(j) == 7) {
      hub += p0(static_cast<Eigen::Index>(j));
      ++n_hub;
    } else {
      rest += p0(static_cast<Eigen::Index>(j));
    }
  }
  ASSERT_GT(n_hub, 0u);
  EXPECT_LE(hub / static_cast<double>(n_hub), rest / static_cast<double>(lat.size() - n_hub) + 1e-12);
}

TEST(Sweep, DeterministicAndThreadIndependent) {
  const auto lat = generate(2);
  const auto b = linear_axis(0.0, 2.0, 3), c = linear_axis(0.0, 1.0, 2);
  const auto one = sweep(lat, 1.0, b, c, {1, std::nullopt});
  const auto four = sweep(lat, 1.0, b, c, {4, std::nullopt});
  EXPECT_EQ(one.chi_bar, four.chi_bar);
  EXPECT_TRUE(one.failures.empty());
  EXPECT_EQ(one.chi_bar.rows(), 3);
  EXPECT_EQ(one.chi_bar.cols(), 2);
  EXPECT_DOUBLE_EQ(one.chi_bar(2, 1), chi_bar_for(lat, {1.0, 2.0, 1.0}));
  EXPECT_EQ(one.n, lat.size());
}

TEST(Sweep, FailedCellRecorded) {
  const auto lat = generate(1);
  const auto grid = sweep(lat, 1.0, {0.0, INFINITY}, {0.0}, {2, std::nullopt});
  ASSERT_EQ(grid.failures.size(), 1u);
  EXPECT_EQ(grid.failures[0].b_index, 1u);
  EXPECT_TRUE(std::isnan(grid.chi_bar(1, 0)));
  EXPECT_FALSE(std::isnan(grid.chi_bar(0, 0)));
}

TEST(Sweep, AxisValidation) {
  const auto lat = generate(0);
  EXPECT_THROW(sweep(lat, 1.0, {}, {0.0}), InvalidArgument);
  EXPECT_THROW(sweep(lat, 1.0, {-1.0}, {0.0}), InvalidArgument);
  EXPECT_THROW(sweep(lat, 0.0, {0.0}, {0.0}), InvalidArgument);
  EXPECT_THROW(linear_axis(0, 1, 0), InvalidArgument);
  EXPECT_EQ(linear_axis(0, 2, 5), (std::vector<double>{0, 0.5, 1, 1.5, 2}));
  EXPECT_EQ(linear_axis(3, 4, 1), (std::vector<double>{3}));
}

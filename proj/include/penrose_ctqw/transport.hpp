#pragma once

// Network-level efficiency measures: average return probability, the
// degeneracy lower bound |alpha_bar(t)|^2, chi_bar, threshold statistics
// and the (b, c) hopping sweep.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "penrose_ctqw/ctqw.hpp"
#include "penrose_ctqw/error.hpp"
#include "penrose_ctqw/hamiltonian.hpp"
#include "penrose_ctqw/lattice.hpp"
#include "penrose_ctqw/spectral.hpp"

namespace penrose_ctqw {

/// (1/N) sum_j pi_jj(t).
inline double average_return_probability(const Spectrum& spec, double t) {
  detail::check_time(t);
  const auto& v = spec.eigenvectors;
  const Eigen::ArrayXd phase = spec.eigenvalues.array() * t;
  const Eigen::MatrixXd w = v.array().square().matrix();
  const Eigen::ArrayXd re = (w * phase.cos().matrix()).array();
  const Eigen::ArrayXd im = (w * phase.sin().matrix()).array();
  return (re.square() + im.square()).mean();
}

/// (1/N) sum_n exp(-i E_n t).
inline std::complex<double> alpha_bar(const Spectrum& spec, double t) {
  detail::check_time(t);
  std::complex<double> sum{0.0, 0.0};
  for (Eigen::Index n = 0; n < spec.eigenvalues.size(); ++n) sum += std::polar(1.0, -spec.eigenvalues(n) * t);
  return sum / static_cast<double>(spec.size());
}

/// Long-time average of |alpha_bar(t)|^2, sum_E (D_E / N)^2.
inline double alpha_bar_squared_lta(const Spectrum& spec) {
  const double n = static_cast<double>(spec.size());
  double sum = 0.0;
  for (const auto& c : spec.clusters) sum += std::pow(static_cast<double>(c.size()) / n, 2);
  return sum;
}

struct EfficiencyReport {
  std::size_t n = 0;
  double chi_bar = 0.0;
  double d0_over_n = 0.0;
  /// sqrt(chi_bar): upper bound on D_0 / N.
  double d0_upper_bound = 0.0;
  double degeneracy_lta = 0.0;
  std::vector<std::pair<double, double>> alpha_bar_series;
};

/// chi_bar from the LTA diagonal plus the degeneracy quantities. When
/// `series_times` is given, |alpha_bar(t)|^2 is sampled there.
inline EfficiencyReport efficiency_report(const Spectrum& spec, std::span<const double> series_times = {}) {
  EfficiencyReport r;
  r.n = spec.size();
  if (r.n == 0) return r;
  r.chi_bar = lta_diagonal(spec).mean();
  r.d0_over_n = static_cast<double>(spec.d0()) / static_cast<double>(r.n);
  r.d0_upper_bound = std::sqrt(r.chi_bar);
  r.degeneracy_lta = alpha_bar_squared_lta(spec);
  r.alpha_bar_series.reserve(series_times.size());
  for (double t : series_times) r.alpha_bar_series.emplace_back(t, std::norm(alpha_bar(spec, t)));
  return r;
}

/// Fraction of nodes with R_j >= theta, for each ascending threshold theta.
inline std::vector<double> threshold_table(const Eigen::VectorXd& return_probs, std::span<const double> thresholds) {
  if (!std::is_sorted(thresholds.begin(), thresholds.end()))
    throw InvalidArgument("thresholds must be ascending");
  std::vector<double> out;
  out.reserve(thresholds.size());
  const double n = static_cast<double>(return_probs.size());
  for (double th : thresholds)
    out.push_back(n == 0 ? 0.0 : static_cast<double>((return_probs.array() >= th).count()) / n);
  return out;
}

inline std::vector<double> threshold_table(const LtaMatrix& lta, std::span<const double> thresholds) {
  return threshold_table(Eigen::VectorXd(lta.chi.diagonal()), thresholds);
}

inline const std::vector<double>& table1_thresholds() {
  static const std::vector<double> t{0.015, 0.030, 0.045, 0.060, 0.075, 0.090};
  return t;
}

/// Sum of (P_0)_jj over nodes of each edge-degree. Empty when D_0 = 0.
inline std::map<int, double> zero_state_support_profile(const Spectrum& spec, const PenroseLattice& lattice) {
  if (spec.size() != lattice.size()) throw InvalidArgument("spectrum and lattice sizes differ");
  std::map<int, double> profile;
  if (!spec.zero_cluster) return profile;
  const Eigen::VectorXd p0 = spec.zero_projector_diagonal();
  for (std::size_t j = 0; j < lattice.size(); ++j) profile[lattice.degree(j)] += p0(static_cast<Eigen::Index>(j));
  return profile;
}

struct SweepFailure {
  std::size_t b_index = 0;
  std::size_t c_index = 0;
  std::string message;
};

struct SweepGrid {
  std::vector<double> b_values;
  std::vector<double> c_values;
  /// chi_bar(b_index, c_index); NaN where the cell failed.
  Eigen::MatrixXd chi_bar;
  std::size_t n = 0;
  double a = 1.0;
  std::vector<SweepFailure> failures;
};

struct SweepOptions {
  /// 0 means std::thread::hardware_concurrency().
  unsigned threads = 0;
  std::optional<double> eigen_tolerance;
};

/// Evenly spaced axis with `steps` points from lo to hi inclusive.
inline std::vector<double> linear_axis(double lo, double hi, std::size_t steps) {
  if (steps == 0) throw InvalidArgument("axis needs at least one point");
  std::vector<double> axis(steps);
  for (std::size_t i = 0; i < steps; ++i)
    axis[i] = steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
  return axis;
}

/// chi_bar for one hopping model on a fixed lattice.
inline double chi_bar_for(const PenroseLattice& lattice, const HoppingModel& model,
                          std::optional<double> tol = std::nullopt) {
  return lta_diagonal(decompose(build(lattice, model), tol)).mean();
}

/// chi_bar over a (b, c) grid at fixed a. Cells run on a fork-join pool and
/// write to fixed slots, so the result does not depend on scheduling. A
/// failing cell is recorded and left NaN.
inline SweepGrid sweep(const PenroseLattice& lattice, double a, std::vector<double> b_axis,
                       std::vector<double> c_axis, const SweepOptions& opts = {}) {
  if (b_axis.empty() || c_axis.empty()) throw InvalidArgument("sweep axes must be non-empty");
  for (double v : b_axis)
    if (!(v >= 0.0)) throw InvalidArgument("sweep b values must be non-negative");
  for (double v : c_axis)
    if (!(v >= 0.0)) throw InvalidArgument("sweep c values must be non-negative");
  HoppingModel{a, 0.0, 0.0}.validate();

  SweepGrid grid;
  grid.b_values = std::move(b_axis);
  grid.c_values = std::move(c_axis);
  grid.n = lattice.size();
  grid.a = a;
  const std::size_t nb = grid.b_values.size(), nc = grid.c_values.size(), cells = nb * nc;
  grid.chi_bar = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(nb), static_cast<Eigen::Index>(nc),
                                           std::numeric_limits<double>::quiet_NaN());
  std::vector<std::optional<std::string>> errors(cells);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t cell = next++; cell < cells; cell = next++) {
      const std::size_t ib = cell / nc, ic = cell % nc;
      try {
        grid.chi_bar(static_cast<Eigen::Index>(ib), static_cast<Eigen::Index>(ic)) =
            chi_bar_for(lattice, {a, grid.b_values[ib], grid.c_values[ic]}, opts.eigen_tolerance);
      } catch (const std::exception& e) {
        errors[cell] = e.what();
      }
    }
  };

  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, cells));
  {
    std::vector<std::jthread> pool;
    for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
  }

  for (std::size_t cell = 0; cell < cells; ++cell)
    if (errors[cell]) grid.failures.push_back({cell / nc, cell % nc, *errors[cell]});
  return grid;
}

} // namespace penrose_ctqw

#pragma once

// Continuous-time quantum walk on a decomposed Hamiltonian: transition
// probabilities, long-time averages and return-probability lower bounds.

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "penrose_ctqw/error.hpp"
#include "penrose_ctqw/hamiltonian.hpp"
#include "penrose_ctqw/spectral.hpp"

namespace penrose_ctqw {

inline constexpr double kProbabilitySlack = 1e-12;

struct TransitionSnapshot {
  double t = 0.0;
  /// probs(k, j) = probability to find the walker at k when started at j.
  Eigen::MatrixXd probs;
};

/// Long-time-average transition probabilities chi(k, j).
struct LtaMatrix {
  Eigen::MatrixXd chi;

  std::size_t size() const { return static_cast<std::size_t>(chi.rows()); }
  Eigen::VectorXd diagonal() const { return chi.diagonal(); }
};

namespace detail {

inline void check_node(const Spectrum& spec, std::size_t id, const char* what) {
  if (id >= spec.size())
    throw BoundsError(std::string(what) + " " + std::to_string(id) + " outside 0.." +
                      std::to_string(spec.size()));
}

inline void check_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("time must be finite and non-negative");
}

inline double clamp_probability(double p) {
  if (p < -kProbabilitySlack || p > 1.0 + kProbabilitySlack)
    throw ConsistencyError("probability " + std::to_string(p) + " outside [0, 1]");
  return std::clamp(p, 0.0, 1.0);
}

/// Return probability pi_jj(t) from the squared eigenvector row of j.
inline double return_probability(const Spectrum& spec, const Eigen::VectorXd& weights, double t) {
  double re = 0.0, im = 0.0;
  for (Eigen::Index n = 0; n < weights.size(); ++n) {
    const double phase = spec.eigenvalues(n) * t;
    re += weights(n) * std::cos(phase);
    im -= weights(n) * std::sin(phase);
  }
  return re * re + im * im;
}

} // namespace detail

/// Amplitude <k| exp(-iHt) |j>.
inline std::complex<double> transition_amplitude(const Spectrum& spec, std::size_t j, std::size_t k, double t) {
  detail::check_node(spec, j, "node");
  detail::check_node(spec, k, "node");
  detail::check_time(t);
  const auto& v = spec.eigenvectors;
  const auto jj = static_cast<Eigen::Index>(j), kk = static_cast<Eigen::Index>(k);
  double re = 0.0, im = 0.0;
  for (Eigen::Index n = 0; n < v.cols(); ++n) {
    const double w = v(kk, n) * v(jj, n);
    const double phase = spec.eigenvalues(n) * t;
    re += w * std::cos(phase);
    im -= w * std::sin(phase);
  }
  return {re, im};
}

inline double transition_probability(const Spectrum& spec, std::size_t j, std::size_t k, double t) {
  return detail::clamp_probability(std::norm(transition_amplitude(spec, j, k, t)));
}

/// All pi_{k,j}(t) at once, from Re U = V cos(Et) V^T and Im U = -V sin(Et) V^T.
inline TransitionSnapshot transition_snapshot(const Spectrum& spec, double t) {
  detail::check_time(t);
  const auto& v = spec.eigenvectors;
  const Eigen::ArrayXd phase = spec.eigenvalues.array() * t;
  const Eigen::MatrixXd re = v * phase.cos().matrix().asDiagonal() * v.transpose();
  const Eigen::MatrixXd im = v * phase.sin().matrix().asDiagonal() * v.transpose();
  TransitionSnapshot snap;
  snap.t = t;
  snap.probs = (re.array().square() + im.array().square()).matrix().unaryExpr(&detail::clamp_probability);
  return snap;
}

/// Column j of the snapshot: distribution over nodes for a walker started at j.
inline Eigen::VectorXd evolve_distribution(const Spectrum& spec, std::size_t j, double t) {
  detail::check_node(spec, j, "node");
  detail::check_time(t);
  const auto& v = spec.eigenvectors;
  const Eigen::ArrayXd phase = spec.eigenvalues.array() * t;
  const Eigen::ArrayXd row = v.row(static_cast<Eigen::Index>(j)).transpose().array();
  const Eigen::VectorXd re = v * (row * phase.cos()).matrix();
  const Eigen::VectorXd im = v * (row * phase.sin()).matrix();
  return (re.array().square() + im.array().square()).matrix().unaryExpr(&detail::clamp_probability);
}

/// Exact long-time average, chi(k, j) = sum_E |(P_E)_{kj}|^2. Distinct
/// clusters are taken as non-resonant.
inline LtaMatrix lta_exact(const Spectrum& spec) {
  const auto n = static_cast<Eigen::Index>(spec.size());
  LtaMatrix out;
  out.chi = Eigen::MatrixXd::Zero(n, n);
  for (const auto& c : spec.clusters) {
    if (c.size() == 1) {
      const Eigen::ArrayXd col = spec.eigenvectors.col(static_cast<Eigen::Index>(c.begin)).array().square();
      out.chi.noalias() += (col.matrix() * col.matrix().transpose());
    } else {
      out.chi.array() += spec.projector(c).array().square();
    }
  }
  out.chi = out.chi.unaryExpr(&detail::clamp_probability);
  return out;
}

/// Diagonal of lta_exact only: R_j = sum_E ((P_E)_jj)^2. O(N^2).
inline Eigen::VectorXd lta_diagonal(const Spectrum& spec) {
  Eigen::VectorXd r = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(spec.size()));
  for (const auto& c : spec.clusters) r.array() += spec.projector_diagonal(c).array().square();
  return r;
}

/// Trapezoidal time average of pi_jj(t) over `samples` uniform points in [0, horizon].
inline double lta_numeric(const Spectrum& spec, std::size_t j, double horizon, std::size_t samples) {
  detail::check_node(spec, j, "node");
  if (!(horizon > 0.0)) throw InvalidArgument("horizon must be positive");
  if (samples < 100) throw InvalidArgument("lta_numeric needs at least 100 samples");
  const Eigen::VectorXd weights = spec.eigenvectors.row(static_cast<Eigen::Index>(j)).array().square().transpose();
  const double h = horizon / static_cast<double>(samples - 1);
  double sum = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const double p = detail::return_probability(spec, weights, h * static_cast<double>(s));
    sum += (s == 0 || s + 1 == samples) ? 0.5 * p : p;
  }
  return sum * h / horizon;
}

/// sum_k |<psi_0k|j>|^4 over the zero cluster.
inline double return_bound_eigenbasis(const Spectrum& spec, std::size_t j) {
  detail::check_node(spec, j, "node");
  if (!spec.zero_cluster) return 0.0;
  const auto& c = spec.clusters[*spec.zero_cluster];
  const auto row = spec.eigenvectors.row(static_cast<Eigen::Index>(j))
                       .segment(static_cast<Eigen::Index>(c.begin), static_cast<Eigen::Index>(c.size()));
  return row.array().pow(4).sum();
}

/// ((P_0)_jj)^2, basis independent and never below return_bound_eigenbasis.
inline double return_bound_projector(const Spectrum& spec, std::size_t j) {
  detail::check_node(spec, j, "node");
  if (!spec.zero_cluster) return 0.0;
  const double p = spec.zero_projector_diagonal()(static_cast<Eigen::Index>(j));
  return p * p;
}

struct ZeroStateCheck {
  double residual = 0.0;
  double threshold = 0.0;
  bool accepted = false;
};

/// Sparse trial state: node id -> amplitude.
using SparseState = std::map<std::size_t, double>;

inline constexpr double kZeroStateRelTol = 1e-8;

/// ||H psi|| for a normalized candidate; accepted when below 1e-8 ||H||.
inline ZeroStateCheck verify_zero_state(const Hamiltonian& h, const SparseState& candidate,
                                        std::optional<double> h_norm = std::nullopt) {
  double norm2 = 0.0;
  for (auto [id, amp] : candidate) {
    if (id >= h.size())
      throw BoundsError("candidate node " + std::to_string(id) + " outside 0.." + std::to_string(h.size()));
    norm2 += amp * amp;
  }
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-6)
    throw InvalidArgument("candidate state is not normalized (norm " + std::to_string(std::sqrt(norm2)) + ")");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(h.size()));
  for (auto [id, amp] : candidate) out += amp * h.matrix().col(static_cast<Eigen::Index>(id));
  ZeroStateCheck check;
  check.residual = out.norm();
  check.threshold = kZeroStateRelTol * h_norm.value_or(h.norm());
  check.accepted = check.residual <= check.threshold;
  return check;
}

} // namespace penrose_ctqw

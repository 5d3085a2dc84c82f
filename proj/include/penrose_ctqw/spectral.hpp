#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "penrose_ctqw/error.hpp"
#include "penrose_ctqw/hamiltonian.hpp"

namespace penrose_ctqw {

/// Half-open index range [begin, end) of equal eigenvalues in the sorted
/// spectrum.
struct Cluster {
  std::size_t begin = 0;
  std::size_t end = 0;
  double mean = 0.0;

  std::size_t size() const { return end - begin; }
  friend bool operator==(const Cluster&, const Cluster&) = default;
};

/// Default degeneracy tolerance 1e-8 * max(1, ||H||).
inline double default_eigen_tolerance(double norm) { return 1e-8 * std::max(1.0, norm); }

/// Greedy gap split of an ascending sequence: a new cluster starts whenever
/// the step from the previous value exceeds `tol`.
inline std::vector<Cluster> cluster_eigenvalues(std::span<const double> sorted, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("cluster tolerance must be positive");
  std::vector<Cluster> out;
  if (sorted.empty()) return out;
  std::size_t start = 0;
  auto close = [&](std::size_t end) {
    double sum = 0.0;
    for (std::size_t i = start; i < end; ++i) sum += sorted[i];
    out.push_back({start, end, sum / static_cast<double>(end - start)});
  };
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] < sorted[i - 1]) throw InvalidArgument("eigenvalues must be ascending");
    if (sorted[i] - sorted[i - 1] > tol) {
      close(i);
      start = i;
    }
  }
  close(sorted.size());
  return out;
}

/// Index of the cluster whose mean lies within `tol` of zero (the closest
/// one if several do).
inline std::optional<std::size_t> find_zero_cluster(const std::vector<Cluster>& clusters, double tol) {
  std::optional<std::size_t> best;
  for (std::size_t k = 0; k < clusters.size(); ++k) {
    if (std::abs(clusters[k].mean) > tol) continue;
    if (!best || std::abs(clusters[k].mean) < std::abs(clusters[*best].mean)) best = k;
  }
  return best;
}

/// Full eigendecomposition with degenerate clusters. Column n of
/// `eigenvectors` pairs with eigenvalue n. Bases inside a cluster are
/// arbitrary; use projector quantities downstream.
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
  std::vector<Cluster> clusters;
  std::optional<std::size_t> zero_cluster;
  double tolerance = 0.0;
  double norm = 0.0;

  std::size_t size() const { return static_cast<std::size_t>(eigenvalues.size()); }
  std::size_t d0() const { return zero_cluster ? clusters[*zero_cluster].size() : 0; }

  /// Cluster id of every eigen-index.
  std::vector<std::size_t> cluster_ids() const {
    std::vector<std::size_t> ids(size());
    for (std::size_t k = 0; k < clusters.size(); ++k)
      for (std::size_t n = clusters[k].begin; n < clusters[k].end; ++n) ids[n] = k;
    return ids;
  }

  /// Diagonal of the projector onto a cluster, (P_E)_jj for every node j.
  Eigen::VectorXd projector_diagonal(const Cluster& c) const {
    const auto b = static_cast<Eigen::Index>(c.begin);
    const auto w = static_cast<Eigen::Index>(c.size());
    return eigenvectors.middleCols(b, w).array().square().rowwise().sum();
  }

  /// Full projector onto a cluster.
  Eigen::MatrixXd projector(const Cluster& c) const {
    const auto block = eigenvectors.middleCols(static_cast<Eigen::Index>(c.begin),
                                               static_cast<Eigen::Index>(c.size()));
    return block * block.transpose();
  }

  Eigen::VectorXd zero_projector_diagonal() const {
    if (!zero_cluster) return Eigen::VectorXd::Zero(static_cast<Eigen::Index>(size()));
    return projector_diagonal(clusters[*zero_cluster]);
  }
};

/// Builds a Spectrum from an already sorted eigen-pair set.
inline Spectrum make_spectrum(Eigen::VectorXd eigenvalues, Eigen::MatrixXd eigenvectors,
                              std::optional<double> tol = std::nullopt) {
  if (eigenvectors.rows() != eigenvalues.size() || eigenvectors.cols() != eigenvalues.size())
    throw InvalidArgument("eigenvector matrix shape does not match eigenvalue count");
  Spectrum s;
  s.eigenvalues = std::move(eigenvalues);
  s.eigenvectors = std::move(eigenvectors);
  s.norm = s.eigenvalues.size() ? s.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  s.tolerance = tol.value_or(default_eigen_tolerance(s.norm));
  s.clusters = cluster_eigenvalues({s.eigenvalues.data(), static_cast<std::size_t>(s.eigenvalues.size())},
                                   s.tolerance);
  s.zero_cluster = find_zero_cluster(s.clusters, s.tolerance);
  return s;
}

/// Dense symmetric eigendecomposition (Householder tridiagonalisation and
/// implicit QL/QR, via Eigen).
inline Spectrum decompose(const Hamiltonian& h, std::optional<double> tol = std::nullopt) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.matrix());
  if (solver.info() != Eigen::Success)
    throw SolverError("symmetric eigensolver did not converge (N = " + std::to_string(h.size()) + ")");
  return make_spectrum(solver.eigenvalues(), solver.eigenvectors(), tol);
}

/// Orthonormal basis (columns) of the E = 0 cluster; zero columns if absent.
inline Eigen::MatrixXd zero_subspace(const Spectrum& spec) {
  if (!spec.zero_cluster) return Eigen::MatrixXd(static_cast<Eigen::Index>(spec.size()), 0);
  const auto& c = spec.clusters[*spec.zero_cluster];
  return spec.eigenvectors.middleCols(static_cast<Eigen::Index>(c.begin), static_cast<Eigen::Index>(c.size()));
}

/// max_n ||H psi_n - E_n psi_n||.
inline double max_residual(const Hamiltonian& h, const Spectrum& spec) {
  if (spec.size() == 0) return 0.0;
  const Eigen::MatrixXd r = h.matrix() * spec.eigenvectors - spec.eigenvectors * spec.eigenvalues.asDiagonal();
  return r.colwise().norm().maxCoeff();
}

} // namespace penrose_ctqw

#pragma once

#include <cmath>
#include <ostream>
#include <string>

#include <Eigen/Dense>

#include "penrose_ctqw/error.hpp"
#include "penrose_ctqw/format.hpp"
#include "penrose_ctqw/lattice.hpp"

namespace penrose_ctqw {

/// Hopping strengths: a on rhombus edges, b on thin short diagonals,
/// c on fat short diagonals.
struct HoppingModel {
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;

  void validate() const {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c))
      throw InvalidArgument("hopping values must be finite");
    if (!(a > 0.0)) throw InvalidArgument("edge hopping a must be positive");
    if (b < 0.0 || c < 0.0) throw InvalidArgument("diagonal hoppings b, c must be non-negative");
  }

  static HoppingModel edges_only() { return {1.0, 0.0, 0.0}; }
  /// The rounded values quoted for the near-hopping models.
  static HoppingModel thin_near() { return {1.0, 1.618, 0.0}; }
  static HoppingModel thin_fat_near() { return {1.0, 1.618, 0.85}; }
  /// Hopping inversely proportional to the pair distance, in units of a.
  static HoppingModel inverse_distance() { return {1.0, 1.0 / kThinDiagonal, 1.0 / kFatDiagonal}; }

  friend bool operator==(const HoppingModel&, const HoppingModel&) = default;
};

/// Dense real symmetric tight-binding matrix with zero on-site energies.
class Hamiltonian {
public:
  Hamiltonian() = default;

  /// Wraps an arbitrary matrix; it must be square and exactly symmetric.
  static Hamiltonian from_matrix(Eigen::MatrixXd m) {
    if (m.rows() != m.cols()) throw InvalidArgument("Hamiltonian must be square");
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = i + 1; j < m.cols(); ++j)
        if (m(i, j) != m(j, i)) throw InvalidArgument("Hamiltonian must be symmetric");
    Hamiltonian h;
    h.m_ = std::move(m);
    return h;
  }

  std::size_t size() const { return static_cast<std::size_t>(m_.rows()); }
  const Eigen::MatrixXd& matrix() const { return m_; }
  double operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  std::size_t nonzeros() const { return static_cast<std::size_t>((m_.array() != 0.0).count()); }

  /// Spectral norm (largest |eigenvalue|).
  double norm() const {
    if (m_.size() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
  }

private:
  Eigen::MatrixXd m_;
};

inline Hamiltonian build(const PenroseLattice& lattice, const HoppingModel& model) {
  model.validate();
  const auto n = static_cast<Eigen::Index>(lattice.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  auto fill = [&](const std::vector<Pair>& pairs, double t) {
    if (t == 0.0) return;
    for (auto [i, j] : pairs) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = t;
      m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = t;
    }
  };
  fill(lattice.bonds().edges, model.a);
  fill(lattice.bonds().thin_diagonals, model.b);
  fill(lattice.bonds().fat_diagonals, model.c);
  return Hamiltonian::from_matrix(std::move(m));
}

/// Coordinate dump, one "i j value" line per nonzero, row-major order.
inline void write_coordinate_dump(std::ostream& os, const Hamiltonian& h) {
  const auto& m = h.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0.0) os << i << ' ' << j << ' ' << format_double(m(i, j)) << '\n';
}

} // namespace penrose_ctqw

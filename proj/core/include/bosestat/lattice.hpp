#pragma once

// Momentum lattices on the unit torus: finite subsets of 2*pi*Z^3 used as
// mode sets. All constructors produce sets closed under negation.

#include <array>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace bosestat::lattice {

using Coord = std::array<int, 3>;

class MomentumLattice {
 public:
  // Excited modes 2*pi*k*e1 with 1 <= |k| <= floor(cutoff / 2*pi), no zero.
  static MomentumLattice axis(double cutoff);

  // All nonzero 2*pi*n with |2*pi*n| <= cutoff.
  static MomentumLattice ball(double cutoff);

  // Explicit integer coordinates; must be nonzero and closed under negation.
  static MomentumLattice from_coords(std::vector<Coord> coords);

  std::size_t size() const { return coords_.size(); }
  const std::vector<Coord>& coords() const { return coords_; }

  // physical momentum 2*pi*n
  Eigen::Vector3d momentum(std::size_t i) const;
  double momentum_norm(std::size_t i) const;
  double momentum_sq(std::size_t i) const;

  // index of -p for the point at index i
  std::size_t negation_index(std::size_t i) const { return neg_[i]; }

  bool contains(const Coord& c) const;
  std::size_t index_of(const Coord& c) const;  // throws if absent

 private:
  explicit MomentumLattice(std::vector<Coord> coords);

  std::vector<Coord> coords_;
  std::vector<std::size_t> neg_;
};

}  // namespace bosestat::lattice

#include "bosestat/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bosestat::lattice {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

MomentumLattice::MomentumLattice(std::vector<Coord> coords)
    : coords_(std::move(coords)) {
  if (coords_.empty())
    throw std::invalid_argument("lattice: empty mode set");
  std::sort(coords_.begin(), coords_.end());
  if (std::adjacent_find(coords_.begin(), coords_.end()) != coords_.end())
    throw std::invalid_argument("lattice: duplicate mode");
  neg_.resize(coords_.size());
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    const Coord& c = coords_[i];
    if (c == Coord{0, 0, 0})
      throw std::invalid_argument("lattice: zero mode not allowed");
    Coord n{-c[0], -c[1], -c[2]};
    auto it = std::lower_bound(coords_.begin(), coords_.end(), n);
    if (it == coords_.end() || *it != n)
      throw std::invalid_argument("lattice: set not closed under negation");
    neg_[i] = std::size_t(it - coords_.begin());
  }
}

MomentumLattice MomentumLattice::axis(double cutoff) {
  int kmax = int(std::floor(cutoff / kTwoPi));
  if (kmax < 1) throw std::invalid_argument("lattice: cutoff below 2*pi");
  std::vector<Coord> coords;
  for (int k = 1; k <= kmax; ++k) {
    coords.push_back({k, 0, 0});
    coords.push_back({-k, 0, 0});
  }
  return MomentumLattice(std::move(coords));
}

MomentumLattice MomentumLattice::ball(double cutoff) {
  int kmax = int(std::floor(cutoff / kTwoPi));
  if (kmax < 1) throw std::invalid_argument("lattice: cutoff below 2*pi");
  std::vector<Coord> coords;
  double c2 = (cutoff / kTwoPi) * (cutoff / kTwoPi);
  for (int x = -kmax; x <= kmax; ++x)
    for (int y = -kmax; y <= kmax; ++y)
      for (int z = -kmax; z <= kmax; ++z) {
        if (x == 0 && y == 0 && z == 0) continue;
        if (double(x * x + y * y + z * z) <= c2 + 1e-12)
          coords.push_back({x, y, z});
      }
  return MomentumLattice(std::move(coords));
}

MomentumLattice MomentumLattice::from_coords(std::vector<Coord> coords) {
  return MomentumLattice(std::move(coords));
}

Eigen::Vector3d MomentumLattice::momentum(std::size_t i) const {
  const Coord& c = coords_[i];
  return kTwoPi * Eigen::Vector3d(c[0], c[1], c[2]);
}

double MomentumLattice::momentum_norm(std::size_t i) const {
  const Coord& c = coords_[i];
  return kTwoPi * std::sqrt(double(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]));
}

double MomentumLattice::momentum_sq(std::size_t i) const {
  const Coord& c = coords_[i];
  return kTwoPi * kTwoPi * double(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]);
}

bool MomentumLattice::contains(const Coord& c) const {
  return std::binary_search(coords_.begin(), coords_.end(), c);
}

std::size_t MomentumLattice::index_of(const Coord& c) const {
  auto it = std::lower_bound(coords_.begin(), coords_.end(), c);
  if (it == coords_.end() || *it != c)
    throw std::out_of_range("lattice: coordinate not in mode set");
  return std::size_t(it - coords_.begin());
}

}  // namespace bosestat::lattice

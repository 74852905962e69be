#include "bosestat/occupation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace bosestat::fock {

namespace {

void enumerate(int n_modes, int budget, bool exact, Occupation& scratch,
               std::vector<Occupation>& out) {
  const int pos = int(scratch.size());
  if (pos == n_modes - 1) {
    if (exact) {
      scratch.push_back(budget);
      out.push_back(scratch);
      scratch.pop_back();
    } else {
      for (int n = 0; n <= budget; ++n) {
        scratch.push_back(n);
        out.push_back(scratch);
        scratch.pop_back();
      }
    }
    return;
  }
  for (int n = 0; n <= budget; ++n) {
    scratch.push_back(n);
    enumerate(n_modes, budget - n, exact, scratch, out);
    scratch.pop_back();
  }
}

}  // namespace

OccupationBasis::OccupationBasis(int n_modes, int n_particles, bool truncated)
    : n_modes_(n_modes), n_particles_(n_particles), truncated_(truncated) {
  if (n_modes < 1) throw std::invalid_argument("need at least one mode");
  if (n_particles < 0) throw std::invalid_argument("negative particle count");

  Occupation scratch;
  scratch.reserve(std::size_t(n_modes));
  enumerate(n_modes, n_particles, !truncated, scratch, states_);

  totals_.reserve(states_.size());
  for (const auto& s : states_) {
    totals_.push_back(std::accumulate(s.begin(), s.end(), 0));
  }
}

OccupationBasis OccupationBasis::fixed_total(int n_modes, int n_particles) {
  return OccupationBasis(n_modes, n_particles, false);
}

OccupationBasis OccupationBasis::truncated(int n_modes, int max_particles) {
  return OccupationBasis(n_modes, max_particles, true);
}

const Occupation& OccupationBasis::at(std::size_t i) const {
  if (i >= states_.size()) throw std::out_of_range("basis index");
  return states_[i];
}

std::size_t OccupationBasis::index_of(const Occupation& occ) const {
  auto it = std::lower_bound(states_.begin(), states_.end(), occ);
  if (it == states_.end() || *it != occ) {
    throw std::invalid_argument("occupation not in basis");
  }
  return std::size_t(it - states_.begin());
}

bool OccupationBasis::contains(const Occupation& occ) const {
  return std::binary_search(states_.begin(), states_.end(), occ);
}

}  // namespace bosestat::fock

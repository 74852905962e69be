#pragma once

// Bosonic occupation-number bases over a finite mode set, either with a fixed
// particle total or truncated at a cap. States are enumerated in ascending
// lexicographic order.

#include <cstddef>
#include <vector>

namespace bosestat::fock {

using Occupation = std::vector<int>;

class OccupationBasis {
 public:
  // all occupations over n_modes summing exactly to n_particles
  static OccupationBasis fixed_total(int n_modes, int n_particles);

  // all occupations over n_modes summing to at most max_particles
  static OccupationBasis truncated(int n_modes, int max_particles);

  std::size_t size() const { return states_.size(); }
  int n_modes() const { return n_modes_; }
  // the fixed total, or the cap for a truncated basis
  int n_particles() const { return n_particles_; }
  bool is_truncated() const { return truncated_; }

  const Occupation& at(std::size_t i) const;
  int total(std::size_t i) const { return totals_[i]; }

  std::size_t index_of(const Occupation& occ) const;  // throws if absent
  bool contains(const Occupation& occ) const;

 private:
  OccupationBasis(int n_modes, int n_particles, bool truncated);

  int n_modes_ = 0;
  int n_particles_ = 0;
  bool truncated_ = false;
  std::vector<Occupation> states_;
  std::vector<int> totals_;
};

}  // namespace bosestat::fock

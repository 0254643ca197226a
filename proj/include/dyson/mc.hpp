#pragma once

#include <cstdint>
#include <vector>

#include "dyson/disorder.hpp"
#include "dyson/model.hpp"

namespace dyson {

// Per-level block sums kept in sync with the spin vector; a single-spin flip
// touches one block per level, so energy deltas cost O(depth).
class BlockMagCache {
 public:
  BlockMagCache(const HierarchyParams&, const SpinConfig&);

  int depth() const { return depth_; }
  int sites() const { return static_cast<int>(spins_.size()); }
  int spin(int site) const { return spins_[site]; }
  int block_sum(int level, int block) const { return sums_[level - 1][block]; }
  int total_spin() const { return total_; }
  const std::vector<int>& spins() const { return spins_; }
  const std::vector<std::vector<int>>& level_sums() const { return sums_; }

  void flip(int site);

 private:
  int depth_ = 0;
  std::vector<int> spins_;
  std::vector<std::vector<int>> sums_;  // sums_[n-1][b] = level-n block sum
  int total_ = 0;
};

// Energy change of flipping `site` in the current state:
//   sum_n 2^{-alpha n} (S_B^2 - (S_B - 2 sigma)^2) + 2 h h_i sigma
double flip_delta(const BlockMagCache&, const HierarchyParams&, const ThermoParams&,
                  const DisorderSample&, int site);

struct McEstimate {
  double mean_s2 = 0.0;
  double std_err = 0.0;  // from binning analysis
  double acceptance_rate = 0.0;
  double tau_int = 0.5;
  std::int64_t measured_sweeps = 0;
};

// Single-chain Metropolis on one disorder sample; one measurement of S^2 per
// sweep after burn-in.  Fully deterministic under a fixed SeedSpec.
McEstimate metropolis_run(const HierarchyParams&, const ThermoParams&, const DisorderSample&,
                          std::int64_t sweeps, std::int64_t burn_in, const SeedSpec&);

}  // namespace dyson

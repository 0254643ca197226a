#pragma once

#include <cstdint>
#include <vector>

#include "dyson/bounds.hpp"
#include "dyson/model.hpp"

namespace dyson {

// Exact unnormalized distribution of a block's total spin, log domain.
// Entry k holds the log-weight of total spin S = -2^level + 2k; the weight
// already contains every coupling term internal to the block.
struct SectorTable {
  int level = 0;
  std::vector<double> logw;  // size 2^level + 1

  int entries() const { return (1 << level) + 1; }
  int spin_of(int k) const { return -(1 << level) + 2 * k; }
  int index_of(int spin) const { return (spin + (1 << level)) / 2; }
};

// v_n = beta * b_n / 2^{2n} = beta * 2^{-alpha n}
struct CouplingWeight {
  double vn = 0.0;
};
CouplingWeight coupling_weight(const HierarchyParams&, const ThermoParams&, int level);

// Single site: logw = (-beta h h_i, +beta h h_i) for S = -1, +1.
SectorTable leaf_table(const ThermoParams&, double field_value);

// Convolves two level-(n-1) tables over total spin and applies the level-n
// factor exp(beta 2^{-alpha n} S^2).  Cost is (2^{n-1}+1)^2 pair visits;
// `work`, when given, accumulates them.
SectorTable merge(const HierarchyParams&, const ThermoParams&, int level,
                  const SectorTable& a, const SectorTable& b, std::uint64_t* work = nullptr);

// Full bottom-up build: leaves from the disorder fields, then pairwise merges
// level by level.  Total cost is Theta(4^depth).
SectorTable build_root(const HierarchyParams&, const ThermoParams&, const DisorderSample&,
                       std::uint64_t* work = nullptr);

struct SectorObservables {
  double log_z = 0.0;
  double mean_s = 0.0;
  double mean_s2 = 0.0;
};
SectorObservables root_observables(const SectorTable&);

// Restricted partition sums over the interval parts: entry k is
//   log sum_{S in I_k} w(S) exp(2 vn S^2),
// -inf when I_k contains no spin value of nonzero weight.  `half` must sit
// one level below the partition.
std::vector<double> restricted_partitions(const SectorTable& half, const IntervalPartition& part,
                                          CouplingWeight vn);

}  // namespace dyson

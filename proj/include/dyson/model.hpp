#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dyson {

enum class FieldDist { gaussian, bernoulli };

std::string to_string(FieldDist d);
FieldDist field_dist_from_string(const std::string& s);

// Hierarchical lattice geometry: 2^depth spins; the level-n blocks are the
// 2^{depth-n} aligned groups of 2^n consecutive sites, each coupled through
// the square of its total spin with strength 2^{-alpha n}.
struct HierarchyParams {
  double alpha = 1.2;  // coupling decay exponent, must be > 1
  int depth = 0;       // N >= 0

  int sites() const { return 1 << depth; }
  double coupling(int level) const;  // 2^{-alpha n}
  double bn(int level) const;        // b_n = 2^{(2-alpha) n}
  void validate() const;
};

struct ThermoParams {
  double beta = 1.0;  // inverse temperature, >= 0
  double h = 0.0;     // random-field strength, >= 0
  FieldDist dist = FieldDist::gaussian;
  void validate() const;
};

struct SpinConfig {
  std::vector<int> spins;  // entries in {-1, +1}
};

// Records exactly which draw produced a sample.
struct SeedProvenance {
  std::uint64_t master_seed = 0;
  std::uint64_t stream = 0;
  std::uint64_t sample_index = 0;
};

struct DisorderSample {
  std::vector<double> fields;  // one h_i per site
  SeedProvenance origin{};
};

// Unrolled energy
//   H(sigma) = - sum_{n=1..depth} sum_{blocks B at level n} 2^{-alpha n} S_B^2
//              - h sum_i h_i sigma_i
// The i = j diagonal is included in S_B^2 on purpose: the block term is the
// full square of the block magnetization.
double hamiltonian_energy(const HierarchyParams& lattice, const ThermoParams& thermo,
                          const DisorderSample& disorder, const SpinConfig& config);

struct BruteObservables {
  double log_z = 0.0;
  double mean_s = 0.0;   // <S> of the total spin
  double mean_s2 = 0.0;  // <S^2>, in [0, 4^depth]
};

// Exhaustive sum over all 2^(2^depth) configurations, log-domain weights.
// Refuses systems above 20 sites.
BruteObservables brute_force_observables(const HierarchyParams& lattice,
                                         const ThermoParams& thermo,
                                         const DisorderSample& disorder);

}  // namespace dyson

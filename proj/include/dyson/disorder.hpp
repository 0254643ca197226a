#pragma once

#include <cstdint>
#include <string>

#include "dyson/model.hpp"

namespace dyson {

// Identifies a reproducible disorder stream: sample j of stream k is a pure
// function of (master_seed, k, j), independent of evaluation order and job
// count.
struct SeedSpec {
  std::uint64_t master_seed = 1;
  std::uint64_t stream = 0;
};

struct QuenchedEstimate {
  double mean = 0.0;
  double std_err = 0.0;
  std::int64_t n_samples = 0;
  std::string tag;
};

// Draws the 2^depth field values for sample `sample_index` of the stream.
DisorderSample draw_sample(const HierarchyParams&, const ThermoParams&, const SeedSpec&,
                           std::uint64_t sample_index);

struct ExactSweep {
  QuenchedEstimate f;         // f_N = E[<S^2>] / 4^N
  QuenchedEstimate pressure;  // P_N = E[log Z]
};

// One exact build per sample; both estimates from the same draws.
ExactSweep quenched_sweep(const HierarchyParams&, const ThermoParams&, int n_samples,
                          const SeedSpec&, int jobs = 1);

QuenchedEstimate estimate_f(const HierarchyParams&, const ThermoParams&, int n_samples,
                            const SeedSpec&, int jobs = 1);

QuenchedEstimate quenched_pressure(const HierarchyParams&, const ThermoParams&, int n_samples,
                                   const SeedSpec&, int jobs = 1);

}  // namespace dyson

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dyson/model.hpp"

namespace dyson {

// Free constants of the recurrence construction.
struct BoundParams {
  double c = 10.0;  // > 0
  double d = 0.0;   // >= 0
  void validate() const;
};

// r_N equal half-open parts covering [-2^{N-1}, 2^{N-1}]; the last part is
// closed on the right.  Membership of an integer spin is computed in exact
// integer arithmetic so boundary spins always land in the part closed on
// their left.
struct IntervalPartition {
  int level = 1;           // N; the parts classify level-(N-1) half-block spins
  std::int64_t parts = 1;  // r_N >= 1

  double width() const;  // 2^N / r_N
  double part_left(std::int64_t k) const;
  double part_right(std::int64_t k) const;
  std::int64_t part_of_spin(std::int64_t spin) const;  // spin in [-2^{N-1}, 2^{N-1}]
};

// r_N = floor(sqrt(c beta^d b_N)) + 1, which brackets
// sqrt(c beta^d b_N) < r_N <= 1 + sqrt(c beta^d b_N).
IntervalPartition make_partition(const HierarchyParams&, const ThermoParams&,
                                 const BoundParams&, int level);

// Deterministic part of the recurrence penalty:
//   (1/(beta b_N)) * (1/(c beta^{d-1}) + log(1 + sqrt(c beta^d b_N)))
double recurrence_penalty_constant(const HierarchyParams&, const ThermoParams&,
                                   const BoundParams&, int level);

// Parameter point of the closed-form lower bound on the asymptotic order
// parameter.  inv_beta = 1/beta; 0 selects the zero-temperature limit, where
// the whole 1/beta block drops out exactly.
struct BoundPoint {
  double alpha = 1.2;
  double c = 10.0;
  double h = 0.0;
  double inv_beta = 0.0;
};

// Closed form of 1 - sum_p t_p via geometric sums.  Natural logarithms.
double theorem1_bound(const BoundPoint&);

// Level-p term of the penalty series (the d = 0 construction):
//   t_p = (1/(c b_p)) + inv_beta * (1/b_p) * log(2 sqrt(c b_p))
//         + h * 2^{(alpha - 3/2) p} * (log(2 sqrt(c b_p)) + log(1 + sqrt(2 pi e)))
// with b_p = 2^{(2-alpha) p}; evaluated through regrouped exponents so no
// intermediate overflows for any p.
double series_term(const BoundPoint&, std::int64_t p);

// 1 - sum_{p=1..n_levels} t_p; finite-N certificate for f_N.
double partial_sum_bound(const BoundPoint&, int n_levels);

// sum_{p>=1} t_p, truncated when the term falls below 1e-15 of the running
// sum.  theorem1_bound equals 1 - series_sum to rounding.
double series_sum(const BoundPoint&);

struct RegionPoint {
  double h = 0.0;
  double inv_beta = 0.0;
  double bound = 0.0;
  bool positive = false;
};

// Row-major scan, h outer, inv_beta inner.
std::vector<RegionPoint> region_scan(double alpha, double c, std::span<const double> h_values,
                                     std::span<const double> inv_beta_values);

}  // namespace dyson

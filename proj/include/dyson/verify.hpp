#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dyson/bounds.hpp"
#include "dyson/disorder.hpp"
#include "dyson/model.hpp"

namespace dyson {

enum class Verdict { holds, holds_within_3_stderr, violated };
std::string to_string(Verdict);

// slack >= 0 means the inequality held on the sample mean; the middle verdict
// covers slack within 3 standard errors below zero.  noise_floor absorbs
// rounding at exact-equality points (degenerate slack distribution with zero
// standard error), where the sign of an O(eps) residual is meaningless.
Verdict verdict_from_slack(double slack, double slack_std_err, double noise_floor = 0.0);

struct InequalityReport {
  std::string inequality;
  QuenchedEstimate lhs;
  QuenchedEstimate rhs;
  double slack = 0.0;
  double slack_std_err = 0.0;
  Verdict verdict = Verdict::holds;
  std::int64_t n_samples = 0;
  std::int64_t n_rejected = 0;  // samples skipped for lack of a usable interval pair
  SeedSpec seed;
};

struct VerifyConfig {
  int n_samples = 1000;
  SeedSpec seed{};
  int jobs = 1;
  bool strict_sectors = false;  // abort on empty interval sectors instead of skipping
};

// Recurrence gap: per disorder sample, with shared fields,
//   slack = f_N - f_{N-1} + penalty_const + max_k g_k / (beta b_N)
// where f_{N-1} averages the two half blocks and g_k is the restricted
// log-ratio between the halves.  Rejects beta = 0 by name.
InequalityReport recurrence_check(const HierarchyParams&, const ThermoParams&,
                                  const BoundParams&, const VerifyConfig&);

// E[max_k g_k] against the sub-Gaussian envelope
//   beta h 2^{N/2} log((1 + sqrt(c beta^d b_N)) (1 + sqrt(2 pi e))).
InequalityReport max_log_ratio_check(const HierarchyParams&, const ThermoParams&,
                                     const BoundParams&, const VerifyConfig&);

// Per-sample convexity gap: log Z_full >= log Z_half1 + log Z_half2 + v_N <S^2>_full
// rearranged so slack >= 0 holds for every realization.
InequalityReport gibbs_bogoliubov_check(const HierarchyParams&, const ThermoParams&,
                                        const VerifyConfig&);

struct LipschitzReport {
  double max_abs_derivative = 0.0;
  double bound = 0.0;      // beta * h
  double tolerance = 0.0;  // relative slack allowed on the bound
  bool holds = false;
  std::int64_t n_probes = 0;
  double fd_step = 0.0;
  SeedSpec seed;
};

// Central finite differences of every g_k in every field coordinate;
// Gaussian mode only (the derivative target needs a continuous field).
LipschitzReport lipschitz_check(const HierarchyParams&, const ThermoParams&, const BoundParams&,
                                int n_probes, const SeedSpec&, double fd_step = 1e-4);

struct TailPoint {
  double t = 0.0;
  double bound = 0.0;  // exp(-t^2 / (2 L^2))
  std::int64_t exceed_count = 0;
  double empirical = 0.0;
  double upper_cl = 0.0;  // 99% one-sided binomial upper limit
  bool holds = false;     // upper_cl <= bound
};

struct TailReport {
  double lipschitz_l = 0.0;      // L = beta h 2^{N/2}
  std::int64_t part_index = 0;   // interval with the largest mean weight
  double g_mean = 0.0;
  std::vector<TailPoint> points;
  std::int64_t n_samples = 0;
  bool holds = false;
  SeedSpec seed;
};

// Empirical Pr(g_k - E g_k >= t) against exp(-t^2/(2 L^2)) at a fixed k,
// judged through the 99% upper confidence limit of the survival count.
TailReport tail_check(const HierarchyParams&, const ThermoParams&, const BoundParams&,
                      int n_samples, std::span<const double> t_values, const SeedSpec&,
                      int jobs = 1);

}  // namespace dyson

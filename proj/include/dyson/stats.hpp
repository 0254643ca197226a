#pragma once

#include <cstdint>
#include <functional>
#include <span>

namespace dyson {

struct MeanErr {
  double mean = 0.0;
  double std_err = 0.0;
  std::int64_t n = 0;
};

// Sample mean and s/sqrt(n) with the n-1 normalization; n = 1 gives std_err 0.
MeanErr mean_and_stderr(std::span<const double> xs);

// One-sided exact (Clopper-Pearson) upper confidence limit for a binomial
// proportion: the p with Pr(Bin(n, p) <= k) = 1 - confidence, found by
// bisection on the log-domain binomial CDF.
double binomial_upper_confidence(std::int64_t k, std::int64_t n, double confidence);

// Pr(Bin(n, p) <= k), summed in log domain via lgamma.
double binomial_cdf(std::int64_t k, std::int64_t n, double p);

// Autocorrelation-aware error bar: bin sizes double while at least 16 bins
// remain; std_err is the largest binned error (plateau estimate), tau_int the
// implied integrated autocorrelation time.
struct BinnedEstimate {
  double mean = 0.0;
  double std_err = 0.0;
  double naive_std_err = 0.0;
  double tau_int = 0.5;
  int levels = 0;
};
BinnedEstimate binned_stats(std::span<const double> series);

// Runs fn(j) for j in [0, n) on up to `jobs` threads.  fn must write its
// result into a per-index slot; reductions then happen in index order, so
// results are identical for any job count.
void parallel_for_index(std::int64_t n, int jobs, const std::function<void(std::int64_t)>& fn);

}  // namespace dyson

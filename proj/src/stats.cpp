#include "dyson/stats.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

#include "dyson/logsum.hpp"

namespace dyson {

MeanErr mean_and_stderr(std::span<const double> xs) {
  const std::int64_t n = static_cast<std::int64_t>(xs.size());
  if (n < 1) throw std::invalid_argument("mean_and_stderr: empty sample");
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(n);
  if (n == 1) return MeanErr{mean, 0.0, 1};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double var = ss / static_cast<double>(n - 1);
  return MeanErr{mean, std::sqrt(var / static_cast<double>(n)), n};
}

double binomial_cdf(std::int64_t k, std::int64_t n, double p) {
  if (n < 1 || k < 0 || k > n) throw std::invalid_argument("binomial_cdf: bad k or n");
  if (p <= 0.0) return 1.0;
  if (p >= 1.0) return k >= n ? 1.0 : 0.0;
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  const double lgn = std::lgamma(static_cast<double>(n) + 1.0);
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(k) + 1);
  for (std::int64_t j = 0; j <= k; ++j) {
    const double jd = static_cast<double>(j);
    terms.push_back(lgn - std::lgamma(jd + 1.0) - std::lgamma(static_cast<double>(n - j) + 1.0) +
                    jd * lp + static_cast<double>(n - j) * lq);
  }
  const double ls = log_sum_exp(terms);
  return ls >= 0.0 ? 1.0 : std::exp(ls);
}

double binomial_upper_confidence(std::int64_t k, std::int64_t n, double confidence) {
  if (!(confidence > 0.0) || !(confidence < 1.0))
    throw std::invalid_argument("binomial_upper_confidence: confidence must be in (0, 1)");
  if (n < 1 || k < 0 || k > n) throw std::invalid_argument("binomial_upper_confidence: bad k or n");
  if (k == n) return 1.0;
  // CDF is decreasing in p; bisect for Pr(Bin(n,p) <= k) = 1 - confidence.
  const double target = 1.0 - confidence;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (binomial_cdf(k, n, mid) > target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

BinnedEstimate binned_stats(std::span<const double> series) {
  const std::int64_t n = static_cast<std::int64_t>(series.size());
  if (n < 16) throw std::invalid_argument("binned_stats: need at least 16 points");

  const MeanErr flat = mean_and_stderr(series);
  BinnedEstimate out;
  out.mean = flat.mean;
  out.naive_std_err = flat.std_err;
  out.std_err = flat.std_err;
  out.levels = 1;

  std::vector<double> bins(series.begin(), series.end());
  while (static_cast<std::int64_t>(bins.size()) / 2 >= 16) {
    const std::size_t half = bins.size() / 2;
    for (std::size_t i = 0; i < half; ++i) bins[i] = 0.5 * (bins[2 * i] + bins[2 * i + 1]);
    bins.resize(half);
    const MeanErr level = mean_and_stderr(bins);
    out.std_err = std::max(out.std_err, level.std_err);
    ++out.levels;
  }
  out.tau_int = out.naive_std_err > 0.0
                    ? 0.5 * (out.std_err / out.naive_std_err) * (out.std_err / out.naive_std_err)
                    : 0.5;
  return out;
}

void parallel_for_index(std::int64_t n, int jobs, const std::function<void(std::int64_t)>& fn) {
  if (n < 0) throw std::invalid_argument("parallel_for_index: negative count");
  if (jobs < 1) throw std::invalid_argument("parallel_for_index: jobs must be >= 1");
  if (jobs == 1 || n <= 1) {
    for (std::int64_t j = 0; j < n; ++j) fn(j);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  const int workers = static_cast<int>(std::min<std::int64_t>(jobs, n));
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const std::int64_t j = next.fetch_add(1);
        if (j >= n || failed.load()) return;
        try {
          fn(j);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          failed.store(true);
          return;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace dyson

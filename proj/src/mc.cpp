#include "dyson/mc.hpp"

#include <cmath>
#include <stdexcept>

#include "dyson/rng.hpp"
#include "dyson/stats.hpp"

namespace dyson {

BlockMagCache::BlockMagCache(const HierarchyParams& lattice, const SpinConfig& config) {
  lattice.validate();
  if (config.spins.size() != static_cast<std::size_t>(lattice.sites()))
    throw std::invalid_argument("BlockMagCache: spin vector size does not match lattice sites");
  for (int s : config.spins)
    if (s != 1 && s != -1) throw std::invalid_argument("BlockMagCache: spins must be +-1");

  depth_ = lattice.depth;
  spins_ = config.spins;
  sums_.resize(depth_);
  total_ = 0;
  for (int s : spins_) total_ += s;
  for (int n = 1; n <= depth_; ++n) {
    const int blocks = lattice.sites() >> n;
    sums_[n - 1].resize(blocks);
    for (int b = 0; b < blocks; ++b)
      sums_[n - 1][b] = n == 1 ? spins_[2 * b] + spins_[2 * b + 1]
                               : sums_[n - 2][2 * b] + sums_[n - 2][2 * b + 1];
  }
}

void BlockMagCache::flip(int site) {
  const int old = spins_[site];
  spins_[site] = -old;
  total_ -= 2 * old;
  for (int n = 1; n <= depth_; ++n) sums_[n - 1][site >> n] -= 2 * old;
}

double flip_delta(const BlockMagCache& cache, const HierarchyParams& lattice,
                  const ThermoParams& thermo, const DisorderSample& disorder, int site) {
  if (site < 0 || site >= cache.sites()) throw std::out_of_range("flip_delta: site out of range");
  const double sigma = static_cast<double>(cache.spin(site));
  double delta = 2.0 * thermo.h * disorder.fields[site] * sigma;
  for (int n = 1; n <= lattice.depth; ++n) {
    const double sb = static_cast<double>(cache.block_sum(n, site >> n));
    const double sb_new = sb - 2.0 * sigma;
    delta += lattice.coupling(n) * (sb * sb - sb_new * sb_new);
  }
  return delta;
}

McEstimate metropolis_run(const HierarchyParams& lattice, const ThermoParams& thermo,
                          const DisorderSample& disorder, std::int64_t sweeps,
                          std::int64_t burn_in, const SeedSpec& seed) {
  lattice.validate();
  thermo.validate();
  if (disorder.fields.size() != static_cast<std::size_t>(lattice.sites()))
    throw std::invalid_argument("metropolis_run: field vector size does not match lattice sites");
  if (sweeps < 16) throw std::invalid_argument("metropolis_run: need at least 16 sweeps");
  if (burn_in < 0) throw std::invalid_argument("metropolis_run: burn_in must be >= 0");

  const int n_sites = lattice.sites();
  CounterRng rng(seed.master_seed, seed.stream, 0x6d635f636861696eULL);

  SpinConfig config;
  config.spins.resize(n_sites);
  for (int& s : config.spins) s = rng.next_sign() > 0 ? 1 : -1;
  BlockMagCache cache(lattice, config);

  std::int64_t proposed = 0, accepted = 0;
  std::vector<double> series;
  series.reserve(sweeps);
  for (std::int64_t sweep = 0; sweep < burn_in + sweeps; ++sweep) {
    for (int step = 0; step < n_sites; ++step) {
      const int site = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(n_sites));
      const double delta = flip_delta(cache, lattice, thermo, disorder, site);
      bool accept = delta <= 0.0;
      if (!accept) accept = rng.next_unit() < std::exp(-thermo.beta * delta);
      if (accept) cache.flip(site);
      if (sweep >= burn_in) {
        ++proposed;
        if (accept) ++accepted;
      }
    }
    if (sweep >= burn_in) {
      const double s = static_cast<double>(cache.total_spin());
      series.push_back(s * s);
    }
  }

  const BinnedEstimate be = binned_stats(series);
  McEstimate out;
  out.mean_s2 = be.mean;
  out.std_err = be.std_err;
  out.acceptance_rate = static_cast<double>(accepted) / static_cast<double>(proposed);
  out.tau_int = be.tau_int;
  out.measured_sweeps = sweeps;
  return out;
}

}  // namespace dyson

#include "dyson/disorder.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dyson/rng.hpp"
#include "dyson/sector.hpp"
#include "dyson/stats.hpp"

namespace dyson {

DisorderSample draw_sample(const HierarchyParams& lattice, const ThermoParams& thermo,
                           const SeedSpec& seed, std::uint64_t sample_index) {
  lattice.validate();
  thermo.validate();
  CounterRng rng(seed.master_seed, seed.stream, sample_index);
  DisorderSample out;
  out.fields.resize(lattice.sites());
  if (thermo.dist == FieldDist::gaussian)
    for (double& f : out.fields) f = rng.next_gaussian();
  else
    for (double& f : out.fields) f = rng.next_sign();
  out.origin = SeedProvenance{seed.master_seed, seed.stream, sample_index};
  return out;
}

ExactSweep quenched_sweep(const HierarchyParams& lattice, const ThermoParams& thermo,
                          int n_samples, const SeedSpec& seed, int jobs) {
  lattice.validate();
  thermo.validate();
  if (n_samples < 2) throw std::invalid_argument("quenched_sweep: need n_samples >= 2");

  const double norm = std::exp2(2.0 * lattice.depth);
  std::vector<double> f_vals(n_samples), p_vals(n_samples);
  parallel_for_index(n_samples, jobs, [&](std::int64_t j) {
    const DisorderSample sample = draw_sample(lattice, thermo, seed, j);
    const SectorObservables obs = root_observables(build_root(lattice, thermo, sample));
    f_vals[j] = obs.mean_s2 / norm;
    p_vals[j] = obs.log_z;
  });

  const MeanErr f = mean_and_stderr(f_vals);
  const MeanErr p = mean_and_stderr(p_vals);
  ExactSweep out;
  out.f = QuenchedEstimate{f.mean, f.std_err, f.n, "f_N"};
  out.pressure = QuenchedEstimate{p.mean, p.std_err, p.n, "P_N"};
  return out;
}

QuenchedEstimate estimate_f(const HierarchyParams& lattice, const ThermoParams& thermo,
                            int n_samples, const SeedSpec& seed, int jobs) {
  return quenched_sweep(lattice, thermo, n_samples, seed, jobs).f;
}

QuenchedEstimate quenched_pressure(const HierarchyParams& lattice, const ThermoParams& thermo,
                                   int n_samples, const SeedSpec& seed, int jobs) {
  return quenched_sweep(lattice, thermo, n_samples, seed, jobs).pressure;
}

}  // namespace dyson

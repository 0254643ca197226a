#include "dyson/model.hpp"

#include <cmath>
#include <stdexcept>

#include "dyson/logsum.hpp"

namespace dyson {

std::string to_string(FieldDist d) {
  return d == FieldDist::gaussian ? "gaussian" : "bernoulli";
}

FieldDist field_dist_from_string(const std::string& s) {
  if (s == "gaussian") return FieldDist::gaussian;
  if (s == "bernoulli") return FieldDist::bernoulli;
  throw std::invalid_argument("unknown field distribution '" + s +
                              "' (expected gaussian or bernoulli)");
}

double HierarchyParams::coupling(int level) const { return std::exp2(-alpha * level); }

double HierarchyParams::bn(int level) const { return std::exp2((2.0 - alpha) * level); }

void HierarchyParams::validate() const {
  if (!(alpha > 1.0)) throw std::invalid_argument("alpha must be > 1");
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  if (depth > 30) throw std::invalid_argument("depth must be <= 30");
}

void ThermoParams::validate() const {
  if (!(beta >= 0.0) || !std::isfinite(beta))
    throw std::invalid_argument("beta must be finite and >= 0");
  if (!(h >= 0.0) || !std::isfinite(h))
    throw std::invalid_argument("h must be finite and >= 0");
}

namespace {

void check_dims(const HierarchyParams& lattice, const DisorderSample& disorder,
                const SpinConfig& config) {
  const std::size_t n = static_cast<std::size_t>(lattice.sites());
  if (disorder.fields.size() != n)
    throw std::invalid_argument("field vector has " + std::to_string(disorder.fields.size()) +
                                " entries, lattice has " + std::to_string(n) + " sites");
  if (config.spins.size() != n)
    throw std::invalid_argument("spin vector has " + std::to_string(config.spins.size()) +
                                " entries, lattice has " + std::to_string(n) + " sites");
}

}  // namespace

double hamiltonian_energy(const HierarchyParams& lattice, const ThermoParams& thermo,
                          const DisorderSample& disorder, const SpinConfig& config) {
  lattice.validate();
  thermo.validate();
  check_dims(lattice, disorder, config);

  double energy = 0.0;
  for (int i = 0; i < lattice.sites(); ++i)
    energy -= thermo.h * disorder.fields[i] * config.spins[i];

  // Fold block sums pairwise; after iteration n `sums` holds level-n blocks.
  std::vector<long long> sums(config.spins.begin(), config.spins.end());
  for (int n = 1; n <= lattice.depth; ++n) {
    const double cn = lattice.coupling(n);
    const int blocks = lattice.sites() >> n;
    for (int b = 0; b < blocks; ++b) {
      sums[b] = sums[2 * b] + sums[2 * b + 1];
      energy -= cn * static_cast<double>(sums[b] * sums[b]);
    }
    sums.resize(blocks);
  }
  return energy;
}

BruteObservables brute_force_observables(const HierarchyParams& lattice,
                                         const ThermoParams& thermo,
                                         const DisorderSample& disorder) {
  lattice.validate();
  thermo.validate();
  const int n_sites = lattice.sites();
  if (n_sites > 20)
    throw std::invalid_argument("brute_force_observables: " + std::to_string(n_sites) +
                                " sites exceeds the 20-site enumeration limit");
  if (disorder.fields.size() != static_cast<std::size_t>(n_sites))
    throw std::invalid_argument("field vector size does not match lattice sites");

  const std::uint64_t n_conf = 1ULL << n_sites;
  std::vector<double> logw(n_conf);
  std::vector<int> stot(n_conf);

  // Same energy expression as hamiltonian_energy, inlined to avoid per-mask
  // allocations; this loop runs 2^(2^depth) times.
  std::vector<double> level_coupling(lattice.depth + 1, 0.0);
  for (int n = 1; n <= lattice.depth; ++n) level_coupling[n] = lattice.coupling(n);
  std::vector<long long> sums(n_sites);

  double max_logw = kNegInf;
  for (std::uint64_t mask = 0; mask < n_conf; ++mask) {
    double energy = 0.0;
    int total = 0;
    for (int i = 0; i < n_sites; ++i) {
      const int s = (mask >> i) & 1ULL ? 1 : -1;
      sums[i] = s;
      total += s;
      energy -= thermo.h * disorder.fields[i] * s;
    }
    int width = n_sites;
    for (int n = 1; n <= lattice.depth; ++n) {
      width >>= 1;
      const double cn = level_coupling[n];
      for (int b = 0; b < width; ++b) {
        sums[b] = sums[2 * b] + sums[2 * b + 1];
        energy -= cn * static_cast<double>(sums[b] * sums[b]);
      }
    }
    logw[mask] = -thermo.beta * energy;
    stot[mask] = total;
    if (logw[mask] > max_logw) max_logw = logw[mask];
  }

  double z = 0.0, s_acc = 0.0, s2_acc = 0.0;
  for (std::uint64_t mask = 0; mask < n_conf; ++mask) {
    const double w = std::exp(logw[mask] - max_logw);
    const double s = static_cast<double>(stot[mask]);
    z += w;
    s_acc += s * w;
    s2_acc += s * s * w;
  }

  BruteObservables out;
  out.log_z = max_logw + std::log(z);
  out.mean_s = s_acc / z;
  out.mean_s2 = s2_acc / z;
  return out;
}

}  // namespace dyson

#include "dyson/sector.hpp"

#include <cmath>
#include <stdexcept>

#include "dyson/logsum.hpp"

namespace dyson {

CouplingWeight coupling_weight(const HierarchyParams& lattice, const ThermoParams& thermo,
                               int level) {
  lattice.validate();
  thermo.validate();
  if (level < 1 || level > lattice.depth)
    throw std::invalid_argument("coupling_weight: level out of range");
  return CouplingWeight{thermo.beta * lattice.coupling(level)};
}

SectorTable leaf_table(const ThermoParams& thermo, double field_value) {
  thermo.validate();
  const double a = thermo.beta * thermo.h * field_value;
  return SectorTable{0, {-a, a}};
}

SectorTable merge(const HierarchyParams& lattice, const ThermoParams& thermo, int level,
                  const SectorTable& a, const SectorTable& b, std::uint64_t* work) {
  if (a.level != level - 1 || b.level != level - 1)
    throw std::invalid_argument("merge: inputs must both sit one level below the target");
  if (level < 1 || level > lattice.depth)
    throw std::invalid_argument("merge: level out of range for this lattice");

  const int la = a.entries();
  const int lb = b.entries();
  SectorTable out;
  out.level = level;
  out.logw.assign(out.entries(), kNegInf);

  // Index convolution: spins add, and S = -2^n + 2k makes k additive too.
  const double vn = thermo.beta * lattice.coupling(level);
  std::vector<double> terms;
  terms.reserve(la);
  std::uint64_t visits = 0;
  for (int s = 0; s < out.entries(); ++s) {
    terms.clear();
    const int k1_lo = std::max(0, s - (lb - 1));
    const int k1_hi = std::min(la - 1, s);
    for (int k1 = k1_lo; k1 <= k1_hi; ++k1) terms.push_back(a.logw[k1] + b.logw[s - k1]);
    visits += static_cast<std::uint64_t>(k1_hi - k1_lo + 1);
    const double spin = static_cast<double>(out.spin_of(s));
    out.logw[s] = log_sum_exp(terms) + vn * spin * spin;
  }
  if (work) *work += visits;
  return out;
}

SectorTable build_root(const HierarchyParams& lattice, const ThermoParams& thermo,
                       const DisorderSample& disorder, std::uint64_t* work) {
  lattice.validate();
  thermo.validate();
  if (disorder.fields.size() != static_cast<std::size_t>(lattice.sites()))
    throw std::invalid_argument("build_root: field vector size does not match lattice sites");

  std::vector<SectorTable> tables;
  tables.reserve(lattice.sites());
  for (double f : disorder.fields) tables.push_back(leaf_table(thermo, f));

  for (int n = 1; n <= lattice.depth; ++n) {
    std::vector<SectorTable> next;
    next.reserve(tables.size() / 2);
    for (std::size_t b = 0; b + 1 < tables.size(); b += 2)
      next.push_back(merge(lattice, thermo, n, tables[b], tables[b + 1], work));
    tables.swap(next);
  }
  return tables.front();
}

SectorObservables root_observables(const SectorTable& root) {
  double m = kNegInf;
  for (double w : root.logw) m = std::max(m, w);
  if (m == kNegInf) throw std::invalid_argument("root_observables: table is identically -inf");

  double z = 0.0, s_acc = 0.0, s2_acc = 0.0;
  for (int k = 0; k < root.entries(); ++k) {
    const double w = std::exp(root.logw[k] - m);
    const double s = static_cast<double>(root.spin_of(k));
    z += w;
    s_acc += s * w;
    s2_acc += s * s * w;
  }
  return SectorObservables{m + std::log(z), s_acc / z, s2_acc / z};
}

std::vector<double> restricted_partitions(const SectorTable& half, const IntervalPartition& part,
                                          CouplingWeight vn) {
  if (half.level != part.level - 1)
    throw std::invalid_argument("restricted_partitions: table must sit one level below the partition");

  // One pass: every spin value lands in exactly one part.
  std::vector<double> maxw(part.parts, kNegInf);
  std::vector<double> shifted, acc(part.parts, 0.0);
  std::vector<std::int64_t> idx(half.entries());
  std::vector<double> boosted(half.entries());
  for (int k = 0; k < half.entries(); ++k) {
    const double s = static_cast<double>(half.spin_of(k));
    boosted[k] = half.logw[k] + 2.0 * vn.vn * s * s;
    idx[k] = part.part_of_spin(half.spin_of(k));
    maxw[idx[k]] = std::max(maxw[idx[k]], boosted[k]);
  }
  std::vector<double> out(part.parts, kNegInf);
  for (int k = 0; k < half.entries(); ++k)
    if (maxw[idx[k]] != kNegInf) acc[idx[k]] += std::exp(boosted[k] - maxw[idx[k]]);
  for (std::int64_t j = 0; j < part.parts; ++j)
    if (maxw[j] != kNegInf) out[j] = maxw[j] + std::log(acc[j]);
  return out;
}

}  // namespace dyson

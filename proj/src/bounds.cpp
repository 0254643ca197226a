#include "dyson/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dyson {

namespace {

constexpr double kLn2 = std::numbers::ln2;
// 1 + sqrt(2 pi e), the entropy constant of the sub-Gaussian envelope.
const double kOnePlusSqrt2PiE = 1.0 + std::sqrt(2.0 * std::numbers::pi * std::numbers::e);

void check_point(const BoundPoint& pt) {
  if (!(pt.alpha > 1.0) || !(pt.alpha < 1.5))
    throw std::domain_error("hypothesis failed: alpha must lie in (1, 1.5)");
  if (!(pt.c > 0.0) || !std::isfinite(pt.c))
    throw std::domain_error("hypothesis failed: c must be positive and finite");
  if (!(pt.c * std::exp2(2.0 - pt.alpha) >= 1.0))
    throw std::domain_error("hypothesis failed: need 1 <= sqrt(c 2^(2-alpha))");
  if (!(pt.h >= 0.0) || !std::isfinite(pt.h))
    throw std::domain_error("hypothesis failed: h must be >= 0");
  if (!(pt.inv_beta >= 0.0) || !std::isfinite(pt.inv_beta))
    throw std::domain_error(
        "hypothesis failed: inv_beta must be >= 0 (0 is the zero-temperature limit)");
}

}  // namespace

void BoundParams::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("c must be positive");
  if (!(d >= 0.0) || !std::isfinite(d)) throw std::invalid_argument("d must be >= 0");
}

double IntervalPartition::width() const {
  return std::exp2(level) / static_cast<double>(parts);
}

double IntervalPartition::part_left(std::int64_t k) const {
  return -std::exp2(level - 1) + static_cast<double>(k) * width();
}

double IntervalPartition::part_right(std::int64_t k) const { return part_left(k + 1); }

std::int64_t IntervalPartition::part_of_spin(std::int64_t spin) const {
  const std::int64_t full = std::int64_t{1} << level;
  const std::int64_t half = full / 2;
  if (spin < -half || spin > half)
    throw std::out_of_range("part_of_spin: spin outside [-2^(N-1), 2^(N-1)]");
  // Exact integer bucket: u * parts / 2^N, right endpoint folded into the
  // last part.  No floating-point rounding can misplace a boundary spin.
  const std::int64_t u = spin + half;
  std::int64_t idx = (u * parts) >> level;
  if (idx == parts) idx = parts - 1;
  return idx;
}

IntervalPartition make_partition(const HierarchyParams& lattice, const ThermoParams& thermo,
                                 const BoundParams& bp, int level) {
  lattice.validate();
  thermo.validate();
  bp.validate();
  if (level < 1 || level > lattice.depth)
    throw std::invalid_argument("make_partition: level must lie in [1, depth]");
  if (thermo.beta == 0.0 && bp.d != 0.0)
    throw std::invalid_argument("make_partition: beta = 0 needs d = 0 (beta^d undefined)");

  const double b = lattice.bn(level);
  if (!(b > 0.0) || !std::isfinite(b))
    throw std::invalid_argument("make_partition: b_N underflowed or overflowed");
  const double x = std::sqrt(bp.c * std::pow(thermo.beta, bp.d) * b);
  if (!std::isfinite(x) || x >= 9.0e15)
    throw std::invalid_argument("make_partition: sqrt(c beta^d b_N) out of range");

  IntervalPartition part;
  part.level = level;
  part.parts = static_cast<std::int64_t>(std::floor(x)) + 1;
  if (part.parts > (std::int64_t{1} << 31))
    throw std::invalid_argument("make_partition: r_N too large");
  return part;
}

double recurrence_penalty_constant(const HierarchyParams& lattice, const ThermoParams& thermo,
                                   const BoundParams& bp, int level) {
  lattice.validate();
  thermo.validate();
  bp.validate();
  if (!(thermo.beta > 0.0))
    throw std::domain_error("hypothesis failed: recurrence penalty needs beta > 0");
  if (level < 1 || level > lattice.depth)
    throw std::invalid_argument("recurrence_penalty_constant: level must lie in [1, depth]");
  const double b = lattice.bn(level);
  if (!(b > 0.0) || !std::isfinite(b))
    throw std::invalid_argument("recurrence_penalty_constant: b_N out of range");
  const double x = bp.c * std::pow(thermo.beta, bp.d) * b;
  return (std::pow(thermo.beta, 1.0 - bp.d) / bp.c + std::log1p(std::sqrt(x))) /
         (thermo.beta * b);
}

double theorem1_bound(const BoundPoint& pt) {
  check_point(pt);
  const double a2 = std::exp2(pt.alpha);        // 2^alpha
  const double g1 = 4.0 - a2;                   // gap of the 2^{alpha-2} series
  const double g2 = std::exp2(1.5) - a2;        // gap of the 2^{alpha-3/2} series
  const double ln_2sqrt_c = kLn2 + 0.5 * std::log(pt.c);

  const double s_flat = a2 / g1 / pt.c;
  const double s_temp =
      pt.inv_beta * (a2 / g1 * ln_2sqrt_c + (2.0 - pt.alpha) * 2.0 * a2 / (g1 * g1) * kLn2);
  const double s_field =
      pt.h * (a2 / g2 * (ln_2sqrt_c + std::log(kOnePlusSqrt2PiE)) +
              (2.0 - pt.alpha) * std::exp2(0.5) * a2 / (g2 * g2) * kLn2);
  return 1.0 - s_flat - s_temp - s_field;
}

double series_term(const BoundPoint& pt, std::int64_t p) {
  check_point(pt);
  if (p < 1) throw std::invalid_argument("series_term: p must be >= 1");
  // b_p = 2^{(2-alpha)p} is never materialized; exponents are combined first
  // so the term underflows gracefully instead of overflowing.
  const double pd = static_cast<double>(p);
  const double log2_bp = (2.0 - pt.alpha) * pd;
  const double ln_2sqrt_cbp = kLn2 + 0.5 * (std::log(pt.c) + log2_bp * kLn2);
  const double inv_bp = std::exp2(-log2_bp);
  return inv_bp / pt.c + pt.inv_beta * inv_bp * ln_2sqrt_cbp +
         pt.h * std::exp2((pt.alpha - 1.5) * pd) * (ln_2sqrt_cbp + std::log(kOnePlusSqrt2PiE));
}

double partial_sum_bound(const BoundPoint& pt, int n_levels) {
  check_point(pt);
  if (n_levels < 0) throw std::invalid_argument("partial_sum_bound: n_levels must be >= 0");
  double sum = 0.0;
  for (int p = 1; p <= n_levels; ++p) sum += series_term(pt, p);
  return 1.0 - sum;
}

double series_sum(const BoundPoint& pt) {
  check_point(pt);
  double sum = 0.0;
  for (std::int64_t p = 1; p <= (std::int64_t{1} << 21); ++p) {
    const double t = series_term(pt, p);
    sum += t;
    if (t < 1e-15 * sum) break;
  }
  return sum;
}

std::vector<RegionPoint> region_scan(double alpha, double c, std::span<const double> h_values,
                                     std::span<const double> inv_beta_values) {
  std::vector<RegionPoint> out;
  out.reserve(h_values.size() * inv_beta_values.size());
  for (double h : h_values)
    for (double ib : inv_beta_values) {
      const double v = theorem1_bound(BoundPoint{alpha, c, h, ib});
      out.push_back(RegionPoint{h, ib, v, v > 0.0});
    }
  return out;
}

}  // namespace dyson

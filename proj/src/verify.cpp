#include "dyson/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dyson/logsum.hpp"
#include "dyson/sector.hpp"
#include "dyson/stats.hpp"

namespace dyson {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::holds_within_3_stderr: return "holds_within_3_stderr";
    case Verdict::violated: return "violated";
  }
  throw std::logic_error("unknown verdict");
}

Verdict verdict_from_slack(double slack, double slack_std_err, double noise_floor) {
  if (slack >= -noise_floor) return Verdict::holds;
  if (slack >= -3.0 * slack_std_err - noise_floor) return Verdict::holds_within_3_stderr;
  return Verdict::violated;
}

namespace {

const double kOnePlusSqrt2PiE = 1.0 + std::sqrt(2.0 * std::numbers::pi * std::numbers::e);

struct SplitContext {
  HierarchyParams full;
  HierarchyParams half;
  ThermoParams thermo;
  CouplingWeight vn;
};

SplitContext make_context(const HierarchyParams& lattice, const ThermoParams& thermo) {
  if (lattice.depth < 1)
    throw std::invalid_argument("split evaluation needs depth >= 1");
  return SplitContext{lattice, HierarchyParams{lattice.alpha, lattice.depth - 1}, thermo,
                      coupling_weight(lattice, thermo, lattice.depth)};
}

void split_fields(const SplitContext& ctx, const DisorderSample& sample, DisorderSample& s1,
                  DisorderSample& s2) {
  const auto mid = sample.fields.begin() + ctx.half.sites();
  s1.fields.assign(sample.fields.begin(), mid);
  s2.fields.assign(mid, sample.fields.end());
  s1.origin = s2.origin = sample.origin;
}

struct SampleEval {
  double f_full = 0.0;
  double f_half = 0.0;  // two half blocks averaged
  double log_z_full = 0.0;
  double log_z1 = 0.0;
  double log_z2 = 0.0;
  double s2_full = 0.0;
  double max_log_ratio = kNegInf;
  bool has_ratio = false;
};

// max_k (z1[k] - z2[k]) over parts where both sides are supported.  Support
// depends only on the partition geometry, so the halves share empty parts.
double max_ratio(const std::vector<double>& z1, const std::vector<double>& z2, bool strict,
                 bool* any) {
  double mg = kNegInf;
  *any = false;
  for (std::size_t k = 0; k < z1.size(); ++k) {
    if (z1[k] == kNegInf || z2[k] == kNegInf) {
      if (strict)
        throw std::runtime_error("empty interval sector at part " + std::to_string(k) +
                                 " (part width below one spin step); rerun without strict mode");
      continue;
    }
    *any = true;
    mg = std::max(mg, z1[k] - z2[k]);
  }
  return mg;
}

SampleEval eval_split(const SplitContext& ctx, const DisorderSample& sample,
                      const IntervalPartition* part, bool strict) {
  DisorderSample s1, s2;
  split_fields(ctx, sample, s1, s2);
  const SectorTable t1 = build_root(ctx.half, ctx.thermo, s1);
  const SectorTable t2 = build_root(ctx.half, ctx.thermo, s2);
  const SectorTable full = merge(ctx.full, ctx.thermo, ctx.full.depth, t1, t2);
  const SectorObservables o1 = root_observables(t1);
  const SectorObservables o2 = root_observables(t2);
  const SectorObservables of = root_observables(full);

  SampleEval ev;
  ev.log_z1 = o1.log_z;
  ev.log_z2 = o2.log_z;
  ev.log_z_full = of.log_z;
  ev.s2_full = of.mean_s2;
  ev.f_full = of.mean_s2 / std::exp2(2.0 * ctx.full.depth);
  ev.f_half = 0.5 * (o1.mean_s2 + o2.mean_s2) / std::exp2(2.0 * ctx.half.depth);
  if (part) {
    const std::vector<double> z1 = restricted_partitions(t1, *part, ctx.vn);
    const std::vector<double> z2 = restricted_partitions(t2, *part, ctx.vn);
    ev.max_log_ratio = max_ratio(z1, z2, strict, &ev.has_ratio);
  }
  return ev;
}

std::vector<SampleEval> run_samples(const SplitContext& ctx, const IntervalPartition* part,
                                    const VerifyConfig& cfg) {
  if (cfg.n_samples < 2) throw std::invalid_argument("need n_samples >= 2");
  std::vector<SampleEval> evals(cfg.n_samples);
  parallel_for_index(cfg.n_samples, cfg.jobs, [&](std::int64_t j) {
    evals[j] = eval_split(ctx, draw_sample(ctx.full, ctx.thermo, cfg.seed, j), part,
                          cfg.strict_sectors);
  });
  return evals;
}

struct PairedStats {
  MeanErr lhs, rhs, slack;
  std::int64_t rejected = 0;
};

// slack_sign = +1 verifies lhs >= rhs, -1 verifies lhs <= rhs; slack is the
// margin by which the inequality held on each paired draw.
template <class LhsFn, class RhsFn>
PairedStats paired_stats(const std::vector<SampleEval>& evals, bool need_ratio, LhsFn lhs_of,
                         RhsFn rhs_of, double slack_sign) {
  std::vector<double> lhs, rhs, slack;
  PairedStats out;
  for (const SampleEval& ev : evals) {
    if (need_ratio && !ev.has_ratio) {
      ++out.rejected;
      continue;
    }
    lhs.push_back(lhs_of(ev));
    rhs.push_back(rhs_of(ev));
    slack.push_back(slack_sign * (lhs.back() - rhs.back()));
  }
  if (lhs.size() < 2)
    throw std::runtime_error("fewer than 2 usable samples after sector rejection");
  out.lhs = mean_and_stderr(lhs);
  out.rhs = mean_and_stderr(rhs);
  out.slack = mean_and_stderr(slack);
  return out;
}

InequalityReport assemble(const std::string& name, const PairedStats& st,
                          const std::string& lhs_tag, const std::string& rhs_tag,
                          const VerifyConfig& cfg) {
  InequalityReport rep;
  rep.inequality = name;
  rep.lhs = QuenchedEstimate{st.lhs.mean, st.lhs.std_err, st.lhs.n, lhs_tag};
  rep.rhs = QuenchedEstimate{st.rhs.mean, st.rhs.std_err, st.rhs.n, rhs_tag};
  rep.slack = st.slack.mean;
  rep.slack_std_err = st.slack.std_err;
  const double floor =
      1e-13 * std::max({1.0, std::abs(st.lhs.mean), std::abs(st.rhs.mean)});
  rep.verdict = verdict_from_slack(rep.slack, rep.slack_std_err, floor);
  rep.n_samples = st.lhs.n;
  rep.n_rejected = st.rejected;
  rep.seed = cfg.seed;
  return rep;
}

}  // namespace

InequalityReport recurrence_check(const HierarchyParams& lattice, const ThermoParams& thermo,
                                  const BoundParams& bp, const VerifyConfig& cfg) {
  lattice.validate();
  thermo.validate();
  bp.validate();
  if (!(thermo.beta > 0.0))
    throw std::domain_error("hypothesis failed: recurrence check needs beta > 0");
  const SplitContext ctx = make_context(lattice, thermo);
  const IntervalPartition part = make_partition(lattice, thermo, bp, lattice.depth);
  const double penalty = recurrence_penalty_constant(lattice, thermo, bp, lattice.depth);
  const double inv_bbn = 1.0 / (thermo.beta * lattice.bn(lattice.depth));

  const std::vector<SampleEval> evals = run_samples(ctx, &part, cfg);
  // slack_j = f_N - (f_{N-1} - penalty - max_k g_k / (beta b_N)), paired per draw.
  const PairedStats st = paired_stats(
      evals, true, [](const SampleEval& ev) { return ev.f_full; },
      [&](const SampleEval& ev) { return ev.f_half - penalty - inv_bbn * ev.max_log_ratio; },
      +1.0);
  return assemble("lemma3", st, "f_N", "recurrence_rhs", cfg);
}

InequalityReport max_log_ratio_check(const HierarchyParams& lattice, const ThermoParams& thermo,
                                     const BoundParams& bp, const VerifyConfig& cfg) {
  lattice.validate();
  thermo.validate();
  bp.validate();
  if (!(thermo.beta > 0.0))
    throw std::domain_error("hypothesis failed: max-log-ratio check needs beta > 0");
  if (!(thermo.h > 0.0))
    throw std::domain_error("hypothesis failed: max-log-ratio check needs h > 0");
  const SplitContext ctx = make_context(lattice, thermo);
  const IntervalPartition part = make_partition(lattice, thermo, bp, lattice.depth);
  const double bN = lattice.bn(lattice.depth);
  const double envelope = thermo.beta * thermo.h * std::exp2(0.5 * lattice.depth) *
                          std::log((1.0 + std::sqrt(bp.c * std::pow(thermo.beta, bp.d) * bN)) *
                                   kOnePlusSqrt2PiE);

  const std::vector<SampleEval> evals = run_samples(ctx, &part, cfg);
  // Envelope is deterministic; slack_j = envelope - max_k g_k.
  const PairedStats st = paired_stats(
      evals, true, [](const SampleEval& ev) { return ev.max_log_ratio; },
      [&](const SampleEval&) { return envelope; }, -1.0);
  return assemble("lemma5", st, "E_max_log_ratio", "subgaussian_envelope", cfg);
}

InequalityReport gibbs_bogoliubov_check(const HierarchyParams& lattice,
                                        const ThermoParams& thermo, const VerifyConfig& cfg) {
  lattice.validate();
  thermo.validate();
  const SplitContext ctx = make_context(lattice, thermo);
  const std::vector<SampleEval> evals = run_samples(ctx, nullptr, cfg);
  // log Z_full <= log Z_1 + log Z_2 + v_N <S^2>_full holds per realization.
  const double vn = ctx.vn.vn;
  const PairedStats st = paired_stats(
      evals, false, [](const SampleEval& ev) { return ev.log_z_full; },
      [&](const SampleEval& ev) { return ev.log_z1 + ev.log_z2 + vn * ev.s2_full; }, -1.0);
  return assemble("gb", st, "log_Z_full", "log_Z_halves_plus_coupling", cfg);
}

LipschitzReport lipschitz_check(const HierarchyParams& lattice, const ThermoParams& thermo,
                                const BoundParams& bp, int n_probes, const SeedSpec& seed,
                                double fd_step) {
  lattice.validate();
  thermo.validate();
  bp.validate();
  if (thermo.dist != FieldDist::gaussian)
    throw std::domain_error(
        "hypothesis failed: the derivative probe needs gaussian fields (continuous coordinates)");
  if (n_probes < 1) throw std::invalid_argument("lipschitz_check: need n_probes >= 1");
  if (!(fd_step > 0.0)) throw std::invalid_argument("lipschitz_check: fd_step must be > 0");
  const SplitContext ctx = make_context(lattice, thermo);
  const IntervalPartition part = make_partition(lattice, thermo, bp, lattice.depth);

  const int sites = lattice.sites();
  const int half_sites = ctx.half.sites();
  const std::int64_t n_points = (n_probes + sites - 1) / sites;

  double max_abs = 0.0;
  for (std::int64_t j = 0; j < n_points; ++j) {
    const DisorderSample sample = draw_sample(lattice, thermo, seed, j);
    DisorderSample s1, s2;
    split_fields(ctx, sample, s1, s2);
    for (int i = 0; i < sites; ++i) {
      // Only the half containing site i moves; the other half cancels in the
      // log ratio, so the derivative of g_k is the derivative of this z[k].
      DisorderSample& own = i < half_sites ? s1 : s2;
      const int local = i < half_sites ? i : i - half_sites;
      const double saved = own.fields[local];

      own.fields[local] = saved + fd_step;
      const std::vector<double> zp =
          restricted_partitions(build_root(ctx.half, thermo, own), part, ctx.vn);
      own.fields[local] = saved - fd_step;
      const std::vector<double> zm =
          restricted_partitions(build_root(ctx.half, thermo, own), part, ctx.vn);
      own.fields[local] = saved;

      for (std::size_t k = 0; k < zp.size(); ++k) {
        if (zp[k] == kNegInf || zm[k] == kNegInf) continue;
        max_abs = std::max(max_abs, std::abs(zp[k] - zm[k]) / (2.0 * fd_step));
      }
    }
  }

  LipschitzReport rep;
  rep.max_abs_derivative = max_abs;
  rep.bound = thermo.beta * thermo.h;
  rep.tolerance = 1e-6;
  rep.holds = max_abs <= rep.bound * (1.0 + rep.tolerance);
  rep.n_probes = n_points * sites;
  rep.fd_step = fd_step;
  rep.seed = seed;
  return rep;
}

TailReport tail_check(const HierarchyParams& lattice, const ThermoParams& thermo,
                      const BoundParams& bp, int n_samples, std::span<const double> t_values,
                      const SeedSpec& seed, int jobs) {
  lattice.validate();
  thermo.validate();
  bp.validate();
  if (!(thermo.beta > 0.0))
    throw std::domain_error("hypothesis failed: tail check needs beta > 0");
  if (!(thermo.h > 0.0)) throw std::domain_error("hypothesis failed: tail check needs h > 0");
  if (n_samples < 100) throw std::invalid_argument("tail_check: need n_samples >= 100");
  for (double t : t_values)
    if (!(t >= 0.0)) throw std::invalid_argument("tail_check: thresholds must be >= 0");
  const SplitContext ctx = make_context(lattice, thermo);
  const IntervalPartition part = make_partition(lattice, thermo, bp, lattice.depth);
  const std::size_t r = static_cast<std::size_t>(part.parts);

  std::vector<double> z1(static_cast<std::size_t>(n_samples) * r);
  std::vector<double> z2(z1.size());
  VerifyConfig cfg;
  cfg.n_samples = n_samples;
  cfg.seed = seed;
  cfg.jobs = jobs;
  parallel_for_index(n_samples, jobs, [&](std::int64_t j) {
    const DisorderSample sample = draw_sample(lattice, thermo, seed, j);
    DisorderSample s1, s2;
    split_fields(ctx, sample, s1, s2);
    const std::vector<double> a =
        restricted_partitions(build_root(ctx.half, thermo, s1), part, ctx.vn);
    const std::vector<double> b =
        restricted_partitions(build_root(ctx.half, thermo, s2), part, ctx.vn);
    std::copy(a.begin(), a.end(), z1.begin() + static_cast<std::int64_t>(j * r));
    std::copy(b.begin(), b.end(), z2.begin() + static_cast<std::int64_t>(j * r));
  });

  // Fixed observation part: the one with the largest mean restricted weight.
  std::int64_t k_star = -1;
  double best = kNegInf;
  for (std::size_t k = 0; k < r; ++k) {
    if (z1[k] == kNegInf) continue;  // support is sample-independent
    double acc = 0.0;
    for (std::int64_t j = 0; j < n_samples; ++j)
      acc += z1[static_cast<std::size_t>(j) * r + k] + z2[static_cast<std::size_t>(j) * r + k];
    if (acc > best) {
      best = acc;
      k_star = static_cast<std::int64_t>(k);
    }
  }
  if (k_star < 0) throw std::runtime_error("tail_check: no supported interval part");

  std::vector<double> g(n_samples);
  for (std::int64_t j = 0; j < n_samples; ++j)
    g[j] = z1[static_cast<std::size_t>(j) * r + k_star] -
           z2[static_cast<std::size_t>(j) * r + k_star];
  const MeanErr gm = mean_and_stderr(g);

  TailReport rep;
  rep.lipschitz_l = thermo.beta * thermo.h * std::exp2(0.5 * lattice.depth);
  rep.part_index = k_star;
  rep.g_mean = gm.mean;
  rep.n_samples = n_samples;
  rep.seed = seed;
  rep.holds = true;
  for (double t : t_values) {
    TailPoint pt;
    pt.t = t;
    pt.bound = std::exp(-t * t / (2.0 * rep.lipschitz_l * rep.lipschitz_l));
    pt.exceed_count = 0;
    for (double gj : g)
      if (gj - gm.mean >= t) ++pt.exceed_count;
    pt.empirical = static_cast<double>(pt.exceed_count) / static_cast<double>(n_samples);
    pt.upper_cl = binomial_upper_confidence(pt.exceed_count, n_samples, 0.99);
    pt.holds = pt.upper_cl <= pt.bound;
    rep.holds = rep.holds && pt.holds;
    rep.points.push_back(pt);
  }
  return rep;
}

}  // namespace dyson

// Command line front end: exact quenched averages, Metropolis cross-checks,
// the closed-form positivity bound, region scans, and inequality verification
// runs.  All numeric output is deterministic for a fixed seed and job count
// independent, and every file embeds the config needed to reproduce it.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <stdexcept>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dyson/bounds.hpp"
#include "dyson/disorder.hpp"
#include "dyson/mc.hpp"
#include "dyson/model.hpp"
#include "dyson/report_json.hpp"
#include "dyson/sector.hpp"
#include "dyson/verify.hpp"

namespace {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << text;
}

// Shared physical options.
struct CommonOpts {
  double alpha = 1.2;
  int depth = 0;
  double beta = 1.0;
  double h = 0.0;
  std::string dist = "gaussian";
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
  int jobs = 1;
  std::string format = "csv";
  std::string output;
};

// --h is taken by the field strength, so help lives on --help alone.
CLI::App* add_command(CLI::App& app, const std::string& name, const std::string& desc) {
  CLI::App* cmd = app.add_subcommand(name, desc);
  cmd->set_help_flag("--help", "print this help message and exit");
  return cmd;
}

void add_lattice_opts(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--alpha", o.alpha, "coupling decay exponent (> 1)")->required();
  cmd->add_option("--N", o.depth, "hierarchy depth; 2^N sites")->required();
}

void add_thermo_opts(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--beta", o.beta, "inverse temperature");
  cmd->add_option("--h", o.h, "random field strength");
  cmd->add_option("--dist", o.dist, "field law: gaussian or bernoulli")
      ->check(CLI::IsMember({"gaussian", "bernoulli"}));
}

void add_run_opts(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--stream", o.stream, "disorder stream id");
  cmd->add_option("--jobs", o.jobs, "worker threads (never changes results)");
}

void add_output_opts(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--output", o.output, "output path (default: stdout)");
}

dyson::HierarchyParams lattice_of(const CommonOpts& o) {
  const dyson::HierarchyParams lat{o.alpha, o.depth};
  lat.validate();
  return lat;
}

dyson::ThermoParams thermo_of(const CommonOpts& o) {
  const dyson::ThermoParams th{o.beta, o.h, dyson::field_dist_from_string(o.dist)};
  th.validate();
  return th;
}

std::string rerun_prefix(const std::string& cmd, const CommonOpts& o, bool thermo) {
  std::string line = "dyson-rfim " + cmd + " --alpha " + fmt17(o.alpha) + " --N " +
                     std::to_string(o.depth);
  if (thermo)
    line += " --beta " + fmt17(o.beta) + " --h " + fmt17(o.h) + " --dist " + o.dist;
  return line;
}

std::string csv_header(const json& config, const std::string& rerun) {
  return "# rerun: " + rerun + "\n# config: " + config.dump() + "\n";
}

// ---------------------------------------------------------------- exact ----

struct ExactOpts : CommonOpts {
  int samples = 100;
};

void run_exact(const ExactOpts& o) {
  const dyson::HierarchyParams lat = lattice_of(o);
  const dyson::ThermoParams th = thermo_of(o);
  const dyson::SeedSpec seed{o.seed, o.stream};
  const dyson::ExactSweep sweep = dyson::quenched_sweep(lat, th, o.samples, seed, o.jobs);

  json config{{"command", "exact"},    {"alpha", o.alpha},   {"N", o.depth},
              {"beta", o.beta},        {"h", o.h},           {"dist", o.dist},
              {"samples", o.samples},  {"seed", o.seed},     {"stream", o.stream},
              {"jobs", o.jobs},        {"format", o.format}};
  const std::string rerun = rerun_prefix("exact", o, true) + " --samples " +
                            std::to_string(o.samples) + " --seed " + std::to_string(o.seed) +
                            " --stream " + std::to_string(o.stream);

  const dyson::QuenchedEstimate rows[] = {sweep.f, sweep.pressure};
  if (o.format == "json") {
    json results = json::array();
    for (const auto& r : rows)
      results.push_back(json{{"quantity", r.tag},
                             {"mean", r.mean},
                             {"stderr", r.std_err},
                             {"n_samples", r.n_samples}});
    emit(json{{"config", config}, {"results", results}}.dump(2) + "\n", o.output);
    return;
  }
  std::string text = csv_header(config, rerun) + "quantity,mean,stderr,n_samples\n";
  for (const auto& r : rows)
    text += r.tag + "," + fmt17(r.mean) + "," + fmt17(r.std_err) + "," +
            std::to_string(r.n_samples) + "\n";
  emit(text, o.output);
}

// ------------------------------------------------------------------- mc ----

struct McOpts : CommonOpts {
  std::int64_t sweeps = 20000;
  std::int64_t burn_in = 2000;
  std::uint64_t sample_index = 0;
};

void run_mc(const McOpts& o) {
  const dyson::HierarchyParams lat = lattice_of(o);
  const dyson::ThermoParams th = thermo_of(o);
  const dyson::SeedSpec seed{o.seed, o.stream};
  const dyson::DisorderSample dis = dyson::draw_sample(lat, th, seed, o.sample_index);
  const dyson::McEstimate est = dyson::metropolis_run(lat, th, dis, o.sweeps, o.burn_in, seed);

  json config{{"command", "mc"},       {"alpha", o.alpha},
              {"N", o.depth},          {"beta", o.beta},
              {"h", o.h},              {"dist", o.dist},
              {"sweeps", o.sweeps},    {"burn_in", o.burn_in},
              {"sample_index", o.sample_index}, {"seed", o.seed},
              {"stream", o.stream},    {"format", o.format}};
  const std::string rerun = rerun_prefix("mc", o, true) + " --sweeps " +
                            std::to_string(o.sweeps) + " --burn-in " + std::to_string(o.burn_in) +
                            " --sample-index " + std::to_string(o.sample_index) + " --seed " +
                            std::to_string(o.seed) + " --stream " + std::to_string(o.stream);

  if (o.format == "json") {
    json results = json::array();
    results.push_back(json{{"quantity", "mc_S2"},
                           {"mean", est.mean_s2},
                           {"stderr", est.std_err},
                           {"n_samples", est.measured_sweeps}});
    results.push_back(json{{"quantity", "acceptance_rate"},
                           {"mean", est.acceptance_rate},
                           {"stderr", 0.0},
                           {"n_samples", est.measured_sweeps}});
    results.push_back(json{{"quantity", "tau_int"},
                           {"mean", est.tau_int},
                           {"stderr", 0.0},
                           {"n_samples", est.measured_sweeps}});
    emit(json{{"config", config}, {"results", results}}.dump(2) + "\n", o.output);
    return;
  }
  std::string text = csv_header(config, rerun) + "quantity,mean,stderr,n_samples\n";
  text += "mc_S2," + fmt17(est.mean_s2) + "," + fmt17(est.std_err) + "," +
          std::to_string(est.measured_sweeps) + "\n";
  text += "acceptance_rate," + fmt17(est.acceptance_rate) + ",0," +
          std::to_string(est.measured_sweeps) + "\n";
  text += "tau_int," + fmt17(est.tau_int) + ",0," + std::to_string(est.measured_sweeps) + "\n";
  emit(text, o.output);
}

// ---------------------------------------------------------------- bound ----

struct BoundOpts {
  double alpha = 1.2;
  double c = 10.0;
  double h = 0.0;
  double inv_beta = -1.0;
  double beta = -1.0;
  bool zero_temperature = false;
  std::string format = "csv";
  std::string output;
};

double resolve_inv_beta(const BoundOpts& o) {
  const int given = (o.inv_beta >= 0.0) + (o.beta > 0.0) + o.zero_temperature;
  if (given == 0)
    throw std::invalid_argument("bound: give one of --inv-beta, --beta, --zero-temperature");
  if (given > 1)
    throw std::invalid_argument(
        "bound: --inv-beta, --beta and --zero-temperature are mutually exclusive");
  if (o.zero_temperature) return 0.0;
  if (o.beta > 0.0) return 1.0 / o.beta;
  return o.inv_beta;
}

void run_bound(const BoundOpts& o) {
  const double inv_beta = resolve_inv_beta(o);
  const double value = dyson::theorem1_bound(dyson::BoundPoint{o.alpha, o.c, o.h, inv_beta});
  json config{{"command", "bound"}, {"alpha", o.alpha},      {"c", o.c},
              {"h", o.h},           {"inv_beta", inv_beta},  {"format", o.format}};
  if (o.format == "json") {
    emit(json{{"config", config}, {"bound", value}, {"positive", value > 0.0}}.dump(2) + "\n",
         o.output);
    return;
  }
  emit(fmt17(value) + "\n", o.output);
}

// --------------------------------------------------------------- region ----

struct RegionOpts {
  double alpha = 1.2;
  double c = 10.0;
  double h_max = 0.1;
  double inv_beta_max = 0.2;
  int grid = 64;
  std::string format = "csv";
  std::string output;
};

void run_region(const RegionOpts& o) {
  if (o.grid < 2) throw std::invalid_argument("region: --grid must be >= 2");
  std::vector<double> hs(o.grid), ibs(o.grid);
  for (int i = 0; i < o.grid; ++i) {
    hs[i] = o.h_max * i / (o.grid - 1);
    ibs[i] = o.inv_beta_max * i / (o.grid - 1);
  }
  const std::vector<dyson::RegionPoint> pts = dyson::region_scan(o.alpha, o.c, hs, ibs);

  json config{{"command", "region"}, {"alpha", o.alpha},
              {"c", o.c},            {"h_max", o.h_max},
              {"inv_beta_max", o.inv_beta_max}, {"grid", o.grid},
              {"format", o.format}};
  const std::string rerun = "dyson-rfim region --alpha " + fmt17(o.alpha) + " --c " + fmt17(o.c) +
                            " --h-max " + fmt17(o.h_max) + " --inv-beta-max " +
                            fmt17(o.inv_beta_max) + " --grid " + std::to_string(o.grid);
  if (o.format == "json") {
    json rows = json::array();
    for (const auto& p : pts)
      rows.push_back(json{{"h", p.h}, {"inv_beta", p.inv_beta}, {"bound", p.bound},
                          {"positive", p.positive}});
    emit(json{{"config", config}, {"points", rows}}.dump(2) + "\n", o.output);
    return;
  }
  std::string text = csv_header(config, rerun) + "h,inv_beta,bound,positive\n";
  for (const auto& p : pts)
    text += fmt17(p.h) + "," + fmt17(p.inv_beta) + "," + fmt17(p.bound) + "," +
            (p.positive ? "1" : "0") + "\n";
  emit(text, o.output);
}

// --------------------------------------------------------------- verify ----

struct VerifyOpts : CommonOpts {
  std::string target;
  double c = 10.0;
  double d = 0.0;
  int samples = 1000;
  bool strict = false;
  int probes = 1000;
  double fd_step = 1e-4;
  std::vector<double> t_mult{0.5, 1.0, 2.0};
};

void run_verify(const VerifyOpts& o) {
  const dyson::HierarchyParams lat = lattice_of(o);
  const dyson::ThermoParams th = thermo_of(o);
  const dyson::BoundParams bp{o.c, o.d};
  dyson::VerifyConfig cfg;
  cfg.n_samples = o.samples;
  cfg.seed = dyson::SeedSpec{o.seed, o.stream};
  cfg.jobs = o.jobs;
  cfg.strict_sectors = o.strict;

  json config{{"command", "verify"}, {"target", o.target}, {"alpha", o.alpha},
              {"N", o.depth},        {"beta", o.beta},     {"h", o.h},
              {"dist", o.dist},      {"c", o.c},           {"d", o.d},
              {"samples", o.samples},{"seed", o.seed},     {"stream", o.stream},
              {"jobs", o.jobs},      {"strict", o.strict}};

  json report;
  if (o.target == "lemma3") {
    report = dyson::report_json(dyson::recurrence_check(lat, th, bp, cfg), lat, th, &bp);
  } else if (o.target == "lemma5") {
    report = dyson::report_json(dyson::max_log_ratio_check(lat, th, bp, cfg), lat, th, &bp);
  } else if (o.target == "gb") {
    report = dyson::report_json(dyson::gibbs_bogoliubov_check(lat, th, cfg), lat, th, nullptr);
  } else if (o.target == "lipschitz") {
    config["probes"] = o.probes;
    config["fd_step"] = o.fd_step;
    report = dyson::report_json(
        dyson::lipschitz_check(lat, th, bp, o.probes, cfg.seed, o.fd_step), lat, th, bp);
  } else if (o.target == "tail") {
    const double L = th.beta * th.h * std::exp2(0.5 * lat.depth);
    std::vector<double> ts;
    for (double m : o.t_mult) ts.push_back(m * L);
    config["t_mult"] = o.t_mult;
    report = dyson::report_json(
        dyson::tail_check(lat, th, bp, o.samples, ts, cfg.seed, cfg.jobs), lat, th, bp);
  } else {
    throw std::invalid_argument("verify: unknown target '" + o.target + "'");
  }
  emit(json{{"config", config}, {"report", report}}.dump(2) + "\n", o.output);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hierarchical random-field Ising chain: exact engine, bound, verification"};
  app.set_help_flag("--help", "print this help message and exit");
  app.require_subcommand(1);

  ExactOpts exact_opts;
  CLI::App* exact = add_command(app, "exact", "quenched f_N and pressure from the sector build");
  add_lattice_opts(exact, exact_opts);
  add_thermo_opts(exact, exact_opts);
  exact->add_option("--samples", exact_opts.samples, "disorder samples")->check(CLI::Range(2, 1 << 26));
  add_run_opts(exact, exact_opts);
  add_output_opts(exact, exact_opts);

  McOpts mc_opts;
  CLI::App* mc = add_command(app, "mc", "Metropolis chain on one disorder sample");
  add_lattice_opts(mc, mc_opts);
  add_thermo_opts(mc, mc_opts);
  mc->add_option("--sweeps", mc_opts.sweeps, "measured sweeps");
  mc->add_option("--burn-in", mc_opts.burn_in, "discarded sweeps");
  mc->add_option("--sample-index", mc_opts.sample_index, "disorder sample index");
  add_run_opts(mc, mc_opts);
  add_output_opts(mc, mc_opts);

  BoundOpts bound_opts;
  CLI::App* bound = add_command(app, "bound", "closed-form lower bound on the order parameter");
  bound->add_option("--alpha", bound_opts.alpha, "coupling decay exponent")->required();
  bound->add_option("--c", bound_opts.c, "partition constant");
  bound->add_option("--h", bound_opts.h, "field strength");
  bound->add_option("--inv-beta", bound_opts.inv_beta, "inverse temperature 1/beta");
  bound->add_option("--beta", bound_opts.beta, "inverse temperature as beta");
  bound->add_flag("--zero-temperature", bound_opts.zero_temperature, "evaluate at 1/beta = 0");
  bound->add_option("--format", bound_opts.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  bound->add_option("--output", bound_opts.output, "output path (default: stdout)");

  RegionOpts region_opts;
  CLI::App* region = add_command(app, "region", "positivity region over (h, 1/beta)");
  region->add_option("--alpha", region_opts.alpha, "coupling decay exponent")->required();
  region->add_option("--c", region_opts.c, "partition constant");
  region->add_option("--h-max", region_opts.h_max, "grid upper limit for h");
  region->add_option("--inv-beta-max", region_opts.inv_beta_max, "grid upper limit for 1/beta");
  region->add_option("--grid", region_opts.grid, "points per axis");
  region->add_option("--format", region_opts.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  region->add_option("--output", region_opts.output, "output path (default: stdout)");

  VerifyOpts verify_opts;
  CLI::App* verify = add_command(app, "verify", "sampled inequality checks with verdicts");
  verify->add_option("--target", verify_opts.target, "lemma3, lemma5, lipschitz, tail or gb")
      ->required()
      ->check(CLI::IsMember({"lemma3", "lemma5", "lipschitz", "tail", "gb"}));
  add_lattice_opts(verify, verify_opts);
  add_thermo_opts(verify, verify_opts);
  verify->add_option("--c", verify_opts.c, "partition constant");
  verify->add_option("--d", verify_opts.d, "beta exponent of the partition constant");
  verify->add_option("--samples", verify_opts.samples, "disorder samples");
  verify->add_flag("--strict", verify_opts.strict, "abort on empty interval sectors");
  verify->add_option("--probes", verify_opts.probes, "derivative probes (lipschitz)");
  verify->add_option("--fd-step", verify_opts.fd_step, "finite difference step (lipschitz)");
  verify->add_option("--t-mult", verify_opts.t_mult, "tail thresholds as multiples of L")
      ->expected(-1);
  add_run_opts(verify, verify_opts);
  verify->add_option("--output", verify_opts.output, "output path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (exact->parsed()) run_exact(exact_opts);
    if (mc->parsed()) run_mc(mc_opts);
    if (bound->parsed()) run_bound(bound_opts);
    if (region->parsed()) run_region(region_opts);
    if (verify->parsed()) run_verify(verify_opts);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 0;
}

#include "dyson/report_json.hpp"

namespace dyson {

using nlohmann::json;

json estimate_json(const QuenchedEstimate& est) {
  return json{{"mean", est.mean},
              {"stderr", est.std_err},
              {"n_samples", est.n_samples},
              {"tag", est.tag}};
}

json seed_json(const SeedSpec& seed) {
  return json{{"master_seed", seed.master_seed}, {"stream", seed.stream}};
}

json params_json(const HierarchyParams& lattice, const ThermoParams& thermo,
                 const BoundParams* bp) {
  json out{{"alpha", lattice.alpha},
           {"N", lattice.depth},
           {"beta", thermo.beta},
           {"h", thermo.h},
           {"dist", to_string(thermo.dist)}};
  if (bp) {
    out["c"] = bp->c;
    out["d"] = bp->d;
  }
  return out;
}

json report_json(const InequalityReport& rep, const HierarchyParams& lattice,
                 const ThermoParams& thermo, const BoundParams* bp) {
  return json{{"inequality", rep.inequality},
              {"params", params_json(lattice, thermo, bp)},
              {"lhs", estimate_json(rep.lhs)},
              {"rhs", estimate_json(rep.rhs)},
              {"slack", rep.slack},
              {"slack_stderr", rep.slack_std_err},
              {"verdict", to_string(rep.verdict)},
              {"n_samples", rep.n_samples},
              {"n_rejected", rep.n_rejected},
              {"seed", seed_json(rep.seed)}};
}

json report_json(const LipschitzReport& rep, const HierarchyParams& lattice,
                 const ThermoParams& thermo, const BoundParams& bp) {
  const QuenchedEstimate lhs{rep.max_abs_derivative, 0.0, rep.n_probes, "max_abs_fd_derivative"};
  const QuenchedEstimate rhs{rep.bound, 0.0, rep.n_probes, "beta_h"};
  json out{{"inequality", "lipschitz"},
           {"params", params_json(lattice, thermo, &bp)},
           {"lhs", estimate_json(lhs)},
           {"rhs", estimate_json(rhs)},
           {"slack", rep.bound - rep.max_abs_derivative},
           {"slack_stderr", 0.0},
           {"verdict", rep.holds ? "holds" : "violated"},
           {"n_samples", rep.n_probes},
           {"seed", seed_json(rep.seed)}};
  out["tolerance"] = rep.tolerance;
  out["fd_step"] = rep.fd_step;
  return out;
}

json report_json(const TailReport& rep, const HierarchyParams& lattice,
                 const ThermoParams& thermo, const BoundParams& bp) {
  // Worst point decides the headline slack.
  double worst_slack = 1.0;
  double worst_ucl = 0.0, worst_bound = 1.0;
  json points = json::array();
  for (const TailPoint& pt : rep.points) {
    points.push_back(json{{"t", pt.t},
                          {"bound", pt.bound},
                          {"exceed_count", pt.exceed_count},
                          {"empirical", pt.empirical},
                          {"upper_cl", pt.upper_cl},
                          {"holds", pt.holds}});
    if (pt.bound - pt.upper_cl < worst_slack) {
      worst_slack = pt.bound - pt.upper_cl;
      worst_ucl = pt.upper_cl;
      worst_bound = pt.bound;
    }
  }
  const QuenchedEstimate lhs{worst_ucl, 0.0, rep.n_samples, "survival_upper_cl"};
  const QuenchedEstimate rhs{worst_bound, 0.0, rep.n_samples, "gaussian_tail_envelope"};
  json out{{"inequality", "tail"},
           {"params", params_json(lattice, thermo, &bp)},
           {"lhs", estimate_json(lhs)},
           {"rhs", estimate_json(rhs)},
           {"slack", worst_slack},
           {"slack_stderr", 0.0},
           {"verdict", rep.holds ? "holds" : "violated"},
           {"n_samples", rep.n_samples},
           {"seed", seed_json(rep.seed)}};
  out["lipschitz_l"] = rep.lipschitz_l;
  out["part_index"] = rep.part_index;
  out["g_mean"] = rep.g_mean;
  out["points"] = points;
  return out;
}

}  // namespace dyson

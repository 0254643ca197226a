#pragma once

#include <json.hpp>

#include "dyson/bounds.hpp"
#include "dyson/disorder.hpp"
#include "dyson/model.hpp"
#include "dyson/verify.hpp"

namespace dyson {

nlohmann::json estimate_json(const QuenchedEstimate&);
nlohmann::json seed_json(const SeedSpec&);
nlohmann::json params_json(const HierarchyParams&, const ThermoParams&,
                           const BoundParams* bp = nullptr);

// All three report flavors serialize to one schema:
// {inequality, params, lhs, rhs, slack, verdict, n_samples, seed, ...}.
nlohmann::json report_json(const InequalityReport&, const HierarchyParams&,
                           const ThermoParams&, const BoundParams* bp = nullptr);
nlohmann::json report_json(const LipschitzReport&, const HierarchyParams&,
                           const ThermoParams&, const BoundParams&);
nlohmann::json report_json(const TailReport&, const HierarchyParams&,
                           const ThermoParams&, const BoundParams&);

}  // namespace dyson

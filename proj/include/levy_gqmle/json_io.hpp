#pragma once

#include <Eigen/Core>

#include "json.hpp"

#include "levy_gqmle/asymptotics.hpp"
#include "levy_gqmle/coefficients.hpp"
#include "levy_gqmle/experiment.hpp"
#include "levy_gqmle/gqmle.hpp"
#include "levy_gqmle/levy.hpp"
#include "levy_gqmle/sde.hpp"

namespace levy_gqmle {

using Json = nlohmann::json;

/// {"family": "nig"|"bgamma"|"brownian", "params": {...}}
Json to_json(const LevyLawSpec& spec);
LevyLawSpec levy_spec_from_json(const Json& j);

Json to_json(const TrueModel& model);
TrueModel true_model_from_json(const Json& j);

Json to_json(const ModelSpec& model);
ModelSpec model_spec_from_json(const Json& j);

Json to_json(const PathConfig& cfg);
/// Missing keys keep the values already in `base`.
PathConfig path_config_from_json(const Json& j, PathConfig base = {});

/// Flat object.
Json to_json(const EstimateResult& est);

Json to_json(const ExperimentDesign& design);
ExperimentDesign experiment_design_from_json(const Json& j, ExperimentDesign base = {});

Json to_json(const Eigen::Matrix2d& m);
Json to_json(const McSummary& summary, bool with_replications = true);
Json to_json(const AsymptoticsResult& result);
Json to_json(const NormalityReport& report);

/// Parses a JSON document; malformed text is a Usage error.
Json parse_json(const std::string& text);

}  // namespace levy_gqmle

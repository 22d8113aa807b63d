#pragma once

#include "hardy/domain.hpp"
#include "hardy/operator.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace hardy {

/// Domain plus operator read from JSON, e.g.
/// {"domain": {"kind": "exterior_ball", "n": 3, "radius": 1.0},
///  "operator": {"preset": "laplacian_robin", "gamma": 1.0}}
/// The full document is kept in `source` for pipeline-specific keys.
struct ProblemConfig {
  DomainSpec domain;
  OperatorSpec op;
  nlohmann::json source;
};

DomainSpec parse_domain(const nlohmann::json& j);
OperatorSpec parse_operator(const nlohmann::json& j, int n);
ProblemConfig parse_problem_config(const nlohmann::json& j);

/// Throws ConfigError for a missing file or malformed JSON.
ProblemConfig load_problem_config(const std::string& path);

}  // namespace hardy

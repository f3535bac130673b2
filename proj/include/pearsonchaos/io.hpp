// SPDX-License-Identifier: MIT
//
// JSON schemas and CSV emitters. Rationals travel as strings ("p/q"),
// infinities as "-inf"/"inf"; JSON numbers are accepted on input and
// converted exactly.
#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

#include "pearsonchaos/fourmoments.hpp"
#include "pearsonchaos/montecarlo.hpp"

namespace pearsonchaos {

using json = nlohmann::json;

json params_to_json(const PearsonParams& params);
PearsonParams params_from_json(const json& j);

json class_to_json(const PearsonClass& cls);

json chaos_element_to_json(const ChaosElement& elem);
ChaosElement chaos_element_from_json(const json& j);

json bound_report_to_json(const BoundReport& report);

json experiment_to_json(const ExperimentDescriptor& d);
ExperimentDescriptor experiment_from_json(const json& j);

/// Stable column order: k,m1,m2,m3,m4,U_value,Q2_value,eta,xi,kolmogorov,bound
std::string convergence_csv(const std::vector<ConvergenceRow>& rows);

/// Reads a file or, when the argument starts with '{', parses it inline.
json load_json_argument(const std::string& path_or_inline);

}  // namespace pearsonchaos

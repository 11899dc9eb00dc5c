#pragma once

#include <string>

#include <json.hpp>

#include "flatnorm/flat_norm.hpp"
#include "flatnorm/lipschitz.hpp"
#include "flatnorm/markov.hpp"
#include "flatnorm/measure.hpp"
#include "flatnorm/metric_space.hpp"

namespace flatnorm {

// {"kind":"euclidean","dim":N} | {"kind":"unit_interval"} |
// {"kind":"discrete_naturals"} | {"kind":"matrix","points":[...],"distances":[[...]]}
MetricSpace parse_space(const nlohmann::json& j);
nlohmann::ordered_json serialize_space(const MetricSpace& space);

// {"space":{...},"atoms":[{"point":[...],"weight":"1.5"},...]}; weights are
// accepted as decimal strings or numbers, serialized as strings.
DiscreteSignedMeasure parse_measure(const nlohmann::json& j);
nlohmann::ordered_json serialize_measure(const DiscreteSignedMeasure& mu);

// {"kind":"hat"|"tent"|"piecewise_linear_1d"|"constant", ...}
LipFunction parse_function(const nlohmann::json& j, const MetricSpace& space);

// {"kind":"pushforward"|"ifs"|"kernel", ...}; 1-d maps are affine a*x+b.
MarkovOperator parse_operator(const nlohmann::json& j, const MetricSpace& space);

nlohmann::ordered_json serialize_norm_result(const NormResult& result);

// Rounds to `digits` significant digits; output formatting policy, not a
// computation tolerance.
double round_significant(double value, int digits);

nlohmann::json load_json_file(const std::string& path);

}  // namespace flatnorm

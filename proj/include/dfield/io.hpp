#pragma once

#include <json.hpp>

#include "dfield/cochain.hpp"
#include "dfield/gauge.hpp"
#include "dfield/tensor.hpp"

namespace dfield {

using Json = nlohmann::ordered_json;

// {"grid": {"d", "N"}, "degree", "shape": [rows, cols], "faces": [centers],
//  "re": [row-major entries per face], "im": [...]}
Json to_json(const Cochain& c);
Cochain cochain_from_json(const Json& j);

// The cochain of the values with "unitary": true.
Json to_json(const GaugeField& u);
GaugeField gauge_field_from_json(const Json& j);

// Nonzero entries only: {"grid", "gap", "radius", "entries": [{"e", "f", "value"}]}.
Json to_json(const Tensor& t);

}  // namespace dfield

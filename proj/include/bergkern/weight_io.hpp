#pragma once

#include <string>

#include <json.hpp>

#include "bergkern/weights.hpp"

namespace bergkern {

// Weight definition files:
//   {"type": "constant", "value": 1.0}
//   {"type": "step", "segments": [[0.25, 18.0], [1.0, 1.0]]}
//   {"type": "sampled", "radii": [...], "values": [...]}
//   {"type": "dirac", "mass": 10.0}
//   {"type": "mollified", "step": {...step...}, "width": 1e-3}
// Malformed input throws std::invalid_argument.
RadialWeight weight_from_json(const nlohmann::json& j);
nlohmann::json weight_to_json(const RadialWeight& weight);

// Reads a weight file, or resolves the built-in name "constant1".
RadialWeight load_weight(const std::string& path_or_name);

// "A,x" -> A on [0, x], 1 on (x, 1].
RadialWeight parse_step_shorthand(const std::string& text);

} // namespace bergkern

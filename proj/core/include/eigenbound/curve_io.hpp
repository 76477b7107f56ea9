#pragma once

#include <string>

#include "eigenbound/curve.hpp"

namespace eigenbound {

// Curve description JSON:
//   {"n": <ambient dimension>,
//    "components": [[[re, im], ...ascending powers], ... n+1 entries],
//    "name": <optional string>}
CurveAtlas parse_curve(const std::string& json_text);
CurveAtlas load_curve(const std::string& path);
std::string curve_to_json(const CurveAtlas& atlas);

}  // namespace eigenbound

#ifndef BG_SERIALIZATION_HPP
#define BG_SERIALIZATION_HPP

#include <string>

#include "json.hpp"

#include "bg/constructions.hpp"
#include "bg/grid.hpp"
#include "bg/piecewise.hpp"

namespace bg {

using Json = nlohmann::json;

/// Numbers for finite exponents, the string "inf" otherwise.
Json exponent_to_json(const Exponent& p);
Exponent exponent_from_json(const Json& j);

Json space_to_json(const NormedSpace& space);
NormedSpace space_from_json(const Json& j);

Json grid_spec_to_json(const GridSpec& grid);
GridSpec grid_spec_from_json(const Json& j);

/// {"type": "piecewise", "space", "interpolation": "step" | "linear",
///  "breakpoints", "values" (step) or "starts" and "ends" (linear)}.
Json piecewise_to_json(const PiecewiseFunction& f);
PiecewiseFunction piecewise_from_json(const Json& j);

/// {"type": "grid", "grid", "space", "values"} with node-major flat values.
Json grid_function_to_json(const GridFunction& f);
GridFunction grid_function_from_json(const Json& j);

Json construction_to_json(const ConstructionSpec& spec);
/// Rejects unknown keys; errors name the offending field.
ConstructionSpec construction_from_json(const Json& j);

/// Compact dump with round-trip doubles.
std::string dump(const Json& j);

}  // namespace bg

#endif  // BG_SERIALIZATION_HPP

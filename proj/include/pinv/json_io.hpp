#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pinv/engine.hpp"
#include "pinv/surface.hpp"

namespace pinv {

using Json = nlohmann::json; // object keys are kept sorted, so dumps are canonical

// ---- serialization ------------------------------------------------------

// Exact integer: a JSON number when it fits in 64 bits, a decimal string
// otherwise.  The parser accepts both forms everywhere an integer is read.
Json int_to_json(const Int& x);

// Rational as a two-element array [numerator, denominator], denominator > 0.
Json rat_to_json(const Rat& x);

// Element of the exterior algebra: {"rank": 2q, "terms": {...}} where each
// key is the dot-joined generator list of a monomial ("" for the scalar,
// "1.3" for e_1^e_3) and the value its coefficient.  Zero has no terms.
Json ext_to_json(const ExtElement& x);

// {"p_plus","p_minus","provenance","numeric_degrees"} with the degrees being
// the scalar parts of the two sides.
Json pair_to_json(const PoincarePair& p);

// ---- request documents --------------------------------------------------

struct ComputationRequest {
    SurfaceModel surface;
    Json surface_echo;
    std::vector<DivisorClass> classes;
    std::vector<Json> class_echoes;
    std::vector<std::string> commands;
    std::optional<Matrix> matrix; // input of the snf command
};

// Parse and validate a request document.  Unknown keys, missing fields, or
// malformed values raise input_error with a /path/to/the/field prefix.
ComputationRequest parse_request(const std::string& text);

// Parse one class descriptor against the surface it must match (also used
// for inline --class arguments).  `path` prefixes error messages.
DivisorClass parse_class(const Json& j, const SurfaceModel& surface,
                         const std::string& path);

} // namespace pinv

#pragma once

#include <string>

#include "pinv/json_io.hpp"

namespace pinv {

// Execute the request's commands in order and assemble the report
// document: {"surface": <echo>, "results": [...]} with one entry per
// command.  Raises input_error for commands the surface does not
// support and engine_error when an internal invariant breaks.
Json run(const ComputationRequest& request);

// Canonical JSON rendering: two-space indent, sorted keys, trailing
// newline.  Byte-identical across runs for equal requests.
std::string render_json(const Json& report);

// Human-readable rendering of the same report, also deterministic.
std::string render_table(const Json& report);

} // namespace pinv

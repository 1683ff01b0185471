#pragma once

#include "latspec/model.hpp"

#include <json.hpp>

#include <string>

namespace latspec {

// Model documents:
//   { "dimension": d,
//     "w0": S, "w1": {"self": S, "pair": S, "const": r},
//     "w2": {"const": r, "single": S, "recoil": S},
//     "v0": S, "v1": S }
// with S = {"constant": r, "harmonics": [{"m": int>=1, "cos": r, "sin": r}], "dimension"?: int}.
// Every listed key is required except "harmonics", per-harmonic "cos"/"sin" and
// the per-series "dimension". Unknown keys are rejected. Failures throw
// ParseError naming the JSON pointer of the offending value.

ModelSpec model_from_json(const nlohmann::json& doc);
nlohmann::json model_to_json(const ModelSpec& spec);

ModelSpec parse_model(const std::string& text);
/// Reads and parses a model file. Unreadable files throw ParseError with path "".
ModelSpec load_model(const std::string& path);

}  // namespace latspec

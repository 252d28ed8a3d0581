#pragma once

#include <filesystem>

#include "gibbscut/encode.hpp"
#include "gibbscut/poly_io.hpp"

namespace gibbscut {

/// Energy model document:
///   {"width", "height", "k", "domain": [r_0..r_k],
///    "unary": [[k+1 costs] per site] | {"from_image": "file.pgm", "data": "absolute"|"quadratic"},
///    "pairwise": {"g": [g(0)..g(k)], "lambda": "p/q"}}
/// Relative image paths resolve against `base_dir`. When "unary" comes from
/// an image, "width"/"height"/"domain" may be omitted.
EnergyModel energy_model_from_json(const Json& doc, const std::filesystem::path& base_dir = {});
Json energy_model_to_json(const EnergyModel& m);
EnergyModel read_energy_model(const std::filesystem::path& path);

/// Table document {"n": n, "k": k, "table": [(k+1)^n values]} in row-major
/// order with the first variable most significant.
LabelFunction label_function_from_json(const Json& doc);

Json level_map_to_json(const LevelMap& map);

}  // namespace gibbscut

#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "gibbscut/poly.hpp"

namespace gibbscut {

using Json = nlohmann::json;

/// {"n_vars": n, "constant": "p/q", "monomials": [{"vars": [...], "coef": "p/q"}]}
Json polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& doc);

/// Accepts a fraction string or a JSON integer.
Rational rational_from_json(const Json& value);

Polynomial read_polynomial(const std::filesystem::path& path);
void write_polynomial(const std::filesystem::path& path, const Polynomial& p);

Json assignment_to_json(const Assignment& x);

/// Reads a whole file; throws InvalidInput when it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);
Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace gibbscut

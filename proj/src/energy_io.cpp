#include "gibbscut/energy_io.hpp"

#include "gibbscut/denoise.hpp"
#include "gibbscut/error.hpp"

namespace gibbscut {

namespace {

std::vector<Rational> rational_list(const Json& arr, const char* what) {
  if (!arr.is_array()) throw InvalidInput(std::string(what) + " must be an array");
  std::vector<Rational> out;
  for (const auto& v : arr) out.push_back(rational_from_json(v));
  return out;
}

}  // namespace

EnergyModel energy_model_from_json(const Json& doc, const std::filesystem::path& base_dir) {
  try {
    EnergyModel m;
    m.k = doc.at("k").get<int>();
    const Json& pairwise = doc.at("pairwise");
    m.g = rational_list(pairwise.at("g"), "pairwise.g");
    m.lambda = pairwise.contains("lambda") ? rational_from_json(pairwise["lambda"]) : Rational(1);
    const Json& unary = doc.at("unary");
    if (unary.is_object()) {
      auto file = std::filesystem::path(unary.at("from_image").get<std::string>());
      if (file.is_relative() && !base_dir.empty()) file = base_dir / file;
      ImageBuffer img = read_pgm(file);
      DataTerm data = parse_data_term(unary.value("data", std::string("absolute")));
      EnergyModel from = model_from_image(img, m.k, data, m.g, m.lambda);
      if (doc.contains("width") && doc["width"].get<std::size_t>() != from.width)
        throw InvalidInput("model width does not match the image");
      if (doc.contains("height") && doc["height"].get<std::size_t>() != from.height)
        throw InvalidInput("model height does not match the image");
      if (doc.contains("domain")) {
        from.domain = rational_list(doc["domain"], "domain");
        validate(from);
      }
      return from;
    }
    m.width = doc.at("width").get<std::size_t>();
    m.height = doc.at("height").get<std::size_t>();
    m.domain = doc.contains("domain") ? rational_list(doc["domain"], "domain")
                                      : std::vector<Rational>{};
    if (m.domain.empty())
      for (int l = 0; l <= m.k; ++l) m.domain.emplace_back(l);
    if (!unary.is_array()) throw InvalidInput("unary must be an array or a from_image object");
    for (const auto& site : unary) m.unary.push_back(rational_list(site, "unary site"));
    validate(m);
    return m;
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("malformed energy model: ") + e.what());
  }
}

Json energy_model_to_json(const EnergyModel& m) {
  auto strings = [](const std::vector<Rational>& xs) {
    Json arr = Json::array();
    for (const auto& x : xs) arr.push_back(to_string(x));
    return arr;
  };
  Json unary = Json::array();
  for (const auto& site : m.unary) unary.push_back(strings(site));
  return {{"width", m.width},
          {"height", m.height},
          {"k", m.k},
          {"domain", strings(m.domain)},
          {"unary", unary},
          {"pairwise", {{"g", strings(m.g)}, {"lambda", to_string(m.lambda)}}}};
}

EnergyModel read_energy_model(const std::filesystem::path& path) {
  return energy_model_from_json(read_json_file(path), path.parent_path());
}

LabelFunction label_function_from_json(const Json& doc) {
  try {
    auto n = doc.at("n").get<std::size_t>();
    auto k = doc.at("k").get<int>();
    return LabelFunction::from_table(n, k, rational_list(doc.at("table"), "table"));
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("malformed table function: ") + e.what());
  }
}

Json level_map_to_json(const LevelMap& map) {
  Json ids = Json::array();
  for (std::size_t i = 0; i < map.n(); ++i) ids.push_back(map.levels_of(i));
  return {{"n", map.n()}, {"k", map.k()}, {"ids", ids}};
}

}  // namespace gibbscut

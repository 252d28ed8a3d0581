#include "gibbscut/poly_io.hpp"

#include <fstream>
#include <sstream>

#include "gibbscut/error.hpp"

namespace gibbscut {

Json polynomial_to_json(const Polynomial& p) {
  Json monomials = Json::array();
  for (const auto& m : p.monomials())
    monomials.push_back({{"vars", m.vars}, {"coef", to_string(m.coef)}});
  return {{"n_vars", p.n_vars()}, {"constant", to_string(p.constant())}, {"monomials", monomials}};
}

Rational rational_from_json(const Json& value) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return Rational(std::to_string(value.get<std::int64_t>()), 10);
  if (value.is_number_unsigned()) return Rational(std::to_string(value.get<std::uint64_t>()), 10);
  throw InvalidInput("expected a fraction string or an integer, got " + value.dump());
}

Polynomial polynomial_from_json(const Json& doc) {
  try {
    if (!doc.is_object()) throw InvalidInput("polynomial document must be an object");
    auto n = doc.at("n_vars").get<std::int64_t>();
    if (n < 0) throw InvalidInput("n_vars must be nonnegative");
    Rational constant = doc.contains("constant") ? rational_from_json(doc["constant"]) : Rational(0);
    std::vector<Term> terms;
    for (const auto& m : doc.at("monomials")) {
      Term t;
      for (const auto& v : m.at("vars")) {
        auto id = v.get<std::int64_t>();
        if (id < 0) throw InvalidInput("negative variable index");
        t.vars.push_back(static_cast<VarId>(id));
      }
      t.coef = rational_from_json(m.at("coef"));
      terms.push_back(std::move(t));
    }
    return make_polynomial(std::move(terms), std::move(constant), static_cast<std::size_t>(n));
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("malformed polynomial document: ") + e.what());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << text;
}

Json read_json_file(const std::filesystem::path& path) {
  try {
    return Json::parse(read_text_file(path));
  } catch (const Json::parse_error& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
}

Polynomial read_polynomial(const std::filesystem::path& path) {
  return polynomial_from_json(read_json_file(path));
}

void write_polynomial(const std::filesystem::path& path, const Polynomial& p) {
  write_text_file(path, polynomial_to_json(p).dump(2) + "\n");
}

Json assignment_to_json(const Assignment& x) {
  Json out = Json::array();
  for (auto b : x) out.push_back(static_cast<int>(b));
  return out;
}

}  // namespace gibbscut

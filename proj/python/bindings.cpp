#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gibbscut/denoise.hpp"
#include "gibbscut/dimacs.hpp"
#include "gibbscut/energy_io.hpp"
#include "gibbscut/error.hpp"
#include "gibbscut/report_io.hpp"
#include "gibbscut/solve.hpp"

namespace py = pybind11;
using namespace gibbscut;

namespace {

// Documents cross the boundary as JSON text; the Python layer wraps them.
Json parse_doc(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw InvalidInput(e.what());
  }
}

Polynomial parse_poly(const std::string& text) { return polynomial_from_json(parse_doc(text)); }

std::string expand_table(std::size_t n, int k, const std::vector<std::string>& table) {
  std::vector<Rational> values;
  for (const auto& v : table) values.push_back(parse_rational(v));
  Expansion e = expand_function(LabelFunction::from_table(n, k, std::move(values)));
  const Rational c = penalty_constant(e.polynomial);
  Polynomial pv = apply_order_penalty(e.polynomial, c, e.map) + make_polynomial({}, e.base_value, e.map.n_bool());
  return Json{{"polynomial", polynomial_to_json(pv)}, {"penalty", to_string(c)}}.dump();
}

std::string expand_model(const std::string& text) {
  EnergyExpansion e = expand_energy_model(energy_model_from_json(parse_doc(text)));
  return Json{{"polynomial", polynomial_to_json(e.polynomial)}, {"penalty", to_string(e.penalty)}}.dump();
}

std::string check(const std::string& text) {
  const Polynomial p = parse_poly(text);
  const BruteCaps caps = BruteCaps::from_environment();
  PsufReport ps = in_p_suf(p, caps, true);
  Json sub;
  try {
    sub = submodularity_to_json(is_submodular_pairwise(p, caps));
  } catch (const Infeasible&) {
    sub = {{"verdict", ps.verdict ? Json(true) : Json(nullptr)}, {"witness", nullptr}};
  }
  return Json{{"submodular", sub}, {"p_suf", psuf_report_to_json(ps)}}.dump();
}

std::string minimize(const std::string& text, const std::string& method, std::size_t levels,
                     std::vector<std::size_t> block_sizes, bool verify) {
  const Polynomial p = parse_poly(text);
  MsfmConfig cfg;
  cfg.caps = BruteCaps::from_environment();
  cfg.max_levels = levels;
  cfg.block_sizes = std::move(block_sizes);
  SolveOutcome s;
  {
    py::gil_scoped_release release;
    s = solve(p, parse_method(method), cfg);
    if (verify) cross_check(p, s, cfg);
  }
  Json out = minimizer_report_to_json(s.report);
  out["method"] = method_name(s.method);
  out["trace"] = s.trace ? trace_to_json(*s.trace) : Json(nullptr);
  return out.dump();
}

std::string evaluate_at(const std::string& text, const std::vector<int>& x) {
  const Polynomial p = parse_poly(text);
  if (x.size() != p.n_vars()) throw InvalidInput("assignment length differs from n_vars");
  Assignment bits;
  for (int b : x) {
    if (b != 0 && b != 1) throw InvalidInput("assignment entries must be 0 or 1");
    bits.push_back(static_cast<std::uint8_t>(b));
  }
  return to_string(p.evaluate(bits));
}

std::string gadget_dump(const std::string& text) { return write_dimacs(build_network(parse_poly(text))); }

py::tuple denoise_pixels(std::size_t width, std::size_t height, int max_value, std::vector<int> pixels, int levels,
                         const std::string& lambda, const std::string& data, bool quadratic_smoothness,
                         const std::string& method) {
  DenoiseOptions opt;
  opt.k = levels - 1;
  opt.lambda = parse_rational(lambda);
  opt.data = parse_data_term(data);
  opt.quadratic_smoothness = quadratic_smoothness;
  opt.method = parse_method(method);
  opt.msfm.caps = BruteCaps::from_environment();
  ImageBuffer img{width, height, max_value, std::move(pixels)};
  DenoiseResult r;
  {
    py::gil_scoped_release release;
    r = denoise(img, opt);
  }
  return py::make_tuple(r.image.pixels, r.labels, to_string(r.energy));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact minimization of submodular pseudo-Boolean energies";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidInput>(m, "InvalidInput", base.ptr());
  py::register_exception<Infeasible>(m, "Infeasible", base.ptr());
  py::register_exception<VerificationFailure>(m, "VerificationFailure", base.ptr());

  m.def("expand_table", &expand_table, py::arg("n"), py::arg("k"), py::arg("table"));
  m.def("expand_model", &expand_model, py::arg("model_json"));
  m.def("check", &check, py::arg("polynomial_json"));
  m.def("minimize", &minimize, py::arg("polynomial_json"), py::arg("method") = "auto", py::arg("levels") = 3,
        py::arg("block_sizes") = std::vector<std::size_t>{8, 16, 32}, py::arg("verify") = false);
  m.def("evaluate", &evaluate_at, py::arg("polynomial_json"), py::arg("x"));
  m.def("gadget_dump", &gadget_dump, py::arg("polynomial_json"));
  m.def("denoise", &denoise_pixels, py::arg("width"), py::arg("height"), py::arg("max_value"), py::arg("pixels"),
        py::arg("levels"), py::arg("lam"), py::arg("data"), py::arg("quadratic_smoothness"), py::arg("method"));
}

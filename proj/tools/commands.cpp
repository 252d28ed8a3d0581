#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "gibbscut/dimacs.hpp"
#include "gibbscut/energy_io.hpp"
#include "gibbscut/error.hpp"
#include "gibbscut/report_io.hpp"

namespace gibbscut::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void print_json(const Json& doc) { std::cout << doc.dump(2) << '\n'; }

std::vector<std::size_t> parse_size_list(const std::string& text, char sep, std::size_t count,
                                          const char* what) {
  std::vector<std::size_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) {
    try {
      std::size_t used = 0;
      const long v = std::stol(item, &used);
      if (used != item.size() || v < 0) throw InvalidInput("");
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw InvalidInput(std::string("bad ") + what + " '" + text + "'");
    }
  }
  if (out.size() != count) throw InvalidInput(std::string("bad ") + what + " '" + text + "'");
  return out;
}

MsfmConfig msfm_config(const MinimizeArgs& args, const BruteCaps& caps) {
  MsfmConfig cfg;
  cfg.max_levels = args.levels;
  cfg.block_sizes = args.block_sizes;
  cfg.threads = args.threads;
  cfg.caps = caps;
  if (!args.grid.empty()) {
    auto dims = parse_size_list(args.grid, 'x', 3, "grid shape");
    cfg.strategy = PartitionStrategy::GridTiles;
    cfg.grid = GridShape{dims[0], dims[1], dims[2]};
  }
  return cfg;
}

Json solved_to_json(const SolveOutcome& s, double wall_time, bool with_trace) {
  Json out = minimizer_report_to_json(s.report);
  out["method"] = method_name(s.method);
  out["wall_time"] = wall_time;
  if (with_trace && s.trace) out["trace"] = trace_to_json(*s.trace);
  return out;
}

}  // namespace

int run_expand(const ExpandArgs& args) {
  Json doc = read_json_file(args.model);
  Polynomial pv;
  Json map_doc;
  Json summary;
  if (doc.is_object() && doc.contains("table")) {
    LabelFunction f = label_function_from_json(doc);
    Expansion e = expand_function(f);
    const Rational c = penalty_constant(e.polynomial);
    pv = apply_order_penalty(e.polynomial, c, e.map) + make_polynomial({}, e.base_value, e.map.n_bool());
    map_doc = level_map_to_json(e.map);
    summary = {{"kind", "table"}, {"penalty", to_string(c)}, {"base_value", to_string(e.base_value)},
               {"expansion_terms", e.polynomial.size()}};
  } else {
    EnergyModel m = energy_model_from_json(doc, std::filesystem::path(args.model).parent_path());
    EnergyExpansion e = expand_energy_model(m);
    pv = e.polynomial;
    map_doc = level_map_to_json(e.map);
    map_doc["width"] = m.width;
    map_doc["height"] = m.height;
    summary = {{"kind", "energy_model"}, {"penalty", to_string(e.penalty)}, {"sites", m.sites()}};
  }
  summary["n_vars"] = pv.n_vars();
  summary["monomials"] = pv.size();
  summary["degree"] = pv.degree();
  if (args.output.empty()) {
    summary["polynomial"] = polynomial_to_json(pv);
    summary["level_map"] = map_doc;
  } else {
    write_polynomial(args.output, pv);
    summary["polynomial_file"] = args.output;
  }
  if (!args.map_output.empty()) {
    write_text_file(args.map_output, map_doc.dump(2) + "\n");
    summary["level_map_file"] = args.map_output;
  }
  print_json(summary);
  return 0;
}

int run_check(const std::string& polynomial) {
  const Polynomial p = read_polynomial(polynomial);
  const BruteCaps caps = BruteCaps::from_environment();
  PsufReport ps = in_p_suf(p, caps, true);
  Json sub;
  try {
    sub = submodularity_to_json(is_submodular_pairwise(p, caps));
  } catch (const Infeasible& e) {
    // Graph-representable polynomials are submodular without enumeration.
    sub = {{"verdict", ps.verdict ? Json(true) : Json(nullptr)}, {"witness", nullptr}, {"note", e.what()}};
  }
  Json classes = Json::array();
  if (ps.f_minus) classes.push_back("F_minus");
  if (ps.f_plus.value_or(false)) classes.push_back("F_plus");
  print_json({{"n_vars", p.n_vars()},
              {"degree", p.degree()},
              {"monomials", p.size()},
              {"submodular", sub},
              {"p_suf", psuf_report_to_json(ps)},
              {"class", classes}});
  return 0;
}

int run_minimize(const MinimizeArgs& args) {
  const Polynomial p = read_polynomial(args.polynomial);
  const MsfmConfig cfg = msfm_config(args, BruteCaps::from_environment());
  auto start = Clock::now();
  SolveOutcome s = solve(p, parse_method(args.method), cfg, args.assume_submodular);
  const double wall = seconds_since(start);
  Json out = solved_to_json(s, wall, args.trace);
  if (args.verify) {
    Json used = Json::array();
    for (SolveMethod m : cross_check(p, s, cfg)) used.push_back(method_name(m));
    out["verified_with"] = used;
  }
  print_json(out);
  return 0;
}

int run_msfm(MinimizeArgs args) {
  args.method = "msfm";
  args.trace = true;
  return run_minimize(args);
}

int run_gadget_dump(const GadgetDumpArgs& args) {
  const Polynomial p = read_polynomial(args.polynomial);
  FlowNetwork net = build_network(p);
  std::string text = write_dimacs(net);
  if (args.output.empty()) {
    std::cout << text;
    return 0;
  }
  write_text_file(args.output, text);
  print_json({{"nodes", net.node_count},
              {"arcs", net.arcs.size()},
              {"aux_nodes", net.aux_nodes.size()},
              {"scale", capacity_scale(net).get_str()},
              {"offset", to_string(net.offset)},
              {"file", args.output}});
  return 0;
}

int run_denoise(const DenoiseArgs& args) {
  ImageBuffer image = read_pgm(args.input);
  if (!args.crop.empty()) {
    auto r = parse_size_list(args.crop, ',', 4, "crop rectangle");
    image = crop(image, r[0], r[1], r[2], r[3]);
  }
  DenoiseOptions opt;
  opt.k = args.levels - 1;
  opt.lambda = parse_rational(args.lambda);
  opt.data = parse_data_term(args.data);
  opt.quadratic_smoothness = args.smoothness == "quadratic";
  opt.method = parse_method(args.method);
  opt.msfm.caps = BruteCaps::from_environment();
  opt.msfm.block_sizes = {args.tile, 2 * args.tile, 4 * args.tile};
  auto start = Clock::now();
  DenoiseResult r = denoise(image, opt);
  const double wall = seconds_since(start);
  write_pgm(args.output, r.image, args.format == "plain" ? PgmFormat::Plain : PgmFormat::Raw);
  Json out = {{"width", image.width},   {"height", image.height}, {"levels", args.levels},
              {"energy", to_string(r.energy)}, {"method", args.method}, {"wall_time", wall},
              {"output", args.output}};
  if (r.trace) {
    Json fixed = Json::array();
    for (const auto& level : r.trace->levels) fixed.push_back(level.cumulative_fixed.size());
    out["fixed_per_level"] = fixed;
    out["residual_vars"] = r.trace->residual_vars;
  }
  print_json(out);
  return 0;
}

namespace {

using Rng = std::mt19937_64;

long draw(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

Polynomial chain_instance(Rng& rng, std::size_t n) {
  std::vector<Term> terms;
  for (VarId i = 0; i < n; ++i) {
    terms.push_back({{i}, Rational(draw(rng, -4, 4))});
    if (i + 1 < n) terms.push_back({{i, i + 1}, Rational(-draw(rng, 1, 4))});
  }
  return make_polynomial(terms, 0, n);
}

// Higher-order monomials first, then pair coefficients low enough to keep
// every pair inside the graph-representable class.
Polynomial psuf_instance(Rng& rng, std::size_t n, std::size_t degree) {
  std::vector<Term> terms;
  std::vector<std::vector<Rational>> mass(n, std::vector<Rational>(n, 0));
  if (n >= 3 && degree >= 3) {
    const long count = draw(rng, 1, static_cast<long>(n));
    for (long t = 0; t < count; ++t) {
      const std::size_t m = static_cast<std::size_t>(draw(rng, 3, static_cast<long>(std::min(degree, n))));
      VarSet vars(n);
      for (VarId v = 0; v < n; ++v) vars[v] = v;
      std::shuffle(vars.begin(), vars.end(), rng);
      vars.resize(m);
      std::sort(vars.begin(), vars.end());
      Rational a(draw(rng, -3, 3));
      if (sgn(a) == 0) continue;
      if (sgn(a) > 0)
        for (std::size_t x = 0; x < m; ++x)
          for (std::size_t y = x + 1; y < m; ++y) mass[vars[x]][vars[y]] += a;
      terms.push_back({vars, a});
    }
  }
  for (VarId i = 0; i < n; ++i) {
    terms.push_back({{i}, Rational(draw(rng, -5, 5))});
    for (VarId j = i + 1; j < n; ++j) {
      const bool touch = sgn(mass[i][j]) > 0 || draw(rng, 0, 2) == 0;
      if (touch) terms.push_back({{i, j}, -mass[i][j] - Rational(draw(rng, 0, 3))});
    }
  }
  return make_polynomial(terms, 0, n);
}

Polynomial grid_instance(Rng& rng, std::size_t w, std::size_t h, int k) {
  EnergyModel m;
  m.width = w;
  m.height = h;
  m.k = k;
  for (int l = 0; l <= k; ++l) m.domain.emplace_back(l);
  for (std::size_t s = 0; s < m.sites(); ++s) {
    std::vector<Rational> u;
    for (int l = 0; l <= k; ++l) u.emplace_back(draw(rng, 0, 9));
    m.unary.push_back(std::move(u));
  }
  m.g = smoothness_table(k, false);
  m.lambda = Rational(draw(rng, 1, 3));
  return expand_energy_model(m).polynomial;
}

struct BenchInstance {
  std::string family;
  std::string label;
  Polynomial polynomial;
  std::vector<SolveMethod> methods;
  std::optional<GridShape> grid;
};

struct BenchRow {
  std::string method;
  std::string status;  // "ok" or "infeasible"
  SolveOutcome solved;
  double wall_ms = 0;
};

std::vector<SolveMethod> methods_of(const Json& family) {
  std::vector<SolveMethod> out;
  if (!family.contains("methods")) return {SolveMethod::Brute, SolveMethod::Cut, SolveMethod::Msfm};
  for (const auto& m : family.at("methods")) out.push_back(parse_method(m.get<std::string>()));
  return out;
}

std::vector<BenchInstance> build_suite(const Json& suite, std::uint64_t seed) {
  if (!suite.is_object() || !suite.contains("families") || !suite.at("families").is_array())
    throw InvalidInput("suite must be an object with a \"families\" array");
  std::vector<BenchInstance> out;
  std::uint64_t stream = 0;
  for (const auto& family : suite.at("families")) {
    const std::string name = family.at("family").get<std::string>();
    const auto methods = methods_of(family);
    const int repeats = family.value("repeats", 1);
    auto next_rng = [&]() { return Rng(seed * 0x9E3779B97F4A7C15ULL + (++stream)); };
    for (int rep = 0; rep < repeats; ++rep) {
      if (name == "chain" || name == "psuf") {
        for (const auto& size : family.at("sizes")) {
          const std::size_t n = size.get<std::size_t>();
          Rng rng = next_rng();
          Polynomial p = name == "chain" ? chain_instance(rng, n)
                                         : psuf_instance(rng, n, family.value("degree", std::size_t{4}));
          out.push_back({name, "n=" + std::to_string(n) + "#" + std::to_string(rep), std::move(p), methods, {}});
        }
      } else if (name == "grid") {
        const std::size_t w = family.at("width").get<std::size_t>();
        const std::size_t h = family.at("height").get<std::size_t>();
        const int k = family.at("k").get<int>();
        Rng rng = next_rng();
        out.push_back({name, std::to_string(w) + "x" + std::to_string(h) + "k" + std::to_string(k) + "#" +
                                 std::to_string(rep),
                       grid_instance(rng, w, h, k), methods, GridShape{w, h, static_cast<std::size_t>(k)}});
      } else {
        throw InvalidInput("unknown bench family '" + name + "'");
      }
    }
  }
  return out;
}

std::vector<BenchRow> run_instance(const BenchInstance& inst, const BruteCaps& caps) {
  std::vector<BenchRow> rows;
  MsfmConfig cfg;
  cfg.caps = caps;
  if (inst.grid) {
    cfg.strategy = PartitionStrategy::GridTiles;
    cfg.grid = inst.grid;
    cfg.block_sizes = {2, 4};
  }
  for (SolveMethod m : inst.methods) {
    BenchRow row;
    row.method = std::string(method_name(m));
    auto start = Clock::now();
    try {
      // Every family is submodular by construction.
      row.solved = solve(inst.polynomial, m, cfg, true);
      row.status = "ok";
    } catch (const Infeasible&) {
      row.status = "infeasible";
    }
    row.wall_ms = 1000 * seconds_since(start);
    rows.push_back(std::move(row));
  }
  const BenchRow* first = nullptr;
  for (const auto& row : rows) {
    if (row.status != "ok") continue;
    if (!first) {
      first = &row;
    } else if (!same_result(first->solved.report, row.solved.report)) {
      throw VerificationFailure(inst.family + " " + inst.label + ": " + first->method + " and " + row.method +
                                " disagree");
    }
  }
  return rows;
}

}  // namespace

int run_bench(const BenchArgs& args) {
  std::vector<BenchInstance> instances;
  try {
    instances = build_suite(read_json_file(args.suite), args.seed);
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("bad suite: ") + e.what());
  }
  const BruteCaps caps = BruteCaps::from_environment();
  std::vector<std::vector<BenchRow>> results(instances.size());
  std::vector<std::string> errors(instances.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < instances.size(); i = next++) {
      try {
        results[i] = run_instance(instances[i], caps);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::min(args.threads, instances.size()); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (!e.empty()) throw VerificationFailure(e);

  std::ostringstream csv;
  csv << "family,instance,n_vars,method,status,min_value,wall_ms,level1_fixed\n";
  for (std::size_t i = 0; i < instances.size(); ++i)
    for (const auto& row : results[i]) {
      csv << instances[i].family << ',' << instances[i].label << ',' << instances[i].polynomial.n_vars() << ','
          << row.method << ',' << row.status << ',';
      if (row.status == "ok") csv << to_string(row.solved.report.min_value);
      char ms[32];
      std::snprintf(ms, sizeof ms, "%.3f", row.wall_ms);
      csv << ',' << ms << ',';
      if (row.solved.trace && !row.solved.trace->levels.empty())
        csv << row.solved.trace->levels.front().cumulative_fixed.size();
      csv << '\n';
    }
  if (args.output.empty())
    std::cout << csv.str();
  else
    write_text_file(args.output, csv.str());
  return 0;
}

}  // namespace gibbscut::cli

#include "gibbscut/report_io.hpp"

namespace gibbscut {

Json var_set_to_json(const VarSet& vars) {
  Json out = Json::array();
  for (VarId v : vars) out.push_back(v);
  return out;
}

Json partial_assignment_to_json(const PartialAssignment& part) {
  Json out = Json::object();
  for (VarId v : part.fixed_vars()) out[std::to_string(v)] = static_cast<int>(part.value(v));
  return out;
}

Json minimizer_report_to_json(const MinimizerReport& r) {
  return {{"min_value", to_string(r.min_value)},
          {"minimal", assignment_to_json(r.minimal)},
          {"maximal", assignment_to_json(r.maximal)},
          {"extremes_exact", r.extremes_exact}};
}

Json trace_to_json(const LevelTrace& trace) {
  Json levels = Json::array();
  for (const auto& level : trace.levels) {
    Json blocks = Json::array(), zeros = Json::array(), ones = Json::array();
    for (std::size_t b = 0; b < level.blocks.size(); ++b) {
      blocks.push_back(var_set_to_json(level.blocks[b]));
      zeros.push_back(var_set_to_json(level.fixed_zero[b]));
      ones.push_back(var_set_to_json(level.fixed_one[b]));
    }
    levels.push_back({{"blocks", blocks},
                      {"fixed_zero", zeros},
                      {"fixed_one", ones},
                      {"cumulative_fixed", var_set_to_json(level.cumulative_fixed)}});
  }
  return {{"levels", levels},
          {"fallback", trace.fallback},
          {"residual_vars", trace.residual_vars},
          {"base_solver", trace.base_solver}};
}

Json submodularity_to_json(const SubmodularityWitness& w) {
  Json out = {{"verdict", w.verdict}, {"witness", nullptr}};
  if (w.violation)
    out["witness"] = {{"i", w.violation->i},
                      {"j", w.violation->j},
                      {"context", partial_assignment_to_json(w.violation->context)},
                      {"value", to_string(w.violation->value)}};
  return out;
}

namespace {

Json pair_to_json(const PairLedgerEntry& e) {
  return {{"i", e.i},
          {"j", e.j},
          {"a_ij", to_string(e.a_ij)},
          {"positive_mass", to_string(e.positive_mass)},
          {"ok", e.ok()}};
}

}  // namespace

Json psuf_report_to_json(const PsufReport& r) {
  Json pairs = Json::array();
  for (const auto& e : r.ledger) pairs.push_back(pair_to_json(e));
  Json out = {{"verdict", r.verdict},
              {"literal_verdict", r.literal_verdict},
              {"pairs", pairs},
              {"violation", nullptr},
              {"f_minus", r.f_minus},
              {"higher_nonnegative", r.higher_nonnegative},
              {"f_plus", nullptr},
              {"strict_pairs", r.strict_pairs}};
  if (r.violation) out["violation"] = pair_to_json(*r.violation);
  if (r.f_plus) out["f_plus"] = *r.f_plus;
  return out;
}

}  // namespace gibbscut

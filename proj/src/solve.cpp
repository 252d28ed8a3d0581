#include "gibbscut/solve.hpp"

#include "gibbscut/error.hpp"
#include "gibbscut/graphcut.hpp"

namespace gibbscut {

SolveMethod parse_method(std::string_view name) {
  if (name == "auto") return SolveMethod::Auto;
  if (name == "brute") return SolveMethod::Brute;
  if (name == "cut") return SolveMethod::Cut;
  if (name == "msfm") return SolveMethod::Msfm;
  throw InvalidInput("unknown method '" + std::string(name) + "'");
}

std::string_view method_name(SolveMethod m) {
  switch (m) {
    case SolveMethod::Auto: return "auto";
    case SolveMethod::Brute: return "brute";
    case SolveMethod::Cut: return "cut";
    case SolveMethod::Msfm: return "msfm";
  }
  return "?";
}

namespace {

std::optional<bool> submodular_within_caps(const Polynomial& p, const BruteCaps& caps) {
  try {
    return is_submodular_pairwise(p, caps).verdict;
  } catch (const Infeasible&) {
    return std::nullopt;
  }
}

SolveOutcome run_msfm(const Polynomial& p, const MsfmConfig& cfg) {
  MsfmResult r = msfm_minimize(p, cfg);
  return {std::move(r.report), SolveMethod::Msfm, std::move(r.trace)};
}

}  // namespace

SolveOutcome solve(const Polynomial& p, SolveMethod method, const MsfmConfig& cfg, bool assume_submodular) {
  switch (method) {
    case SolveMethod::Brute:
      return {brute_minimize(p, cfg.caps), SolveMethod::Brute, {}};
    case SolveMethod::Cut:
      return {minimize_via_cut(p), SolveMethod::Cut, {}};
    case SolveMethod::Msfm: {
      if (!assume_submodular) {
        auto sub = submodular_within_caps(p, cfg.caps);
        if (!sub) throw Infeasible("submodularity cannot be checked within the caps");
        if (!*sub) throw Infeasible("msfm requires a submodular polynomial");
      }
      return run_msfm(p, cfg);
    }
    case SolveMethod::Auto: {
      if (in_p_suf(p, cfg.caps, false).verdict) return {minimize_via_cut(p), SolveMethod::Cut, {}};
      if (assume_submodular || submodular_within_caps(p, cfg.caps).value_or(false)) {
        try {
          return run_msfm(p, cfg);
        } catch (const Infeasible&) {
          if (p.n_vars() > cfg.caps.full) throw;
        }
      }
      if (p.n_vars() <= cfg.caps.full) return {brute_minimize(p, cfg.caps), SolveMethod::Brute, {}};
      throw Infeasible("no applicable method: " + std::to_string(p.n_vars()) +
                       " variables, not in P_suf, not known to be submodular, brute-force cap " +
                       std::to_string(cfg.caps.full));
    }
  }
  throw InvalidInput("unknown method");
}

bool same_result(const MinimizerReport& a, const MinimizerReport& b) {
  if (a.min_value != b.min_value) return false;
  if (a.extremes_exact && b.extremes_exact) return a.minimal == b.minimal && a.maximal == b.maximal;
  return true;
}

std::vector<SolveMethod> cross_check(const Polynomial& p, const SolveOutcome& primary, const MsfmConfig& cfg) {
  const std::string name(method_name(primary.method));
  if (p.evaluate(primary.report.minimal) != primary.report.min_value ||
      p.evaluate(primary.report.maximal) != primary.report.min_value)
    throw VerificationFailure(name + " reported a minimizer whose value differs from min_value");
  std::vector<SolveMethod> used;
  for (SolveMethod m : {SolveMethod::Brute, SolveMethod::Cut, SolveMethod::Msfm}) {
    if (m == primary.method) continue;
    SolveOutcome other;
    try {
      other = solve(p, m, cfg);
    } catch (const Infeasible&) {
      continue;
    }
    if (!same_result(primary.report, other.report))
      throw VerificationFailure(name + " and " + std::string(method_name(m)) + " disagree: " +
                                to_string(primary.report.min_value) + " vs " + to_string(other.report.min_value));
    used.push_back(m);
  }
  return used;
}

}  // namespace gibbscut

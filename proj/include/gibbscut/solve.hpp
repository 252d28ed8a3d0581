#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gibbscut/msfm.hpp"

namespace gibbscut {

enum class SolveMethod { Auto, Brute, Cut, Msfm };

SolveMethod parse_method(std::string_view name);
std::string_view method_name(SolveMethod m);

struct SolveOutcome {
  MinimizerReport report;
  SolveMethod method = SolveMethod::Auto;  // the method that produced the report
  std::optional<LevelTrace> trace;         // msfm only
};

/// Dispatches to one solver. Cut requires P_suf; msfm requires a submodular
/// polynomial, checked within the caps unless `assume_submodular`. Auto tries
/// cut, then msfm when submodularity is known, then brute force.
SolveOutcome solve(const Polynomial& p, SolveMethod method, const MsfmConfig& cfg = {},
                   bool assume_submodular = false);

/// Equal minima, and equal extremes when both reports have exact extremes.
bool same_result(const MinimizerReport& a, const MinimizerReport& b);

/// Re-solves with every other applicable method and throws
/// VerificationFailure on any disagreement. Returns the methods compared.
std::vector<SolveMethod> cross_check(const Polynomial& p, const SolveOutcome& primary,
                                     const MsfmConfig& cfg = {});

}  // namespace gibbscut

#pragma once

#include "gibbscut/msfm.hpp"
#include "gibbscut/poly_io.hpp"
#include "gibbscut/submod.hpp"

namespace gibbscut {

Json var_set_to_json(const VarSet& vars);

/// {"var": bit, ...} for the fixed coordinates.
Json partial_assignment_to_json(const PartialAssignment& part);

/// {"min_value", "minimal", "maximal", "extremes_exact"}
Json minimizer_report_to_json(const MinimizerReport& r);

/// {"levels": [{"blocks", "fixed_zero", "fixed_one", "cumulative_fixed"}],
///  "fallback", "residual_vars", "base_solver"}
Json trace_to_json(const LevelTrace& trace);

/// {"verdict", "witness": {"i", "j", "context", "value"} | null}
Json submodularity_to_json(const SubmodularityWitness& w);

/// Verdicts, per-pair ledger and class flags.
Json psuf_report_to_json(const PsufReport& r);

}  // namespace gibbscut

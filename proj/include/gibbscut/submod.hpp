#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "gibbscut/poly.hpp"

namespace gibbscut {

/// Enumeration limits. Exceeding one is an Infeasible error, never an
/// approximation.
struct BruteCaps {
  std::size_t full = 14;     // variables enumerated by brute force
  std::size_t context = 20;  // context variables of one pair check

  /// Defaults, with `full` overridden by GIBBSCUT_BRUTE_CAP when set.
  static BruteCaps from_environment();
};

struct MinimizerReport {
  Rational min_value;
  Assignment minimal;
  Assignment maximal;
  /// minimal/maximal are the coordinatewise least/greatest minimizers. False
  /// only for nonsubmodular input to the brute-force solver, in which case
  /// both hold the lexicographically first minimizer.
  bool extremes_exact = true;
};

struct SubmodularityViolation {
  VarId i;
  VarId j;
  PartialAssignment context;  // fixes the variables co-occurring with (i, j)
  Rational value;             // P_{i,j}(context) > 0
};

struct SubmodularityWitness {
  bool verdict = true;
  std::optional<SubmodularityViolation> violation;
};

struct PairLedgerEntry {
  VarId i;
  VarId j;
  Rational a_ij;           // quadratic coefficient
  Rational positive_mass;  // sum of positive coefficients of degree >= 3 monomials holding i and j
  bool ok() const { return a_ij + positive_mass <= 0; }
  bool literal_ok() const { return -a_ij + positive_mass <= 0; }
};

struct PsufReport {
  bool verdict = true;          // a_ij + sum b+ <= 0 for every interacting pair
  bool literal_verdict = true;  // the -a_ij + sum b+ <= 0 reading, kept for comparison
  std::vector<PairLedgerEntry> ledger;
  std::optional<PairLedgerEntry> violation;  // first failing pair
  bool f_minus = true;             // every nonlinear coefficient <= 0
  bool higher_nonnegative = true;  // every coefficient of degree >= 3 is >= 0
  std::optional<bool> f_plus;      // submodular and higher_nonnegative; empty if undecidable within caps
  bool strict_pairs = true;        // every interacting pair has a_ij < 0
};

/// f(x & y) + f(x | y) <= f(x) + f(y) for all x, y. Exponential; n <= caps.full.
bool is_submodular_def(const Polynomial& p, const BruteCaps& caps = {});

/// max over contexts of P_{i,j} <= 0 for every pair; enumerates only the
/// variables sharing a monomial with the pair.
SubmodularityWitness is_submodular_pairwise(const Polynomial& p, const BruteCaps& caps = {});

/// With `classify` false the F^m_+ membership (which needs a pairwise
/// submodularity check) is skipped and f_plus stays empty.
PsufReport in_p_suf(const Polynomial& p, const BruteCaps& caps = {}, bool classify = true);

/// Exact minimum with minimal/maximal minimizers by full enumeration.
MinimizerReport brute_minimize(const Polynomial& p, const BruteCaps& caps = {});

/// Solver for a compact polynomial (variables 0..n-1).
using BaseSolver = std::function<MinimizerReport(const Polynomial&)>;

/// P{D} with x_{D^c} set from `boundary` (which must fix exactly D^c),
/// compacted so that variable k is d[k].
Polynomial boundary_polynomial(const Polynomial& p, const VarSet& d,
                               const PartialAssignment& boundary);

/// Minimizes P{D}(x_D, boundary). The report's assignments are indexed like d.
/// Without a solver, brute force is used.
MinimizerReport boundary_minimize(const Polynomial& p, const VarSet& d,
                                  const PartialAssignment& boundary,
                                  const BaseSolver& solver = {});

}  // namespace gibbscut

#include "gibbscut/submod.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <string>

#include "gibbscut/error.hpp"

namespace gibbscut {

BruteCaps BruteCaps::from_environment() {
  BruteCaps caps;
  if (const char* env = std::getenv("GIBBSCUT_BRUTE_CAP")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 0 || v > 40)
      throw InvalidInput(std::string("GIBBSCUT_BRUTE_CAP must be an integer in 0..40, got '") +
                         env + "'");
    caps.full = static_cast<std::size_t>(v);
  }
  return caps;
}

namespace {

void require_brute(const Polynomial& p, const BruteCaps& caps) {
  if (p.n_vars() > caps.full)
    throw Infeasible("brute force limited to " + std::to_string(caps.full) + " variables, got " +
                     std::to_string(p.n_vars()));
}

// Scaled values of every assignment as big integers.
std::vector<BigInt> big_table(const DenseEvaluator& ev) {
  std::vector<BigInt> t(std::size_t{1} << ev.n_vars());
  for (std::uint64_t m = 0; m < t.size(); ++m) t[m] = ev.scaled_value(m);
  return t;
}

template <typename T>
bool lattice_inequality_holds(const std::vector<T>& f) {
  const std::uint64_t count = f.size();
  for (std::uint64_t x = 0; x < count; ++x) {
    for (std::uint64_t y = x + 1; y < count; ++y) {
      std::uint64_t lo = x & y, hi = x | y;
      if (lo == x || lo == y) continue;
      if (f[lo] + f[hi] > f[x] + f[y]) return false;
    }
  }
  return true;
}

struct PairTerms {
  Rational quadratic = 0;
  Rational positive_higher = 0;
  std::vector<Monomial> rest;  // P_{i,j} monomials, i and j removed
};

std::map<std::pair<VarId, VarId>, PairTerms> collect_pairs(const Polynomial& p, bool with_rest) {
  std::map<std::pair<VarId, VarId>, PairTerms> pairs;
  for (const auto& m : p.monomials()) {
    if (m.degree() < 2) continue;
    for (std::size_t a = 0; a < m.vars.size(); ++a) {
      for (std::size_t b = a + 1; b < m.vars.size(); ++b) {
        auto& entry = pairs[{m.vars[a], m.vars[b]}];
        if (m.degree() == 2)
          entry.quadratic += m.coef;
        else if (sgn(m.coef) > 0)
          entry.positive_higher += m.coef;
        if (with_rest) {
          Monomial r;
          r.coef = m.coef;
          for (std::size_t c = 0; c < m.vars.size(); ++c)
            if (c != a && c != b) r.vars.push_back(m.vars[c]);
          entry.rest.push_back(std::move(r));
        }
      }
    }
  }
  return pairs;
}

}  // namespace

bool is_submodular_def(const Polynomial& p, const BruteCaps& caps) {
  require_brute(p, caps);
  DenseEvaluator ev(p);
  if (ev.uses_int64()) return lattice_inequality_holds(ev.table_int64());
  return lattice_inequality_holds(big_table(ev));
}

SubmodularityWitness is_submodular_pairwise(const Polynomial& p, const BruteCaps& caps) {
  auto pairs = collect_pairs(p, true);
  for (auto& [key, entry] : pairs) {
    // P_{i,j} over its own support.
    std::vector<Term> terms;
    Rational constant = 0;
    for (auto& m : entry.rest) {
      if (m.vars.empty())
        constant += m.coef;
      else
        terms.push_back({m.vars, m.coef});
    }
    Polynomial pij = make_polynomial(std::move(terms), constant, p.n_vars());
    VarSet context = support(pij);
    if (context.size() > caps.context)
      throw Infeasible("pair (" + std::to_string(key.first) + "," + std::to_string(key.second) +
                       ") has " + std::to_string(context.size()) +
                       " context variables, above the cap of " + std::to_string(caps.context));
    Polynomial local = compact(pij, context);
    DenseEvaluator ev(local);
    std::uint64_t best_mask = 0;
    BigInt best = ev.scaled_value(0);
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << context.size()); ++m) {
      BigInt v = ev.scaled_value(m);
      if (v > best) {
        best = v;
        best_mask = m;
      }
    }
    if (sgn(best) > 0) {
      PartialAssignment ctx(p.n_vars());
      for (std::size_t k = 0; k < context.size(); ++k)
        ctx.set(context[k], static_cast<std::uint8_t>((best_mask >> k) & 1u));
      Rational value(best, ev.scale());
      value.canonicalize();
      return {false, SubmodularityViolation{key.first, key.second, std::move(ctx), value}};
    }
  }
  return {true, std::nullopt};
}

PsufReport in_p_suf(const Polynomial& p, const BruteCaps& caps, bool classify) {
  PsufReport report;
  for (const auto& m : p.monomials()) {
    if (m.degree() >= 2 && sgn(m.coef) > 0) report.f_minus = false;
    if (m.degree() >= 3 && sgn(m.coef) < 0) report.higher_nonnegative = false;
  }
  for (auto& [key, entry] : collect_pairs(p, false)) {
    PairLedgerEntry e{key.first, key.second, entry.quadratic, entry.positive_higher};
    if (!e.ok()) {
      report.verdict = false;
      if (!report.violation) report.violation = e;
    }
    if (!e.literal_ok()) report.literal_verdict = false;
    if (sgn(e.a_ij) >= 0) report.strict_pairs = false;
    report.ledger.push_back(std::move(e));
  }
  if (!classify) return report;
  if (!report.higher_nonnegative) {
    report.f_plus = false;
  } else {
    try {
      report.f_plus = is_submodular_pairwise(p, caps).verdict;
    } catch (const Infeasible&) {
      report.f_plus.reset();
    }
  }
  return report;
}

MinimizerReport brute_minimize(const Polynomial& p, const BruteCaps& caps) {
  require_brute(p, caps);
  const std::size_t n = p.n_vars();
  const std::uint64_t count = std::uint64_t{1} << n;
  const std::uint64_t all = count - 1;
  DenseEvaluator ev(p);

  std::uint64_t first = 0, lo = all, hi = 0;
  auto scan = [&](auto value_of) {
    auto best = value_of(0);
    for (std::uint64_t m = 1; m < count; ++m) {
      auto v = value_of(m);
      if (v < best) {
        best = v;
        first = m;
      }
    }
    for (std::uint64_t m = 0; m < count; ++m) {
      if (value_of(m) == best) {
        lo &= m;
        hi |= m;
      }
    }
    return std::pair{value_of(lo) == best && value_of(hi) == best, BigInt(best)};
  };

  std::pair<bool, BigInt> outcome;
  if (ev.uses_int64()) {
    auto table = n <= 24 ? ev.table_int64() : std::vector<std::int64_t>{};
    if (!table.empty())
      outcome = scan([&](std::uint64_t m) { return table[m]; });
    else
      outcome = scan([&](std::uint64_t m) { return ev.scaled_value_int64(m); });
  } else {
    outcome = scan([&](std::uint64_t m) { return ev.scaled_value(m); });
  }

  MinimizerReport r;
  r.min_value = Rational(outcome.second, ev.scale());
  r.min_value.canonicalize();
  r.extremes_exact = outcome.first;
  if (r.extremes_exact) {
    r.minimal = bits_of(lo, n);
    r.maximal = bits_of(hi, n);
  } else {
    r.minimal = bits_of(first, n);
    r.maximal = r.minimal;
  }
  return r;
}

Polynomial boundary_polynomial(const Polynomial& p, const VarSet& d,
                               const PartialAssignment& boundary) {
  if (boundary.n_vars() != p.n_vars()) throw InvalidInput("boundary length mismatch");
  std::vector<bool> in_d(p.n_vars(), false);
  for (VarId v : d) {
    if (v >= p.n_vars()) throw InvalidInput("block variable out of range");
    in_d[v] = true;
  }
  for (VarId v = 0; v < p.n_vars(); ++v) {
    if (in_d[v] && boundary.is_fixed(v))
      throw InvalidInput("boundary fixes block variable " + std::to_string(v));
    if (!in_d[v] && !boundary.is_fixed(v))
      throw InvalidInput("boundary incomplete: variable " + std::to_string(v) + " is free");
  }
  auto [touching, rest] = split_boundary(p, d);
  return compact(fix_variables(touching, boundary), d);
}

MinimizerReport boundary_minimize(const Polynomial& p, const VarSet& d,
                                  const PartialAssignment& boundary, const BaseSolver& solver) {
  Polynomial local = boundary_polynomial(p, d, boundary);
  return solver ? solver(local) : brute_minimize(local);
}

}  // namespace gibbscut

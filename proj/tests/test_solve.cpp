#include "doctest.h"

#include "gibbscut/error.hpp"
#include "gibbscut/solve.hpp"
#include "support/generators.hpp"

using namespace gibbscut;
using namespace gibbscut::testing;

TEST_CASE("method names") {
  for (SolveMethod m : {SolveMethod::Auto, SolveMethod::Brute, SolveMethod::Cut, SolveMethod::Msfm})
    CHECK(parse_method(method_name(m)) == m);
  CHECK_THROWS_AS(parse_method("annealing"), InvalidInput);
}

TEST_CASE("auto picks cut, then msfm, then brute") {
  CHECK(solve(poly(2, {{{0, 1}, -1}}), SolveMethod::Auto).method == SolveMethod::Cut);

  // Submodular but outside P_suf: the two positive cubics never both count
  // for pair (0, 1) because of the quartic term.
  Polynomial sub = poly(4, {{{0, 1, 2}, 1},
                            {{0, 1, 3}, 1},
                            {{0, 1, 2, 3}, -1},
                            {{0, 1}, -1},
                            {{0, 2}, -1},
                            {{1, 2}, -1},
                            {{0, 3}, -1},
                            {{1, 3}, -1}});
  REQUIRE(is_submodular_def(sub));
  REQUIRE_FALSE(in_p_suf(sub).verdict);
  SolveOutcome s = solve(sub, SolveMethod::Auto);
  CHECK(s.method == SolveMethod::Msfm);
  CHECK(s.trace.has_value());
  CHECK(s.report.min_value == brute_minimize(sub).min_value);

  SolveOutcome b = solve(poly(2, {{{0, 1}, 1}, {{0}, -1}}), SolveMethod::Auto);
  CHECK(b.method == SolveMethod::Brute);
  CHECK(b.report.min_value == -1);
}

TEST_CASE("explicit methods refuse inapplicable input") {
  Polynomial pos = poly(2, {{{0, 1}, 1}});
  CHECK_THROWS_AS(solve(pos, SolveMethod::Cut), Infeasible);
  CHECK_THROWS_AS(solve(pos, SolveMethod::Msfm), Infeasible);
  BruteCaps tiny{2, 20};
  MsfmConfig cfg;
  cfg.caps = tiny;
  CHECK_THROWS_AS(solve(poly(3, {{{0, 1}, 1}}), SolveMethod::Brute, cfg), Infeasible);
  CHECK_THROWS_AS(solve(poly(3, {{{0, 1}, 1}}), SolveMethod::Auto, cfg), Infeasible);
}

TEST_CASE("cross_check on random instances") {
  Rng rng(81);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 2, 10));
    Polynomial p = t % 2 ? random_submodular(rng, n, 4) : random_polynomial(rng, n, 3, 6);
    SolveOutcome s = solve(p, SolveMethod::Auto);
    std::vector<SolveMethod> used = cross_check(p, s);
    const bool brute_seen =
        s.method == SolveMethod::Brute || std::find(used.begin(), used.end(), SolveMethod::Brute) != used.end();
    CHECK(brute_seen);
  }
}

TEST_CASE("cross_check catches a wrong report") {
  Polynomial p = poly(2, {{{0, 1}, -1}});
  SolveOutcome s = solve(p, SolveMethod::Brute);
  s.report.min_value = -2;
  CHECK_THROWS_AS(cross_check(p, s), VerificationFailure);
  s = solve(p, SolveMethod::Brute);
  s.report.maximal = {1, 1};
  s.report.minimal = {1, 1};
  s.method = SolveMethod::Msfm;
  CHECK_NOTHROW(cross_check(p, s));
}

#include "doctest.h"

#include <cstdlib>

#include "gibbscut/error.hpp"
#include "gibbscut/submod.hpp"
#include "support/generators.hpp"

using namespace gibbscut;
using namespace gibbscut::testing;

namespace {

const Polynomial kCubic = poly(3, {{{0, 1, 2}, 2}, {{0, 1}, -3}, {{0, 2}, -3}, {{1, 2}, -3}});
const Polynomial kBadCubic = poly(3, {{{0, 1, 2}, 2}, {{0, 1}, -1}, {{0, 2}, -3}, {{1, 2}, -3}});

}  // namespace

TEST_CASE("is_submodular_def examples") {
  CHECK(is_submodular_def(poly(2, {{{0, 1}, -1}})));
  CHECK_FALSE(is_submodular_def(poly(2, {{{0, 1}, 1}})));
  CHECK(is_submodular_def(kCubic));
  CHECK_THROWS_AS(is_submodular_def(Polynomial(15)), Infeasible);
  BruteCaps wide;
  wide.full = 16;
  CHECK(is_submodular_def(Polynomial(15), wide));
}

TEST_CASE("is_submodular_pairwise examples") {
  CHECK(is_submodular_pairwise(poly(2, {{{0}, 1}, {{1}, 1}, {{0, 1}, -2}})).verdict);

  SubmodularityWitness w = is_submodular_pairwise(poly(3, {{{0, 1, 2}, 2}, {{0, 1}, -1}}));
  CHECK_FALSE(w.verdict);
  REQUIRE(w.violation);
  CHECK(w.violation->i == 0);
  CHECK(w.violation->j == 1);
  CHECK(w.violation->context.value(2) == 1);
  CHECK(w.violation->value == 1);

  SubmodularityWitness lin = is_submodular_pairwise(poly(4, {{{0}, 5}, {{3}, -2}}, 1));
  CHECK(lin.verdict);
  CHECK_FALSE(lin.violation);
}

TEST_CASE("pairwise witness evaluates the pair polynomial") {
  Rng rng(31);
  int violations = 0;
  for (int t = 0; t < 200; ++t) {
    Polynomial p = random_polynomial(rng, static_cast<std::size_t>(uniform_int(rng, 2, 8)), 4, 6);
    SubmodularityWitness w = is_submodular_pairwise(p);
    if (w.verdict) continue;
    ++violations;
    const auto& v = *w.violation;
    PairDecomposition d = pair_decompose(p, v.i, v.j);
    Assignment x(p.n_vars(), 0);
    v.context.apply_to(x);
    CHECK(d.p_ij.evaluate(x) == v.value);
    CHECK(v.value > 0);
    for (VarId u : support(d.p_ij)) CHECK(v.context.is_fixed(u));
  }
  CHECK(violations > 0);
}

TEST_CASE("definition and pair criterion agree") {
  Rng rng(32);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 1, 10));
    Polynomial p = t % 2 ? random_submodular(rng, n, 4) : random_polynomial(rng, n, 4, 6);
    const bool def = is_submodular_def(p);
    CHECK(def == is_submodular_pairwise(p).verdict);
    auto [qpart, lpart] = nonlinear_part(p);
    CHECK(def == is_submodular_def(qpart));
  }
}

TEST_CASE("nonlinear part of a submodular polynomial is antitone") {
  Rng rng(33);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 2, 7));
    Polynomial p = random_submodular(rng, n, 4);
    auto [qpart, lpart] = nonlinear_part(p);
    for_each_assignment(n, [&](const Assignment& x) {
      for (VarId i = 0; i < n; ++i) {
        if (x[i]) continue;
        Assignment y = x;
        y[i] = 1;
        CHECK(qpart.evaluate(y) <= qpart.evaluate(x));
      }
    });
    CHECK(brute_minimize(qpart).maximal == Assignment(n, 1));
  }
}

TEST_CASE("in_p_suf examples") {
  PsufReport ok = in_p_suf(kCubic);
  CHECK(ok.verdict);
  CHECK_FALSE(ok.literal_verdict);
  REQUIRE(ok.ledger.size() == 3);
  for (const auto& e : ok.ledger) {
    CHECK(e.a_ij == -3);
    CHECK(e.positive_mass == 2);
    CHECK(e.a_ij + e.positive_mass == -1);
  }
  CHECK_FALSE(ok.f_minus);
  CHECK(ok.higher_nonnegative);
  CHECK(ok.f_plus == std::optional<bool>(true));
  CHECK(is_submodular_def(kCubic));

  PsufReport bad = in_p_suf(kBadCubic);
  CHECK_FALSE(bad.verdict);
  REQUIRE(bad.violation);
  CHECK(bad.violation->i == 0);
  CHECK(bad.violation->j == 1);
  CHECK(bad.violation->a_ij + bad.violation->positive_mass == 1);
  SubmodularityWitness w = is_submodular_pairwise(kBadCubic);
  CHECK_FALSE(w.verdict);
  CHECK(w.violation->i == 0);
  CHECK(w.violation->j == 1);

  PsufReport neg = in_p_suf(poly(4, {{{0, 1, 2}, -1}, {{1, 3}, -2}, {{2}, 4}}));
  CHECK(neg.verdict);
  CHECK(neg.f_minus);
  CHECK_FALSE(neg.literal_verdict);
}

TEST_CASE("in_p_suf strictness flag") {
  PsufReport tight = in_p_suf(poly(3, {{{0, 1, 2}, -1}}));
  CHECK(tight.verdict);
  CHECK_FALSE(tight.strict_pairs);
  PsufReport strict = in_p_suf(poly(2, {{{0, 1}, -1}}));
  CHECK(strict.strict_pairs);
}

TEST_CASE("P_suf members are submodular") {
  Rng rng(34);
  for (int t = 0; t < 150; ++t) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 2, 10));
    Polynomial p = random_psuf(rng, n, 5, static_cast<std::size_t>(uniform_int(rng, 0, 4)),
                               static_cast<std::size_t>(uniform_int(rng, 0, 6)));
    PsufReport r = in_p_suf(p);
    CHECK(r.verdict);
    CHECK(is_submodular_def(p));
  }
}

TEST_CASE("pair condition is necessary for nonnegative higher-order terms") {
  Rng rng(35);
  int checked = 0;
  for (int t = 0; t < 400; ++t) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 3, 7));
    Polynomial p = random_polynomial(rng, n, 4, 5);
    PsufReport r = in_p_suf(p);
    if (!r.higher_nonnegative) continue;
    ++checked;
    CHECK(r.verdict == is_submodular_def(p));
  }
  CHECK(checked > 20);
}

TEST_CASE("brute_minimize examples") {
  MinimizerReport a = brute_minimize(poly(2, {{{0, 1}, -1}}));
  CHECK(a.min_value == -1);
  CHECK(a.minimal == Assignment{1, 1});
  CHECK(a.maximal == Assignment{1, 1});

  MinimizerReport b = brute_minimize(poly(2, {{{0}, 1}, {{1}, 1}, {{0, 1}, -2}}));
  CHECK(b.min_value == 0);
  CHECK(b.minimal == Assignment{0, 0});
  CHECK(b.maximal == Assignment{1, 1});

  MinimizerReport c = brute_minimize(kCubic);
  CHECK(c.min_value == -7);
  CHECK(c.minimal == Assignment{1, 1, 1});

  CHECK_THROWS_AS(brute_minimize(Polynomial(15)), Infeasible);
}

TEST_CASE("brute_minimize on a nonsubmodular input") {
  // Minimizers (1,0) and (0,1): their AND and OR are not minimizers.
  MinimizerReport r = brute_minimize(poly(2, {{{0}, -1}, {{1}, -1}, {{0, 1}, 2}}));
  CHECK(r.min_value == -1);
  CHECK_FALSE(r.extremes_exact);
  CHECK(r.minimal == r.maximal);
  CHECK(poly(2, {{{0}, -1}, {{1}, -1}, {{0, 1}, 2}}).evaluate(r.minimal) == -1);
}

TEST_CASE("brute_minimize extremes match the oracle") {
  Rng rng(36);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 1, 10));
    Polynomial p = random_submodular(rng, n, 4);
    MinimizerReport r = brute_minimize(p);
    auto [mn, argmins] = enumerate_minimizers(p);
    CHECK(r.min_value == mn);
    Assignment lo(n, 1), hi(n, 0);
    for (const auto& x : argmins) {
      lo = meet(lo, x);
      hi = join(hi, x);
      for (const auto& y : argmins) {
        CHECK(p.evaluate(meet(x, y)) == mn);
        CHECK(p.evaluate(join(x, y)) == mn);
      }
    }
    CHECK(r.minimal == lo);
    CHECK(r.maximal == hi);
    CHECK(r.extremes_exact);
  }
}

TEST_CASE("boundary_minimize examples") {
  Polynomial p = poly(2, {{{0, 1}, -1}});
  PartialAssignment one(2);
  one.set(1, 1);
  MinimizerReport r = boundary_minimize(p, {0}, one);
  CHECK(r.min_value == -1);
  CHECK(r.minimal == Assignment{1});

  PartialAssignment zero(2);
  zero.set(1, 0);
  MinimizerReport z = boundary_minimize(p, {0}, zero);
  CHECK(z.min_value == 0);
  CHECK(z.minimal == Assignment{0});
  CHECK(z.maximal == Assignment{1});

  MinimizerReport s = boundary_minimize(poly(2, {{{0}, 1}, {{0, 1}, -2}}), {0}, one);
  CHECK(s.min_value == -1);
  CHECK(s.minimal == Assignment{1});

  PartialAssignment empty(2);
  CHECK_THROWS_AS(boundary_minimize(p, {0}, empty), InvalidInput);
  PartialAssignment overlap(2);
  overlap.set(0, 1);
  overlap.set(1, 1);
  CHECK_THROWS_AS(boundary_minimize(p, {0}, overlap), InvalidInput);
}

TEST_CASE("boundary minimizers are monotone in the boundary") {
  Rng rng(37);
  for (int t = 0; t < 80; ++t) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 2, 10));
    Polynomial p = random_submodular(rng, n, 4);
    VarSet d = random_subset(rng, n, static_cast<std::size_t>(uniform_int(rng, 1, static_cast<long>(n) - 1)));
    PartialAssignment lo(n), hi(n);
    for (VarId v = 0; v < n; ++v) {
      if (std::binary_search(d.begin(), d.end(), v)) continue;
      std::uint8_t a = static_cast<std::uint8_t>(uniform_int(rng, 0, 1));
      std::uint8_t b = a | static_cast<std::uint8_t>(uniform_int(rng, 0, 1));
      lo.set(v, a);
      hi.set(v, b);
    }
    MinimizerReport x = boundary_minimize(p, d, lo);
    MinimizerReport z = boundary_minimize(p, d, hi);
    CHECK(leq(x.minimal, z.minimal));
    CHECK(leq(x.maximal, z.maximal));

    // Restriction keeps submodularity.
    CHECK(is_submodular_def(boundary_polynomial(p, d, lo)));
  }
}

TEST_CASE("re-minimizing a sub-block keeps optimality") {
  Rng rng(38);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 3, 9));
    Polynomial p = random_submodular(rng, n, 4);
    MinimizerReport global = brute_minimize(p);
    VarSet e = random_subset(rng, n, static_cast<std::size_t>(uniform_int(rng, 1, static_cast<long>(n) - 1)));
    PartialAssignment rest(n);
    for (VarId v = 0; v < n; ++v)
      if (!std::binary_search(e.begin(), e.end(), v)) rest.set(v, global.minimal[v]);
    MinimizerReport local = boundary_minimize(p, e, rest);
    Assignment sub;
    for (VarId v : e) sub.push_back(global.minimal[v]);
    CHECK(boundary_polynomial(p, e, rest).evaluate(sub) == local.min_value);
  }
}

TEST_CASE("brute cap from the environment") {
  ::setenv("GIBBSCUT_BRUTE_CAP", "9", 1);
  CHECK(BruteCaps::from_environment().full == 9);
  ::setenv("GIBBSCUT_BRUTE_CAP", "lots", 1);
  CHECK_THROWS_AS(BruteCaps::from_environment(), InvalidInput);
  ::unsetenv("GIBBSCUT_BRUTE_CAP");
  CHECK(BruteCaps::from_environment().full == 14);
}

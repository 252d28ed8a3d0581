#include "doctest.h"

#include <algorithm>

#include "gibbscut/error.hpp"
#include "gibbscut/graphcut.hpp"
#include "gibbscut/maxflow.hpp"
#include "support/generators.hpp"

using namespace gibbscut;
using namespace gibbscut::testing;

namespace {

VarSet iota_vars(std::size_t m) {
  VarSet v(m);
  for (std::size_t i = 0; i < m; ++i) v[i] = static_cast<VarId>(i);
  return v;
}

// Minimum of the gadget polynomial over its aux variables, with x as a bitmask.
Rational min_over_aux(const Polynomial& local, std::size_t m, std::uint64_t xmask, std::size_t aux) {
  Rational best;
  for (std::uint64_t z = 0; z < (std::uint64_t{1} << aux); ++z) {
    Rational v = local.evaluate(bits_of(xmask | (z << m), m + aux));
    if (z == 0 || v < best) best = v;
  }
  return best;
}

void check_gadget(const Gadget& g) {
  const std::size_t m = g.vars.size();
  Polynomial local = g.local_polynomial();
  Polynomial target = g.represented_polynomial();
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << m); ++x) {
    Rational best = min_over_aux(local, m, x, g.aux_count());
    CHECK(best == target.evaluate(bits_of(x, m)));
    std::size_t w = static_cast<std::size_t>(std::popcount(x));
    std::uint64_t z = (std::uint64_t{1} << g.witness_ones[w]) - 1;
    CHECK(local.evaluate(bits_of(x | (z << m), m + g.aux_count())) == best);
  }
}

std::vector<bool> side_of(const FlowNetwork& net, const Assignment& z) {
  std::vector<bool> side(net.node_count, false);
  side[net.source()] = true;
  for (std::size_t v = 0; v < net.var_nodes.size(); ++v) side[net.var_nodes[v]] = z[v] != 0;
  for (std::size_t k = 0; k < net.aux_nodes.size(); ++k) side[net.aux_nodes[k]] = z[net.var_nodes.size() + k] != 0;
  return side;
}

}  // namespace

TEST_CASE("negative gadget") {
  Gadget g = neg_monomial_gadget({0, 1, 2}, -1);
  CHECK(g.aux_count() == 1);
  CHECK(g.b == std::vector<Rational>{1});
  CHECK(g.e == std::vector<Rational>{-1});
  Polynomial local = g.local_polynomial();
  CHECK(min_over_aux(local, 3, 0b111, 1) == -1);
  for (std::uint64_t x = 0; x < 7; ++x) CHECK(min_over_aux(local, 3, x, 1) == 0);

  Gadget five = neg_monomial_gadget(iota_vars(5), -3);
  CHECK(min_over_aux(five.local_polynomial(), 5, 0b10110, 1) == 0);
  check_gadget(five);

  CHECK_THROWS_AS(neg_monomial_gadget({0, 1, 2}, 1), InvalidInput);
  CHECK_THROWS_AS(neg_monomial_gadget({0, 1}, -1), InvalidInput);
}

TEST_CASE("positive gadget coefficients") {
  Gadget g3 = pos_monomial_gadget(iota_vars(3), 1);
  CHECK(g3.b == std::vector<Rational>{1});
  CHECK(g3.e == std::vector<Rational>{-2});
  Gadget g4 = pos_monomial_gadget(iota_vars(4), 1);
  CHECK(g4.b == std::vector<Rational>{2});
  CHECK(g4.e == std::vector<Rational>{-5});
  Gadget g5 = pos_monomial_gadget(iota_vars(5), 1);
  CHECK(g5.b == std::vector<Rational>{2, 1});
  CHECK(g5.e == std::vector<Rational>{-7, -2});
  check_gadget(g5);
  Gadget g6 = pos_monomial_gadget(iota_vars(6), 1);
  CHECK(g6.b == std::vector<Rational>{2, 2});
  CHECK(g6.e == std::vector<Rational>{-9, -5});
  CHECK(g6.compensation == 1);

  CHECK_THROWS_AS(pos_monomial_gadget(iota_vars(3), -1), InvalidInput);
  CHECK_THROWS_AS(pos_monomial_gadget(iota_vars(2), 1), InvalidInput);
}

TEST_CASE("gadget identities for m = 3..8") {
  for (std::size_t m = 3; m <= 8; ++m)
    for (Rational a : {q(1), q(3), q(5, 2)}) {
      CAPTURE(m);
      Gadget pos = pos_monomial_gadget(iota_vars(m), a);
      CHECK(pos.aux_count() == (m % 2 ? (m - 1) / 2 : (m - 2) / 2));
      for (Rational b : pos.b) CHECK(b > 0);
      for (Rational e : pos.e) CHECK(e < 0);
      check_gadget(pos);
      check_gadget(neg_monomial_gadget(iota_vars(m), -a));
    }
}

TEST_CASE("quadratic_to_network examples") {
  FlowNetwork net = quadratic_to_network(poly(2, {{{0}, 1}, {{0, 1}, -2}}));
  CHECK(net.node_count == 4);
  CHECK(net.offset == -1);
  REQUIRE(net.arcs.size() == 2);
  CHECK(net.arcs[0].from == 1);
  CHECK(net.arcs[0].to == 2);
  CHECK(net.arcs[0].capacity == 2);
  CHECK(net.arcs[1].from == 0);
  CHECK(net.arcs[1].to == 1);
  CHECK(net.arcs[1].capacity == 1);
  CHECK(net.cut_cost(side_of(net, {1, 1})) + net.offset == -1);

  FlowNetwork lin = quadratic_to_network(poly(1, {{{0}, 3}}));
  REQUIRE(lin.arcs.size() == 1);
  CHECK(lin.arcs[0].from == 1);
  CHECK(lin.arcs[0].to == lin.sink());
  CHECK(lin.arcs[0].capacity == 3);
  CHECK(lin.offset == 0);

  CHECK_THROWS_AS(quadratic_to_network(poly(2, {{{0, 1}, 1}})), Infeasible);
  CHECK_THROWS_AS(quadratic_to_network(poly(3, {{{0, 1, 2}, -1}})), InvalidInput);
}

TEST_CASE("cut cost equals polynomial value minus offset") {
  Rng rng(41);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 2, 8));
    Polynomial p = random_psuf(rng, n, 5, static_cast<std::size_t>(uniform_int(rng, 0, 3)),
                               static_cast<std::size_t>(uniform_int(rng, 0, 5)));
    LiftedPolynomial lifted = lift(p);
    FlowNetwork net = build_network(p);
    const std::size_t total = lifted.polynomial.n_vars();
    if (total > 16) continue;
    CHECK(net.node_count == total + 2);
    for (const auto& a : net.arcs) CHECK(a.capacity >= 0);
    for_each_assignment(total, [&](const Assignment& z) {
      CHECK(net.cut_cost(side_of(net, z)) == lifted.polynomial.evaluate(z) - net.offset);
    });
    // Minimizing the lift over aux gives P back.
    for_each_assignment(n, [&](const Assignment& x) {
      Rational best;
      bool first = true;
      for (std::uint64_t zm = 0; zm < (std::uint64_t{1} << (total - n)); ++zm) {
        Assignment full = x;
        Assignment aux = bits_of(zm, total - n);
        full.insert(full.end(), aux.begin(), aux.end());
        Rational v = lifted.polynomial.evaluate(full);
        if (first || v < best) best = v;
        first = false;
      }
      CHECK(best == p.evaluate(x));
    });
  }
}

TEST_CASE("build_network examples") {
  Polynomial cubic = poly(3, {{{0, 1, 2}, 2}, {{0, 1}, -3}, {{0, 2}, -3}, {{1, 2}, -3}});
  LiftedPolynomial lifted = lift(cubic);
  REQUIRE(lifted.gadgets.size() == 1);
  CHECK(lifted.gadgets[0].aux_count() == 1);
  FlowNetwork net = build_network(cubic);
  CHECK(net.aux_nodes.size() == 1);
  for (const auto& m : lifted.polynomial.monomials())
    if (m.degree() == 2 && m.vars[1] < 3) CHECK(m.coef == -1);
  MinimizerReport r = minimize_via_cut(cubic);
  CHECK(r.min_value == -7);
  CHECK(r.minimal == Assignment{1, 1, 1});

  Polynomial neg = poly(3, {{{0, 1, 2}, -1}});
  CHECK(build_network(neg).aux_nodes.size() == 1);
  MinimizerReport rn = minimize_via_cut(neg);
  CHECK(rn.min_value == -1);
  CHECK(rn.minimal == Assignment{1, 1, 1});

  Polynomial quad = poly(3, {{{0}, 2}, {{1}, -1}, {{0, 1}, -3}, {{1, 2}, -1}}, 4);
  FlowNetwork a = build_network(quad);
  FlowNetwork b = quadratic_to_network(quad);
  CHECK(a.aux_nodes.empty());
  CHECK(a.node_count == b.node_count);
  CHECK(a.offset == b.offset);
  REQUIRE(a.arcs.size() == b.arcs.size());
  for (std::size_t k = 0; k < a.arcs.size(); ++k) {
    CHECK(a.arcs[k].from == b.arcs[k].from);
    CHECK(a.arcs[k].to == b.arcs[k].to);
    CHECK(a.arcs[k].capacity == b.arcs[k].capacity);
  }

  CHECK_THROWS_AS(build_network(poly(3, {{{0, 1, 2}, 2}, {{0, 1}, -1}, {{0, 2}, -3}, {{1, 2}, -3}})),
                  Infeasible);
}

TEST_CASE("node count bound") {
  Rng rng(42);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 3, 12));
    Polynomial p = random_psuf(rng, n, 5, 4, 3);
    std::size_t bound = n + 2;
    for (const auto& m : p.monomials())
      if (m.degree() >= 3) bound += sgn(m.coef) < 0 ? 1 : (m.degree() - 1) / 2;
    CHECK(build_network(p).node_count <= bound);
  }
}

TEST_CASE("max_flow_min_cut examples") {
  FlowNetwork single;
  single.node_count = 3;
  single.arcs = {{0, 1, 2}, {1, 2, 1}};
  CutResult r = max_flow_min_cut(single);
  CHECK(r.cut_value == 1);
  CHECK(r.min_source_side == std::vector<bool>{true, true, false});
  CHECK(r.max_source_side == std::vector<bool>{true, true, false});

  FlowNetwork tight;
  tight.node_count = 3;
  tight.arcs = {{0, 1, 1}, {1, 2, 1}};
  CutResult t = max_flow_min_cut(tight);
  CHECK(t.cut_value == 1);
  CHECK(t.min_source_side == std::vector<bool>{true, false, false});
  CHECK(t.max_source_side == std::vector<bool>{true, true, false});

  FlowNetwork loose;
  loose.node_count = 4;
  loose.arcs = {{0, 1, 1}, {1, 3, 1}};
  CutResult l = max_flow_min_cut(loose);
  CHECK(l.cut_value == 1);
  CHECK_FALSE(l.min_source_side[2]);
  CHECK(l.max_source_side[2]);

  FlowNetwork self;
  self.node_count = 3;
  self.arcs = {{1, 1, 1}};
  CHECK_THROWS_AS(max_flow_min_cut(self), InvalidInput);
  FlowNetwork negative;
  negative.node_count = 3;
  negative.arcs = {{0, 1, -1}};
  CHECK_THROWS_AS(max_flow_min_cut(negative), InvalidInput);
  FlowNetwork out_of_range;
  out_of_range.node_count = 3;
  out_of_range.arcs = {{0, 5, 1}};
  CHECK_THROWS_AS(max_flow_min_cut(out_of_range), InvalidInput);
}

TEST_CASE("max flow equals the brute-force min cut") {
  Rng rng(43);
  for (int t = 0; t < 80; ++t) {
    FlowNetwork net;
    net.node_count = static_cast<std::size_t>(uniform_int(rng, 2, 9));
    const long arcs = uniform_int(rng, 0, 20);
    for (long a = 0; a < arcs; ++a) {
      NodeId u = static_cast<NodeId>(uniform_int(rng, 0, static_cast<long>(net.node_count) - 1));
      NodeId v = static_cast<NodeId>(uniform_int(rng, 0, static_cast<long>(net.node_count) - 1));
      if (u == v) continue;
      net.arcs.push_back({u, v, q(uniform_int(rng, 0, 9), uniform_int(rng, 1, 3))});
    }
    CutResult r = max_flow_min_cut(net);
    const std::size_t inner = net.node_count - 2;
    Rational best;
    std::vector<bool> lo(net.node_count, true), hi(net.node_count, false);
    bool first = true;
    std::vector<std::vector<bool>> argmins;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << inner); ++m) {
      std::vector<bool> side(net.node_count, false);
      side[0] = true;
      for (std::size_t k = 0; k < inner; ++k) side[k + 1] = (m >> k) & 1u;
      Rational c = net.cut_cost(side);
      if (first || c < best) {
        best = c;
        argmins.clear();
        first = false;
      }
      if (c == best) argmins.push_back(side);
    }
    for (const auto& s : argmins)
      for (std::size_t u = 0; u < net.node_count; ++u) {
        lo[u] = lo[u] && s[u];
        hi[u] = hi[u] || s[u];
      }
    CHECK(r.cut_value == best);
    CHECK(r.min_source_side == lo);
    CHECK(r.max_source_side == hi);
  }
}

TEST_CASE("dinic on big integers") {
  Dinic<BigInt> d(4);
  BigInt huge("123456789012345678901234567890");
  d.add_arc(0, 1, huge);
  d.add_arc(1, 3, huge);
  d.add_arc(0, 2, 5);
  d.add_arc(2, 3, 7);
  CHECK(d.run(0, 3) == huge + 5);

  FlowNetwork net;
  net.node_count = 3;
  Rational seventh(huge + 1, 7);
  seventh.canonicalize();
  net.arcs = {{0, 1, Rational(huge)}, {1, 2, seventh}};
  CHECK(max_flow_min_cut(net).cut_value == seventh);
}

TEST_CASE("minimize_via_cut examples") {
  MinimizerReport a = minimize_via_cut(poly(2, {{{0, 1}, -1}}));
  CHECK(a.min_value == -1);
  CHECK(a.minimal == Assignment{1, 1});
  CHECK(a.maximal == Assignment{1, 1});
  MinimizerReport b = minimize_via_cut(poly(2, {{{0}, 1}, {{1}, 1}, {{0, 1}, -2}}));
  CHECK(b.min_value == 0);
  CHECK(b.minimal == Assignment{0, 0});
  CHECK(b.maximal == Assignment{1, 1});
  CHECK_THROWS_AS(minimize_via_cut(poly(2, {{{0, 1}, 1}})), Infeasible);
}

TEST_CASE("graph cut agrees with brute force on P_suf instances") {
  Rng rng(44);
  for (int t = 0; t < 120; ++t) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 1, 12));
    Polynomial p = random_psuf(rng, n, 5, static_cast<std::size_t>(uniform_int(rng, 0, 5)),
                               static_cast<std::size_t>(uniform_int(rng, 0, 8)));
    MinimizerReport cut = minimize_via_cut(p);
    MinimizerReport brute = brute_minimize(p);
    CHECK(cut.min_value == brute.min_value);
    CHECK(cut.minimal == brute.minimal);
    CHECK(cut.maximal == brute.maximal);
  }
}

TEST_CASE("quadratic rejection matches nonsubmodularity") {
  Rng rng(45);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 2, 8));
    Polynomial p = random_polynomial(rng, n, 2, static_cast<std::size_t>(uniform_int(rng, 1, 8)));
    bool rejected = false;
    try {
      quadratic_to_network(p);
    } catch (const Infeasible&) {
      rejected = true;
    }
    CHECK(rejected == !is_submodular_def(p));
  }
}

TEST_CASE("minimize_auto dispatch") {
  Polynomial nonsub = poly(2, {{{0}, -1}, {{1}, -1}, {{0, 1}, 2}});
  CHECK(minimize_auto(nonsub).min_value == -1);
  Polynomial wide = make_polynomial({{{0, 1}, 1}}, 0, 20);
  CHECK_THROWS_AS(minimize_auto(wide), Infeasible);
  std::vector<Term> terms;
  for (VarId v = 0; v + 1 < 40; ++v) terms.push_back({{v, v + 1}, -1});
  CHECK(minimize_auto(make_polynomial(terms, 0, 40)).min_value == -39);
}

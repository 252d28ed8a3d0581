#pragma once

#include <cstddef>
#include <vector>

#include "gibbscut/poly.hpp"
#include "gibbscut/submod.hpp"

namespace gibbscut {

using NodeId = std::size_t;

struct Arc {
  NodeId from;
  NodeId to;
  Rational capacity;
};

/// s-t network with node 0 the source and node N+1 the sink. The cost of a
/// cut (W, B) is the capacity of arcs from W to B; labeling z_i = 1 for i in W.
/// For a network built from a polynomial, cut cost = P(z) - offset.
struct FlowNetwork {
  std::size_t node_count = 2;  // includes s and t
  std::vector<Arc> arcs;
  Rational offset = 0;
  std::vector<NodeId> var_nodes;  // VarId -> node
  std::vector<NodeId> aux_nodes;

  NodeId source() const { return 0; }
  NodeId sink() const { return node_count - 1; }

  /// Capacity of the arcs leaving the source side `in_source`.
  Rational cut_cost(const std::vector<bool>& in_source) const;
};

struct CutResult {
  Rational cut_value;
  std::vector<bool> min_source_side;  // residual reachability from s
  std::vector<bool> max_source_side;  // complement of nodes reaching t
};

enum class GadgetKind { Negative, Positive };

/// Auxiliary-node construction for one monomial a * prod x_i of degree m:
///   p(x, z) = sum_j b_j sum_i (z_j - x_i) z_j + sum_j e_j z_j.
/// Minimizing over z yields a * prod x_i (negative kind) or
/// a * prod x_i - a * sum_{i<j} x_i x_j (positive kind).
struct Gadget {
  GadgetKind kind;
  VarSet vars;
  Rational a;
  std::vector<Rational> b;  // one per aux node, > 0
  std::vector<Rational> e;  // one per aux node, < 0
  /// Coefficient each pair x_i x_j of vars must get back in the quadratic
  /// layer: a for the positive kind, 0 for the negative kind.
  Rational compensation;
  /// Per Hamming weight w = 0..m: number of leading aux nodes set to one in
  /// an aux assignment attaining the minimum.
  std::vector<std::size_t> witness_ones;

  std::size_t aux_count() const { return b.size(); }
  /// Gadget polynomial over x_0..x_{m-1} (local ids 0..m-1), aux z_j at m+j.
  Polynomial local_polynomial() const;
  /// What min over aux of local_polynomial() equals, over the same local ids.
  Polynomial represented_polynomial() const;
};

/// One aux node, b = -a, e = a. Requires a < 0 and m >= 3.
Gadget neg_monomial_gadget(const VarSet& vars, const Rational& a);

/// l = (m-1)/2 aux nodes for odd m, (m-2)/2 for even m. Requires a > 0, m >= 3.
Gadget pos_monomial_gadget(const VarSet& vars, const Rational& a);

/// Degree <= 2 polynomial with every pair coefficient <= 0. Pair a x_i x_j
/// (i < j) becomes arc i -> j of capacity -a with a folded into x_i's linear
/// term; linear c_i > 0 becomes i -> t, c_i < 0 becomes s -> i plus c_i in
/// the offset.
FlowNetwork quadratic_to_network(const Polynomial& p);

/// Quadratic polynomial over n + aux variables whose minimum over aux equals
/// P; aux variable n + k sits on the network's k-th aux node.
struct LiftedPolynomial {
  Polynomial polynomial;
  std::vector<Gadget> gadgets;
  std::size_t original_vars;
};

/// Replaces each monomial of degree >= 3 by its gadget. Requires P in P_suf.
LiftedPolynomial lift(const Polynomial& p);

/// Network for a P_suf polynomial; gadget arcs run z_j -> x_i.
FlowNetwork build_network(const Polynomial& p);

/// Exact max-flow. Capacities are scaled to integers by their common
/// denominator; 64-bit arithmetic is used when it cannot overflow.
CutResult max_flow_min_cut(const FlowNetwork& net);

/// Minimum with minimal/maximal minimizers via one min cut. Requires P_suf.
MinimizerReport minimize_via_cut(const Polynomial& p);

/// Graph cut when P is in P_suf, otherwise brute force within the caps.
MinimizerReport minimize_auto(const Polynomial& p, const BruteCaps& caps = {});

/// Least common denominator of all capacities.
BigInt capacity_scale(const FlowNetwork& net);

}  // namespace gibbscut

#include "gibbscut/graphcut.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "gibbscut/error.hpp"
#include "gibbscut/maxflow.hpp"

namespace gibbscut {

Rational FlowNetwork::cut_cost(const std::vector<bool>& in_source) const {
  if (in_source.size() != node_count) throw InvalidInput("cut side has wrong node count");
  Rational total = 0;
  for (const auto& a : arcs)
    if (in_source[a.from] && !in_source[a.to]) total += a.capacity;
  return total;
}

namespace {

std::string pair_text(VarId i, VarId j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

void require_gadget_shape(const VarSet& vars) {
  if (vars.size() < 3) throw InvalidInput("gadgets need a monomial of degree >= 3");
  for (std::size_t k = 1; k < vars.size(); ++k)
    if (vars[k] <= vars[k - 1]) throw InvalidInput("gadget variables must be strictly increasing");
}

// Accumulates arcs and per-node linear coefficients, then turns the linear
// coefficients into terminal arcs.
class NetworkAssembler {
 public:
  explicit NetworkAssembler(std::size_t inner_nodes) : linear_(inner_nodes + 2, 0) {
    net_.node_count = inner_nodes + 2;
  }

  // Adds a x_u x_v (a <= 0) as arc u -> v of capacity -a.
  void add_pair(NodeId u, NodeId v, const Rational& a) {
    if (is_zero(a)) return;
    net_.arcs.push_back({u, v, -a});
    linear_[u] += a;
  }

  void add_linear(NodeId u, const Rational& c) { linear_[u] += c; }
  void add_constant(const Rational& c) { net_.offset += c; }

  FlowNetwork finish(std::vector<NodeId> var_nodes, std::vector<NodeId> aux_nodes) {
    for (NodeId u = 1; u + 1 < net_.node_count; ++u) {
      const Rational& c = linear_[u];
      if (sgn(c) > 0) {
        net_.arcs.push_back({u, net_.sink(), c});
      } else if (sgn(c) < 0) {
        net_.arcs.push_back({net_.source(), u, -c});
        net_.offset += c;
      }
    }
    net_.var_nodes = std::move(var_nodes);
    net_.aux_nodes = std::move(aux_nodes);
    return std::move(net_);
  }

 private:
  FlowNetwork net_;
  std::vector<Rational> linear_;
};

std::vector<NodeId> identity_var_nodes(std::size_t n) {
  std::vector<NodeId> nodes(n);
  for (std::size_t v = 0; v < n; ++v) nodes[v] = v + 1;
  return nodes;
}

// Adds the degree <= 2 polynomial `q` to the assembler (var v on node v+1).
void add_quadratic_layer(NetworkAssembler& as, const Polynomial& q) {
  as.add_constant(q.constant());
  for (const auto& m : q.monomials()) {
    if (m.degree() == 1) {
      as.add_linear(m.vars[0] + 1, m.coef);
    } else if (m.degree() == 2) {
      if (sgn(m.coef) > 0)
        throw Infeasible("positive quadratic coefficient on pair " +
                         pair_text(m.vars[0], m.vars[1]) + "; not graph representable");
      as.add_pair(m.vars[0] + 1, m.vars[1] + 1, m.coef);
    } else {
      throw InvalidInput("quadratic network builder got a monomial of degree " +
                         std::to_string(m.degree()));
    }
  }
}

}  // namespace

Polynomial Gadget::local_polynomial() const {
  const std::size_t m = vars.size();
  std::vector<Term> terms;
  for (std::size_t j = 0; j < b.size(); ++j) {
    const auto z = static_cast<VarId>(m + j);
    terms.push_back({{z}, Rational(static_cast<long>(m)) * b[j] + e[j]});
    for (std::size_t i = 0; i < m; ++i) terms.push_back({{static_cast<VarId>(i), z}, -b[j]});
  }
  return make_polynomial(std::move(terms), 0, m + b.size());
}

Polynomial Gadget::represented_polynomial() const {
  const std::size_t m = vars.size();
  std::vector<Term> terms;
  Term product{{}, a};
  for (std::size_t i = 0; i < m; ++i) product.vars.push_back(static_cast<VarId>(i));
  terms.push_back(std::move(product));
  if (kind == GadgetKind::Positive)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        terms.push_back({{static_cast<VarId>(i), static_cast<VarId>(j)}, -a});
  return make_polynomial(std::move(terms), 0, m);
}

Gadget neg_monomial_gadget(const VarSet& vars, const Rational& a) {
  if (sgn(a) >= 0) throw InvalidInput("negative gadget needs a < 0");
  require_gadget_shape(vars);
  Gadget g{GadgetKind::Negative, vars, a, {-a}, {a}, 0, {}};
  // z = 1 pays off only when every x_i is set.
  g.witness_ones.assign(vars.size() + 1, 0);
  g.witness_ones.back() = 1;
  return g;
}

Gadget pos_monomial_gadget(const VarSet& vars, const Rational& a) {
  if (sgn(a) <= 0) throw InvalidInput("positive gadget needs a > 0");
  require_gadget_shape(vars);
  const long m = static_cast<long>(vars.size());
  const bool odd = m % 2 == 1;
  const long l = odd ? (m - 1) / 2 : (m - 2) / 2;
  Gadget g{GadgetKind::Positive, vars, a, {}, {}, a, {}};
  for (long j = 1; j <= l; ++j) {
    if (odd && j == l) {
      g.b.push_back(a);
      g.e.push_back(-2 * a);
    } else {
      g.b.push_back(2 * a);
      g.e.push_back(Rational(-(2 * m - 4 * j + 1)) * a);
    }
  }
  for (long w = 0; w <= m; ++w) g.witness_ones.push_back(static_cast<std::size_t>(std::min(w / 2, l)));
  return g;
}

FlowNetwork quadratic_to_network(const Polynomial& p) {
  if (p.degree() > 2) throw InvalidInput("quadratic_to_network needs degree <= 2");
  NetworkAssembler as(p.n_vars());
  add_quadratic_layer(as, p);
  return as.finish(identity_var_nodes(p.n_vars()), {});
}

LiftedPolynomial lift(const Polynomial& p) {
  PsufReport suf = in_p_suf(p, {}, false);
  if (!suf.verdict) {
    const auto& v = *suf.violation;
    throw Infeasible("polynomial is not in P_suf: pair " + pair_text(v.i, v.j) + " has a_ij + b+ = " +
                     to_string(v.a_ij + v.positive_mass) + " > 0");
  }
  const std::size_t n = p.n_vars();
  LiftedPolynomial out{Polynomial(n), {}, n};
  std::vector<Term> quad;
  std::size_t aux = 0;
  for (const auto& m : p.monomials()) {
    if (m.degree() <= 2) {
      quad.push_back({m.vars, m.coef});
      continue;
    }
    Gadget g = sgn(m.coef) < 0 ? neg_monomial_gadget(m.vars, m.coef)
                               : pos_monomial_gadget(m.vars, m.coef);
    if (g.kind == GadgetKind::Positive)
      for (std::size_t i = 0; i < m.vars.size(); ++i)
        for (std::size_t j = i + 1; j < m.vars.size(); ++j)
          quad.push_back({{m.vars[i], m.vars[j]}, g.compensation});
    aux += g.aux_count();
    out.gadgets.push_back(std::move(g));
  }
  Polynomial layer = make_polynomial(std::move(quad), p.constant(), n + aux);
  for (const auto& m : layer.monomials())
    if (m.degree() == 2 && sgn(m.coef) > 0)
      throw VerificationFailure("compensated quadratic layer has positive coefficient on " +
                                pair_text(m.vars[0], m.vars[1]));

  std::vector<Term> gadget_terms;
  std::size_t next = n;
  for (const auto& g : out.gadgets) {
    Polynomial local = g.local_polynomial();
    VarSet targets = g.vars;
    for (std::size_t j = 0; j < g.aux_count(); ++j) targets.push_back(static_cast<VarId>(next++));
    for (const auto& m : local.monomials()) {
      Term t{{}, m.coef};
      for (VarId v : m.vars) t.vars.push_back(targets[v]);
      gadget_terms.push_back(std::move(t));
    }
  }
  out.polynomial = layer + make_polynomial(std::move(gadget_terms), 0, n + aux);
  return out;
}

FlowNetwork build_network(const Polynomial& p) {
  LiftedPolynomial lifted = lift(p);
  const std::size_t n = p.n_vars();
  std::size_t aux_total = 0;
  for (const auto& g : lifted.gadgets) aux_total += g.aux_count();
  NetworkAssembler as(n + aux_total);

  // The degree <= 2 part of P plus compensations, over the original variables.
  std::vector<Term> quad;
  for (const auto& m : p.monomials())
    if (m.degree() <= 2) quad.push_back({m.vars, m.coef});
  for (const auto& g : lifted.gadgets)
    if (g.kind == GadgetKind::Positive)
      for (std::size_t i = 0; i < g.vars.size(); ++i)
        for (std::size_t j = i + 1; j < g.vars.size(); ++j)
          quad.push_back({{g.vars[i], g.vars[j]}, g.compensation});
  add_quadratic_layer(as, make_polynomial(std::move(quad), p.constant(), n));

  // b_j (z_j - x_i) z_j is the arc z_j -> x_i; what is left on z_j is e_j.
  std::vector<NodeId> aux_nodes;
  NodeId next = n + 1;
  for (const auto& g : lifted.gadgets) {
    for (std::size_t j = 0; j < g.aux_count(); ++j) {
      NodeId z = next++;
      aux_nodes.push_back(z);
      as.add_linear(z, Rational(static_cast<long>(g.vars.size())) * g.b[j] + g.e[j]);
      for (VarId x : g.vars) as.add_pair(z, x + 1, -g.b[j]);
    }
  }
  return as.finish(identity_var_nodes(n), std::move(aux_nodes));
}

BigInt capacity_scale(const FlowNetwork& net) {
  BigInt scale = 1;
  for (const auto& a : net.arcs) scale = lcm(scale, BigInt(a.capacity.get_den()));
  return scale;
}

namespace {

template <typename Cap>
CutResult solve_scaled(const FlowNetwork& net, const std::vector<Cap>& caps, Cap& flow) {
  Dinic<Cap> dinic(net.node_count);
  for (std::size_t k = 0; k < net.arcs.size(); ++k)
    dinic.add_arc(net.arcs[k].from, net.arcs[k].to, caps[k]);
  flow = dinic.run(net.source(), net.sink());
  CutResult r;
  r.min_source_side = dinic.reachable_from(net.source());
  auto reaches_t = dinic.reaching(net.sink());
  r.max_source_side.resize(net.node_count);
  for (std::size_t u = 0; u < net.node_count; ++u) r.max_source_side[u] = !reaches_t[u];
  return r;
}

}  // namespace

CutResult max_flow_min_cut(const FlowNetwork& net) {
  if (net.node_count < 2) throw InvalidInput("network needs a source and a sink");
  for (const auto& a : net.arcs) {
    if (a.from >= net.node_count || a.to >= net.node_count)
      throw InvalidInput("arc endpoint out of range");
    if (a.from == a.to) throw InvalidInput("self arc at node " + std::to_string(a.from));
    if (sgn(a.capacity) < 0) throw InvalidInput("negative arc capacity");
  }
  const BigInt scale = capacity_scale(net);
  std::vector<BigInt> big;
  big.reserve(net.arcs.size());
  BigInt total = 0;
  for (const auto& a : net.arcs) {
    big.push_back(a.capacity.get_num() * (scale / a.capacity.get_den()));
    total += big.back();
  }

  CutResult r;
  BigInt flow;
  static const BigInt limit = BigInt(std::numeric_limits<std::int64_t>::max() / 4);
  if (total <= limit) {
    std::vector<std::int64_t> small;
    small.reserve(big.size());
    for (const auto& c : big) small.push_back(c.get_si());
    std::int64_t f = 0;
    r = solve_scaled(net, small, f);
    flow = BigInt(static_cast<long>(f));
  } else {
    r = solve_scaled(net, big, flow);
  }
  r.cut_value = Rational(flow, scale);
  r.cut_value.canonicalize();
  if (net.cut_cost(r.min_source_side) != r.cut_value ||
      net.cut_cost(r.max_source_side) != r.cut_value)
    throw VerificationFailure("residual cuts do not match the max-flow value");
  return r;
}

MinimizerReport minimize_via_cut(const Polynomial& p) {
  FlowNetwork net = build_network(p);
  CutResult cut = max_flow_min_cut(net);
  MinimizerReport r;
  r.min_value = cut.cut_value + net.offset;
  r.minimal.resize(p.n_vars());
  r.maximal.resize(p.n_vars());
  for (std::size_t v = 0; v < p.n_vars(); ++v) {
    r.minimal[v] = cut.min_source_side[net.var_nodes[v]] ? 1 : 0;
    r.maximal[v] = cut.max_source_side[net.var_nodes[v]] ? 1 : 0;
  }
  return r;
}

MinimizerReport minimize_auto(const Polynomial& p, const BruteCaps& caps) {
  if (in_p_suf(p, caps, false).verdict) return minimize_via_cut(p);
  if (p.n_vars() <= caps.full) return brute_minimize(p, caps);
  throw Infeasible("no applicable solver: polynomial is outside P_suf and has " +
                   std::to_string(p.n_vars()) + " variables (brute-force cap " +
                   std::to_string(caps.full) + ")");
}

}  // namespace gibbscut

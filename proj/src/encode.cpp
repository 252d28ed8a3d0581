#include "gibbscut/encode.hpp"

#include <algorithm>
#include <bit>
#include <memory>
#include <string>

#include "gibbscut/error.hpp"

namespace gibbscut {

OrderedDomain::OrderedDomain(std::vector<Rational> values) : values_(std::move(values)) {
  if (values_.size() < 2) throw InvalidInput("an ordered domain needs at least two values");
  for (std::size_t l = 1; l < values_.size(); ++l)
    if (values_[l] < values_[l - 1])
      throw InvalidInput("domain values must be nondecreasing (r_" + std::to_string(l) +
                         " < r_" + std::to_string(l - 1) + ")");
}

OrderedDomain OrderedDomain::uniform(int max_value, int k) {
  if (k < 1 || max_value < 1) throw InvalidInput("uniform domain needs k >= 1 and max >= 1");
  std::vector<Rational> values;
  for (int l = 0; l <= k; ++l) {
    // round half up of l * max / k
    long num = 2L * l * max_value + k;
    values.emplace_back(num / (2L * k));
  }
  return OrderedDomain(std::move(values));
}

LabelFunction::LabelFunction(std::size_t n, int k, Oracle oracle)
    : n_(n), k_(k), oracle_(std::move(oracle)) {
  if (k < 1) throw InvalidInput("label functions need k >= 1");
  if (!oracle_) throw InvalidInput("label function without an evaluator");
}

LabelFunction LabelFunction::from_table(std::size_t n, int k, std::vector<Rational> values) {
  LabelFunction probe(n, k, [](std::span<const Label>) { return Rational(0); });
  std::size_t size = probe.grid_size();
  if (size == 0 || values.size() != size)
    throw InvalidInput("table has " + std::to_string(values.size()) + " entries, expected " +
                       std::to_string(size));
  auto table = std::make_shared<std::vector<Rational>>(std::move(values));
  return LabelFunction(n, k, [table, probe](std::span<const Label> j) {
    return (*table)[probe.index_of(j)];
  });
}

std::size_t LabelFunction::grid_size() const {
  std::size_t size = 1;
  const auto base = static_cast<std::size_t>(k_) + 1;
  for (std::size_t i = 0; i < n_; ++i) {
    if (size > kMaxExpansionGrid * 64) return 0;
    size *= base;
  }
  return size;
}

std::size_t LabelFunction::index_of(std::span<const Label> j) const {
  if (j.size() != n_) throw InvalidInput("label point has wrong length");
  std::size_t idx = 0;
  for (Label l : j) {
    if (l < 0 || l > k_) throw InvalidInput("label " + std::to_string(l) + " outside 0.." +
                                            std::to_string(k_));
    idx = idx * (static_cast<std::size_t>(k_) + 1) + static_cast<std::size_t>(l);
  }
  return idx;
}

Rational LabelFunction::operator()(std::span<const Label> j) const {
  if (j.size() != n_) throw InvalidInput("label point has wrong length");
  for (Label l : j)
    if (l < 0 || l > k_) throw InvalidInput("label " + std::to_string(l) + " outside grid");
  return oracle_(j);
}

LevelMap::LevelMap(std::size_t n, int k) : n_(n), k_(k) {
  if (k < 1) throw InvalidInput("level map needs k >= 1");
}

VarId LevelMap::id(std::size_t i, int level) const {
  if (i >= n_ || level < 1 || level > k_) throw InvalidInput("level map index out of range");
  return static_cast<VarId>(i * static_cast<std::size_t>(k_) + static_cast<std::size_t>(level - 1));
}

std::pair<std::size_t, int> LevelMap::level_of(VarId v) const {
  if (v >= n_bool()) throw InvalidInput("Boolean id out of range");
  return {v / static_cast<std::size_t>(k_), static_cast<int>(v % static_cast<std::size_t>(k_)) + 1};
}

VarSet LevelMap::levels_of(std::size_t i) const {
  VarSet out;
  for (int l = 1; l <= k_; ++l) out.push_back(id(i, l));
  return out;
}

Assignment LevelMap::encode(std::span<const Label> j) const {
  if (j.size() != n_) throw InvalidInput("label point has wrong length");
  Assignment x(n_bool(), 0);
  for (std::size_t i = 0; i < n_; ++i) {
    if (j[i] < 0 || j[i] > k_) throw InvalidInput("label outside 0..k");
    for (int l = 1; l <= j[i]; ++l) x[id(i, l)] = 1;
  }
  return x;
}

Rational mixed_difference(const LabelFunction& v, std::span<const std::size_t> indices,
                          std::span<const Label> j) {
  std::vector<std::size_t> idx(indices.begin(), indices.end());
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  if (j.size() != v.n()) throw InvalidInput("label point has wrong length");
  for (auto i : idx) {
    if (i >= v.n()) throw InvalidInput("difference index out of range");
    if (j[i] < 1)
      throw InvalidInput("backward difference in variable " + std::to_string(i) +
                         " taken at level 0");
  }
  if (idx.size() > 30) throw Infeasible("mixed difference over too many indices");
  LabelPoint point(j.begin(), j.end());
  Rational total = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << idx.size()); ++s) {
    int lowered = 0;
    for (std::size_t b = 0; b < idx.size(); ++b) {
      bool down = (s >> b) & 1u;
      point[idx[b]] = j[idx[b]] - (down ? 1 : 0);
      lowered += down;
    }
    if (lowered % 2 == 0)
      total += v(point);
    else
      total -= v(point);
  }
  return total;
}

Expansion expand_function(const LabelFunction& v) {
  const std::size_t size = v.grid_size();
  if (size == 0 || size > kMaxExpansionGrid)
    throw Infeasible("grid too large for table expansion; expand term by term instead");
  const std::size_t n = v.n();
  const std::size_t base = static_cast<std::size_t>(v.k()) + 1;

  // Tabulate V once, then take differences on the table.
  std::vector<Rational> table(size);
  LabelPoint j(n, 0);
  for (std::size_t idx = 0; idx < size; ++idx) {
    table[idx] = v(j);
    for (std::size_t i = n; i-- > 0;) {
      if (++j[i] <= v.k()) break;
      j[i] = 0;
    }
  }
  std::vector<std::size_t> stride(n, 1);
  for (std::size_t i = n; i-- > 1;) stride[i - 1] = stride[i] * base;

  LevelMap map(n, v.k());
  std::vector<Term> terms;
  std::fill(j.begin(), j.end(), 0);
  for (std::size_t idx = 0; idx < size; ++idx) {
    std::vector<std::size_t> support_vars;
    for (std::size_t i = 0; i < n; ++i)
      if (j[i] > 0) support_vars.push_back(i);
    if (!support_vars.empty()) {
      Rational diff = 0;
      const std::size_t m = support_vars.size();
      for (std::uint64_t s = 0; s < (std::uint64_t{1} << m); ++s) {
        std::size_t at = idx;
        for (std::size_t b = 0; b < m; ++b)
          if ((s >> b) & 1u) at -= stride[support_vars[b]];
        if (std::popcount(s) % 2 == 0)
          diff += table[at];
        else
          diff -= table[at];
      }
      if (!is_zero(diff)) {
        Term t{{}, std::move(diff)};
        for (auto i : support_vars) t.vars.push_back(map.id(i, j[i]));
        terms.push_back(std::move(t));
      }
    }
    for (std::size_t i = n; i-- > 0;) {
      if (++j[i] <= v.k()) break;
      j[i] = 0;
    }
  }
  return {make_polynomial(std::move(terms), 0, map.n_bool()), map, table[0]};
}

Rational penalty_constant(const Polynomial& p) { return 1 + coefficient_mass(p); }

Polynomial apply_order_penalty(const Polynomial& p, const Rational& c, const LevelMap& map) {
  if (sgn(c) <= 0) throw InvalidInput("penalty constant must be positive");
  if (p.n_vars() != map.n_bool()) throw InvalidInput("level map does not match polynomial");
  std::vector<Term> terms;
  for (const auto& m : p.monomials()) terms.push_back({m.vars, m.coef});
  for (std::size_t i = 0; i < map.n(); ++i) {
    for (int l = 2; l <= map.k(); ++l) {
      terms.push_back({{map.id(i, l)}, c});
      terms.push_back({{map.id(i, l - 1), map.id(i, l)}, -c});
    }
  }
  return make_polynomial(std::move(terms), p.constant(), p.n_vars());
}

bool is_level_ordered(std::span<const std::uint8_t> x, const LevelMap& map) {
  if (x.size() != map.n_bool()) throw InvalidInput("assignment length mismatch");
  for (std::size_t i = 0; i < map.n(); ++i)
    for (int l = 2; l <= map.k(); ++l)
      if (x[map.id(i, l)] > x[map.id(i, l - 1)]) return false;
  return true;
}

LabelPoint decode_levels(std::span<const std::uint8_t> x, const LevelMap& map) {
  if (x.size() != map.n_bool()) throw InvalidInput("assignment length mismatch");
  LabelPoint j(map.n(), 0);
  for (std::size_t i = 0; i < map.n(); ++i) {
    for (int l = 1; l <= map.k(); ++l) {
      if (l > 1 && x[map.id(i, l)] > x[map.id(i, l - 1)])
        throw InvalidInput("levels of variable " + std::to_string(i) + " are not ordered");
      j[i] += x[map.id(i, l)];
    }
  }
  return j;
}

Rational EnergyModel::energy(std::span<const Label> labels) const {
  if (labels.size() != sites()) throw InvalidInput("labeling has wrong length");
  Rational total = 0;
  for (std::size_t s = 0; s < sites(); ++s) total += unary.at(s).at(labels[s]);
  Rational pair = 0;
  for (auto [a, b] : edges()) pair += g.at(std::abs(labels[a] - labels[b]));
  return total + lambda * pair;
}

std::vector<std::pair<std::size_t, std::size_t>> EnergyModel::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t y = 0; y < height; ++y)
    for (std::size_t x = 0; x + 1 < width; ++x) out.emplace_back(site(x, y), site(x + 1, y));
  for (std::size_t y = 0; y + 1 < height; ++y)
    for (std::size_t x = 0; x < width; ++x) out.emplace_back(site(x, y), site(x, y + 1));
  return out;
}

void validate(const EnergyModel& m) {
  if (m.width == 0 || m.height == 0) throw InvalidInput("energy model grid is empty");
  if (m.k < 1) throw InvalidInput("energy model needs k >= 1");
  const auto levels = static_cast<std::size_t>(m.k) + 1;
  if (m.domain.size() != levels)
    throw InvalidInput("domain must list k+1 = " + std::to_string(levels) + " values");
  OrderedDomain check(m.domain);
  if (m.unary.size() != m.sites())
    throw InvalidInput("unary table has " + std::to_string(m.unary.size()) + " sites, expected " +
                       std::to_string(m.sites()));
  for (std::size_t s = 0; s < m.unary.size(); ++s)
    if (m.unary[s].size() != levels)
      throw InvalidInput("site " + std::to_string(s) + " must list k+1 unary costs");
  if (m.g.size() != levels) throw InvalidInput("pairwise g must list g(0)..g(k)");
  if (sgn(m.lambda) < 0) throw InvalidInput("lambda must be nonnegative");
  // d -> g(|d|) must be convex on -k..k; at d = 0 this reads g(1) >= g(0).
  for (int d = 0; d < m.k; ++d) {
    const Rational& left = m.g[static_cast<std::size_t>(std::abs(d - 1))];
    Rational second = left - 2 * m.g[static_cast<std::size_t>(d)] + m.g[static_cast<std::size_t>(d + 1)];
    if (sgn(second) < 0)
      throw InvalidInput("pairwise g is not convex at d=" + std::to_string(d));
  }
}

namespace {

// Appends the terms of `local` (over local ids) renamed through `targets`.
void append_renamed(std::vector<Term>& terms, const Polynomial& local, const VarSet& targets) {
  for (const auto& m : local.monomials()) {
    Term t{{}, m.coef};
    for (VarId v : m.vars) t.vars.push_back(targets[v]);
    terms.push_back(std::move(t));
  }
}

}  // namespace

EnergyExpansion expand_energy_model(const EnergyModel& m) {
  validate(m);
  const int k = m.k;
  LevelMap map(m.sites(), k);
  std::vector<Term> terms;
  Rational constant = 0;

  for (std::size_t s = 0; s < m.sites(); ++s) {
    auto h = LabelFunction::from_table(1, k, m.unary[s]);
    auto e = expand_function(h);
    append_renamed(terms, e.polynomial, map.levels_of(s));
    constant += e.base_value;
  }

  auto edges = m.edges();
  if (!edges.empty() && sgn(m.lambda) != 0) {
    const auto& g = m.g;
    const Rational lambda = m.lambda;
    LabelFunction pair(2, k, [&g, lambda](std::span<const Label> j) {
      return lambda * g[static_cast<std::size_t>(std::abs(j[0] - j[1]))];
    });
    auto e = expand_function(pair);
    for (auto [a, b] : edges) {
      VarSet targets = map.levels_of(a);
      auto lb = map.levels_of(b);
      targets.insert(targets.end(), lb.begin(), lb.end());
      append_renamed(terms, e.polynomial, targets);
      constant += e.base_value;
    }
  }

  Polynomial tilde = make_polynomial(std::move(terms), 0, map.n_bool());
  Rational c = penalty_constant(tilde);
  Polynomial penalized = k > 1 ? apply_order_penalty(tilde, c, map) : tilde;
  std::vector<Monomial> ms(penalized.monomials().begin(), penalized.monomials().end());
  return {detail::from_canonical(std::move(ms), constant, map.n_bool()), map, c};
}

}  // namespace gibbscut

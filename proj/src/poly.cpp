#include "gibbscut/poly.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <string>

#include "gibbscut/error.hpp"

namespace gibbscut {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw InvalidInput("empty rational literal");
  try {
    auto dot = s.find('.');
    if (dot != std::string::npos) {
      if (s.find_first_of("/eE") != std::string::npos)
        throw InvalidInput("unsupported rational literal '" + s + "'");
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      if (digits.empty() || digits == "-" || digits == "+")
        throw InvalidInput("bad rational literal '" + s + "'");
      if (digits[0] == '+') digits.erase(0, 1);
      BigInt num(digits, 10);
      BigInt den = 1;
      for (std::size_t k = dot + 1; k < s.size(); ++k) den *= 10;
      Rational r(num, den);
      r.canonicalize();
      return r;
    }
    if (s[0] == '+') s.erase(0, 1);
    Rational r(s, 10);
    if (r.get_den() == 0) throw InvalidInput("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw InvalidInput("bad rational literal '" + s + "'");
  }
}

std::string to_string(const Rational& value) { return value.get_str(10); }

bool Monomial::contains(VarId v) const { return std::binary_search(vars.begin(), vars.end(), v); }

std::uint8_t PartialAssignment::value(VarId v) const {
  auto s = state_.at(v);
  if (s == kFree) throw InvalidInput("variable " + std::to_string(v) + " is not fixed");
  return static_cast<std::uint8_t>(s);
}

void PartialAssignment::set(VarId v, std::uint8_t bit) {
  if (v >= state_.size())
    throw InvalidInput("partial assignment index " + std::to_string(v) + " out of range");
  state_[v] = bit ? 1 : 0;
}

std::size_t PartialAssignment::fixed_count() const {
  return static_cast<std::size_t>(
      std::count_if(state_.begin(), state_.end(), [](auto s) { return s != kFree; }));
}

VarSet PartialAssignment::fixed_vars() const {
  VarSet out;
  for (VarId v = 0; v < state_.size(); ++v)
    if (state_[v] != kFree) out.push_back(v);
  return out;
}

VarSet PartialAssignment::free_vars() const {
  VarSet out;
  for (VarId v = 0; v < state_.size(); ++v)
    if (state_[v] == kFree) out.push_back(v);
  return out;
}

void PartialAssignment::apply_to(Assignment& x) const {
  if (x.size() != state_.size()) throw InvalidInput("assignment length mismatch");
  for (std::size_t v = 0; v < state_.size(); ++v)
    if (state_[v] != kFree) x[v] = static_cast<std::uint8_t>(state_[v]);
}

namespace detail {

Polynomial from_canonical(std::vector<Monomial> monomials, Rational constant, std::size_t n_vars) {
  Polynomial p(n_vars);
  p.monomials_ = std::move(monomials);
  p.constant_ = std::move(constant);
  return p;
}

}  // namespace detail

namespace {

bool var_less(const Monomial& a, const Monomial& b) { return a.vars < b.vars; }

// Sorts and merges monomials whose var lists are already strictly increasing.
Polynomial canonicalize(std::vector<Monomial> ms, Rational constant, std::size_t n_vars) {
  std::sort(ms.begin(), ms.end(), var_less);
  std::vector<Monomial> out;
  out.reserve(ms.size());
  for (auto& m : ms) {
    if (m.vars.empty()) {
      constant += m.coef;
      continue;
    }
    if (!out.empty() && out.back().vars == m.vars)
      out.back().coef += m.coef;
    else
      out.push_back(std::move(m));
  }
  std::erase_if(out, [](const Monomial& m) { return is_zero(m.coef); });
  return detail::from_canonical(std::move(out), std::move(constant), n_vars);
}

}  // namespace

std::size_t Polynomial::degree() const {
  std::size_t d = 0;
  for (const auto& m : monomials_) d = std::max(d, m.degree());
  return d;
}

Rational Polynomial::coefficient(const VarSet& vars) const {
  if (vars.empty()) return constant_;
  auto it = std::lower_bound(monomials_.begin(), monomials_.end(), vars,
                             [](const Monomial& m, const VarSet& v) { return m.vars < v; });
  if (it != monomials_.end() && it->vars == vars) return it->coef;
  return 0;
}

Rational Polynomial::evaluate(std::span<const std::uint8_t> x) const {
  if (x.size() != n_vars_)
    throw InvalidInput("assignment has length " + std::to_string(x.size()) + ", expected " +
                       std::to_string(n_vars_));
  Rational total = constant_;
  for (const auto& m : monomials_) {
    bool on = std::all_of(m.vars.begin(), m.vars.end(), [&](VarId v) { return x[v] != 0; });
    if (on) total += m.coef;
  }
  return total;
}

Polynomial make_polynomial(std::vector<Term> terms, Rational constant, std::size_t n_vars) {
  std::vector<Monomial> ms;
  ms.reserve(terms.size());
  for (auto& t : terms) {
    std::sort(t.vars.begin(), t.vars.end());
    if (std::adjacent_find(t.vars.begin(), t.vars.end()) != t.vars.end())
      throw InvalidInput("duplicate variable " + std::to_string(*std::adjacent_find(
                                                     t.vars.begin(), t.vars.end())) +
                         " inside one monomial");
    if (!t.vars.empty() && t.vars.back() >= n_vars)
      throw InvalidInput("variable index " + std::to_string(t.vars.back()) +
                         " out of range for " + std::to_string(n_vars) + " variables");
    ms.push_back({std::move(t.vars), std::move(t.coef)});
  }
  return canonicalize(std::move(ms), std::move(constant), n_vars);
}

Rational evaluate(const Polynomial& p, std::span<const std::uint8_t> x) { return p.evaluate(x); }

Polynomial fix_variables(const Polynomial& p, const PartialAssignment& part) {
  if (part.n_vars() != p.n_vars()) throw InvalidInput("partial assignment length mismatch");
  std::vector<Monomial> ms;
  Rational constant = p.constant();
  for (const auto& m : p.monomials()) {
    Monomial r;
    bool dead = false;
    for (VarId v : m.vars) {
      if (!part.is_fixed(v)) {
        r.vars.push_back(v);
      } else if (part.value(v) == 0) {
        dead = true;
        break;
      }
    }
    if (dead) continue;
    if (r.vars.empty()) {
      constant += m.coef;
      continue;
    }
    r.coef = m.coef;
    ms.push_back(std::move(r));
  }
  return canonicalize(std::move(ms), std::move(constant), p.n_vars());
}

std::pair<Polynomial, Polynomial> split_boundary(const Polynomial& p, const VarSet& d) {
  std::vector<bool> in_d(p.n_vars(), false);
  for (VarId v : d) {
    if (v >= p.n_vars()) throw InvalidInput("boundary set index out of range");
    in_d[v] = true;
  }
  std::vector<Monomial> touching, rest;
  for (const auto& m : p.monomials()) {
    bool hit = std::any_of(m.vars.begin(), m.vars.end(), [&](VarId v) { return in_d[v]; });
    (hit ? touching : rest).push_back(m);
  }
  // Subsequences of a canonical list stay canonical.
  return {detail::from_canonical(std::move(touching), 0, p.n_vars()),
          detail::from_canonical(std::move(rest), p.constant(), p.n_vars())};
}

PairDecomposition pair_decompose(const Polynomial& p, VarId i, VarId j) {
  if (i == j) throw InvalidInput("pair_decompose needs two distinct variables");
  if (i >= p.n_vars() || j >= p.n_vars()) throw InvalidInput("pair index out of range");
  std::vector<Monomial> base, pi, pj, pij;
  Rational ci = 0, cj = 0, cij = 0;
  for (const auto& m : p.monomials()) {
    bool has_i = m.contains(i), has_j = m.contains(j);
    if (!has_i && !has_j) {
      base.push_back(m);
      continue;
    }
    Monomial r;
    for (VarId v : m.vars)
      if (v != i && v != j) r.vars.push_back(v);
    r.coef = m.coef;
    if (r.vars.empty()) {
      (has_i && has_j ? cij : has_i ? ci : cj) += m.coef;
      continue;
    }
    (has_i && has_j ? pij : has_i ? pi : pj).push_back(std::move(r));
  }
  return {detail::from_canonical(std::move(base), p.constant(), p.n_vars()),
          canonicalize(std::move(pi), ci, p.n_vars()), canonicalize(std::move(pj), cj, p.n_vars()),
          canonicalize(std::move(pij), cij, p.n_vars())};
}

std::pair<Polynomial, Polynomial> nonlinear_part(const Polynomial& p) {
  std::vector<Monomial> q, l;
  for (const auto& m : p.monomials()) (m.degree() >= 2 ? q : l).push_back(m);
  return {detail::from_canonical(std::move(q), 0, p.n_vars()),
          detail::from_canonical(std::move(l), p.constant(), p.n_vars())};
}

std::pair<Polynomial, Rational> normalize_zero(const Polynomial& p) {
  std::vector<Monomial> ms(p.monomials().begin(), p.monomials().end());
  return {detail::from_canonical(std::move(ms), 0, p.n_vars()), p.constant()};
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Monomial> ms;
  ms.reserve(a.size() + b.size());
  ms.insert(ms.end(), a.monomials().begin(), a.monomials().end());
  ms.insert(ms.end(), b.monomials().begin(), b.monomials().end());
  return canonicalize(std::move(ms), a.constant() + b.constant(),
                      std::max(a.n_vars(), b.n_vars()));
}

Polynomial operator*(const Rational& s, const Polynomial& p) {
  if (is_zero(s)) return Polynomial(p.n_vars());
  std::vector<Monomial> ms(p.monomials().begin(), p.monomials().end());
  for (auto& m : ms) m.coef *= s;
  return detail::from_canonical(std::move(ms), s * p.constant(), p.n_vars());
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + Rational(-1) * b; }

Polynomial compact(const Polynomial& p, const VarSet& vars) {
  std::vector<std::int64_t> local(p.n_vars(), -1);
  for (std::size_t k = 0; k < vars.size(); ++k) {
    if (vars[k] >= p.n_vars()) throw InvalidInput("compact: variable out of range");
    local[vars[k]] = static_cast<std::int64_t>(k);
  }
  std::vector<Monomial> ms;
  ms.reserve(p.size());
  for (const auto& m : p.monomials()) {
    Monomial r;
    r.coef = m.coef;
    for (VarId v : m.vars) {
      if (local[v] < 0)
        throw InvalidInput("compact: variable " + std::to_string(v) + " outside target set");
      r.vars.push_back(static_cast<VarId>(local[v]));
    }
    std::sort(r.vars.begin(), r.vars.end());
    ms.push_back(std::move(r));
  }
  return canonicalize(std::move(ms), p.constant(), vars.size());
}

Polynomial embed(const Polynomial& p, const VarSet& targets, std::size_t n_vars) {
  if (targets.size() != p.n_vars()) throw InvalidInput("embed: target list length mismatch");
  std::vector<Term> terms;
  terms.reserve(p.size());
  for (const auto& m : p.monomials()) {
    Term t{{}, m.coef};
    for (VarId v : m.vars) t.vars.push_back(targets[v]);
    terms.push_back(std::move(t));
  }
  return make_polynomial(std::move(terms), p.constant(), n_vars);
}

VarSet support(const Polynomial& p) {
  std::vector<bool> seen(p.n_vars(), false);
  for (const auto& m : p.monomials())
    for (VarId v : m.vars) seen[v] = true;
  VarSet out;
  for (VarId v = 0; v < p.n_vars(); ++v)
    if (seen[v]) out.push_back(v);
  return out;
}

Rational coefficient_mass(const Polynomial& p) {
  Rational total = 0;
  for (const auto& m : p.monomials()) total += abs(m.coef);
  return total;
}

DenseEvaluator::DenseEvaluator(const Polynomial& p) : n_vars_(p.n_vars()) {
  if (n_vars_ > 64) throw Infeasible("dense evaluation supports at most 64 variables");
  for (const auto& m : p.monomials()) scale_ = lcm(scale_, BigInt(m.coef.get_den()));
  scale_ = lcm(scale_, BigInt(p.constant().get_den()));

  BigInt bound = abs(BigInt(p.constant().get_num() * (scale_ / p.constant().get_den())));
  big_const_ = p.constant().get_num() * (scale_ / p.constant().get_den());
  for (const auto& m : p.monomials()) {
    std::uint64_t mask = 0;
    for (VarId v : m.vars) mask |= std::uint64_t{1} << v;
    masks_.push_back(mask);
    BigInt c = m.coef.get_num() * (scale_ / m.coef.get_den());
    bound += abs(c);
    big_.push_back(std::move(c));
  }
  // Partial sums never exceed `bound` in magnitude.
  static const BigInt limit = BigInt(std::numeric_limits<std::int64_t>::max() / 4);
  fast_ = bound <= limit;
  if (fast_) {
    small_const_ = big_const_.get_si();
    for (const auto& c : big_) small_.push_back(c.get_si());
  }
}

BigInt DenseEvaluator::scaled_value(std::uint64_t mask) const {
  if (fast_) return BigInt(static_cast<long>(scaled_value_int64(mask)));
  BigInt total = big_const_;
  for (std::size_t k = 0; k < masks_.size(); ++k)
    if ((mask & masks_[k]) == masks_[k]) total += big_[k];
  return total;
}

std::int64_t DenseEvaluator::scaled_value_int64(std::uint64_t mask) const {
  std::int64_t total = small_const_;
  for (std::size_t k = 0; k < masks_.size(); ++k)
    if ((mask & masks_[k]) == masks_[k]) total += small_[k];
  return total;
}

Rational DenseEvaluator::value(std::uint64_t mask) const {
  Rational r(scaled_value(mask), scale_);
  r.canonicalize();
  return r;
}

std::vector<std::int64_t> DenseEvaluator::table_int64() const {
  if (!fast_) throw Infeasible("coefficients too large for the 64-bit table");
  if (n_vars_ > 30) throw Infeasible("value table too large");
  std::size_t count = std::size_t{1} << n_vars_;
  std::vector<std::int64_t> table(count, small_const_);
  // Each monomial adds its coefficient to every superset of its mask.
  for (std::size_t k = 0; k < masks_.size(); ++k) {
    std::uint64_t m = masks_[k];
    std::uint64_t rest = (count - 1) & ~m;
    std::uint64_t sub = rest;
    while (true) {
      table[sub | m] += small_[k];
      if (sub == 0) break;
      sub = (sub - 1) & rest;
    }
  }
  return table;
}

Assignment bits_of(std::uint64_t mask, std::size_t n) {
  Assignment x(n, 0);
  for (std::size_t v = 0; v < n; ++v) x[v] = static_cast<std::uint8_t>((mask >> v) & 1u);
  return x;
}

std::uint64_t mask_of(std::span<const std::uint8_t> x) {
  if (x.size() > 64) throw Infeasible("mask_of supports at most 64 variables");
  std::uint64_t mask = 0;
  for (std::size_t v = 0; v < x.size(); ++v)
    if (x[v]) mask |= std::uint64_t{1} << v;
  return mask;
}

}  // namespace gibbscut

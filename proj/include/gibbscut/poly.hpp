#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gibbscut/rational.hpp"

namespace gibbscut {

using VarId = std::uint32_t;

/// Strictly increasing list of variable ids.
using VarSet = std::vector<VarId>;

/// One bit per variable, indexed by VarId.
using Assignment = std::vector<std::uint8_t>;

struct Monomial {
  VarSet vars;
  Rational coef;

  std::size_t degree() const { return vars.size(); }
  bool contains(VarId v) const;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Raw input term for make_polynomial; vars may be in any order.
struct Term {
  VarSet vars;
  Rational coef;
};

/// Values fixed on a subset of the variables. Unfixed entries are free.
class PartialAssignment {
 public:
  PartialAssignment() = default;
  explicit PartialAssignment(std::size_t n_vars) : state_(n_vars, kFree) {}

  std::size_t n_vars() const { return state_.size(); }
  bool is_fixed(VarId v) const { return state_.at(v) != kFree; }
  std::uint8_t value(VarId v) const;
  void set(VarId v, std::uint8_t bit);
  void clear(VarId v) { state_.at(v) = kFree; }
  std::size_t fixed_count() const;
  VarSet fixed_vars() const;
  VarSet free_vars() const;

  /// Fills the free coordinates of `x` with the fixed values.
  void apply_to(Assignment& x) const;

 private:
  static constexpr std::int8_t kFree = -1;
  std::vector<std::int8_t> state_;
};

class Polynomial;

namespace detail {
// Wraps monomials already in canonical order without re-sorting.
Polynomial from_canonical(std::vector<Monomial> monomials, Rational constant, std::size_t n_vars);
}  // namespace detail

/// Multilinear pseudo-Boolean polynomial in canonical form: monomials sorted
/// lexicographically by their variable lists, no duplicates, no zero
/// coefficients, every monomial of degree >= 1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::size_t n_vars) : n_vars_(n_vars) {}

  std::size_t n_vars() const { return n_vars_; }
  const Rational& constant() const { return constant_; }
  std::span<const Monomial> monomials() const { return monomials_; }
  std::size_t size() const { return monomials_.size(); }
  bool is_zero() const { return monomials_.empty() && gibbscut::is_zero(constant_); }
  std::size_t degree() const;

  /// Coefficient of the monomial over exactly `vars` (sorted); 0 if absent.
  Rational coefficient(const VarSet& vars) const;

  Rational evaluate(std::span<const std::uint8_t> x) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  friend Polynomial make_polynomial(std::vector<Term>, Rational, std::size_t);
  friend Polynomial detail::from_canonical(std::vector<Monomial>, Rational, std::size_t);

  std::size_t n_vars_ = 0;
  Rational constant_ = 0;
  std::vector<Monomial> monomials_;
};

/// Canonicalizes terms: sorts each var-set, merges duplicates, drops zeros.
/// Throws InvalidInput on an out-of-range index or a repeated variable.
Polynomial make_polynomial(std::vector<Term> terms, Rational constant, std::size_t n_vars);

Rational evaluate(const Polynomial& p, std::span<const std::uint8_t> x);

/// Substitutes the fixed values. Variable ids are preserved, so the result
/// has the same n_vars and simply no longer depends on the fixed variables.
Polynomial fix_variables(const Polynomial& p, const PartialAssignment& part);

/// (P{D}, rest): monomials touching D, and everything else (incl. constant).
std::pair<Polynomial, Polynomial> split_boundary(const Polynomial& p, const VarSet& d);

struct PairDecomposition {
  Polynomial base;
  Polynomial p_i;
  Polynomial p_j;
  Polynomial p_ij;
};

/// P = base + x_i p_i + x_j p_j + x_i x_j p_ij with none of the four parts
/// depending on x_i or x_j.
PairDecomposition pair_decompose(const Polynomial& p, VarId i, VarId j);

/// (Q, L): monomials of degree >= 2, and the linear part plus constant.
std::pair<Polynomial, Polynomial> nonlinear_part(const Polynomial& p);

/// Returns P - P(0) together with the removed constant.
std::pair<Polynomial, Rational> normalize_zero(const Polynomial& p);

Polynomial operator+(const Polynomial& a, const Polynomial& b);
Polynomial operator-(const Polynomial& a, const Polynomial& b);
Polynomial operator*(const Rational& s, const Polynomial& p);

/// Renames variables: `vars[k]` becomes variable k of the result. The support
/// of `p` must lie inside `vars`.
Polynomial compact(const Polynomial& p, const VarSet& vars);

/// Renames variable k of `p` to `targets[k]` in a polynomial over n_vars.
Polynomial embed(const Polynomial& p, const VarSet& targets, std::size_t n_vars);

/// Variables appearing in at least one monomial, ascending.
VarSet support(const Polynomial& p);

/// Sum of |coef| over all monomials (constant excluded).
Rational coefficient_mass(const Polynomial& p);

/// Integer-scaled copy of a polynomial on at most 64 variables, evaluated with
/// bitmasks. value(mask) * scale equals evaluate(p, bits(mask)) * scale
/// exactly; the 64-bit path is taken only when no intermediate sum can
/// overflow.
class DenseEvaluator {
 public:
  explicit DenseEvaluator(const Polynomial& p);

  std::size_t n_vars() const { return n_vars_; }
  bool uses_int64() const { return fast_; }
  const BigInt& scale() const { return scale_; }

  /// Scaled value as a big integer.
  BigInt scaled_value(std::uint64_t mask) const;
  /// Scaled value; valid only when uses_int64().
  std::int64_t scaled_value_int64(std::uint64_t mask) const;
  Rational value(std::uint64_t mask) const;

  /// Scaled values for every mask in [0, 2^n); requires uses_int64().
  std::vector<std::int64_t> table_int64() const;

 private:
  std::size_t n_vars_ = 0;
  BigInt scale_ = 1;
  bool fast_ = false;
  std::vector<std::uint64_t> masks_;
  std::vector<BigInt> big_;
  std::vector<std::int64_t> small_;
  BigInt big_const_;
  std::int64_t small_const_ = 0;
};

Assignment bits_of(std::uint64_t mask, std::size_t n);
std::uint64_t mask_of(std::span<const std::uint8_t> x);

}  // namespace gibbscut

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "gibbscut/poly.hpp"

namespace gibbscut {

using Label = int;
using LabelPoint = std::vector<Label>;

/// Label values r_0 <= r_1 <= ... <= r_k. Only the model layer looks at them;
/// the solver works with level indices.
class OrderedDomain {
 public:
  explicit OrderedDomain(std::vector<Rational> values);

  std::size_t top() const { return values_.size() - 1; }
  const Rational& operator[](std::size_t l) const { return values_.at(l); }
  std::span<const Rational> values() const { return values_; }

  /// Evenly spaced integer representatives round(l * max_value / k).
  static OrderedDomain uniform(int max_value, int k);

 private:
  std::vector<Rational> values_;
};

/// A function on the grid {0..k}^n, backed by a full table or a callback.
class LabelFunction {
 public:
  using Oracle = std::function<Rational(std::span<const Label>)>;

  LabelFunction(std::size_t n, int k, Oracle oracle);

  /// Row-major table: the first variable is the most significant digit.
  static LabelFunction from_table(std::size_t n, int k, std::vector<Rational> values);

  std::size_t n() const { return n_; }
  int k() const { return k_; }
  /// (k+1)^n, or 0 if it does not fit in size_t.
  std::size_t grid_size() const;

  Rational operator()(std::span<const Label> j) const;

  /// Row-major position of j in the table layout.
  std::size_t index_of(std::span<const Label> j) const;

 private:
  std::size_t n_;
  int k_;
  Oracle oracle_;
};

/// Boolean id of level l (1..k) of variable i is i*k + (l-1).
class LevelMap {
 public:
  LevelMap(std::size_t n, int k);

  std::size_t n() const { return n_; }
  int k() const { return k_; }
  std::size_t n_bool() const { return n_ * static_cast<std::size_t>(k_); }

  VarId id(std::size_t i, int level) const;
  /// Inverse of id(): (variable, level).
  std::pair<std::size_t, int> level_of(VarId v) const;
  /// Boolean variables of original variable i, levels 1..k.
  VarSet levels_of(std::size_t i) const;

  /// x_i(l) = 1 for l <= j_i.
  Assignment encode(std::span<const Label> j) const;

 private:
  std::size_t n_;
  int k_;
};

/// Backward mixed difference of V over the index set L at point j.
/// Throws InvalidInput when some index in L sits at level 0.
Rational mixed_difference(const LabelFunction& v, std::span<const std::size_t> indices,
                          std::span<const Label> j);

struct Expansion {
  Polynomial polynomial;  // constant term is 0
  LevelMap map;
  Rational base_value;  // V(0,...,0)
};

/// Largest grid expand_function will enumerate.
inline constexpr std::size_t kMaxExpansionGrid = std::size_t{1} << 22;

/// Ordered-Boolean expansion: the coefficient of prod x_{i}(j_i) over the
/// support of a grid point j is the mixed difference of V at j.
Expansion expand_function(const LabelFunction& v);

/// 1 + sum |coef|.
Rational penalty_constant(const Polynomial& p);

/// Adds C * sum_i sum_{l>=2} (x_i(l) - x_i(l) x_i(l-1)).
Polynomial apply_order_penalty(const Polynomial& p, const Rational& c, const LevelMap& map);

/// True when x_i(1) >= x_i(2) >= ... for every variable.
bool is_level_ordered(std::span<const std::uint8_t> x, const LevelMap& map);

/// j_i = number of set levels. Throws InvalidInput on unordered levels.
LabelPoint decode_levels(std::span<const std::uint8_t> x, const LevelMap& map);

/// Grid MRF energy
///   U(j) = sum_sites h_site(j_site) + lambda * sum_{4-neighbours} g(|j_a - j_b|).
struct EnergyModel {
  std::size_t width = 0;
  std::size_t height = 0;
  int k = 1;
  std::vector<Rational> domain;              // r_0..r_k
  std::vector<std::vector<Rational>> unary;  // per site, k+1 costs
  std::vector<Rational> g;                   // g(0)..g(k)
  Rational lambda = 0;

  std::size_t sites() const { return width * height; }
  std::size_t site(std::size_t x, std::size_t y) const { return y * width + x; }
  Rational energy(std::span<const Label> labels) const;
  /// Horizontal then vertical neighbour pairs, row-major.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
};

/// Checks shapes, label ranges, lambda >= 0 and convexity of d -> g(|d|)
/// over -k..k. Throws InvalidInput naming the offending d.
void validate(const EnergyModel& m);

struct EnergyExpansion {
  Polynomial polynomial;  // P_V; includes the constant U(0), so P_V(encode(j)) = U(j)
  LevelMap map;
  Rational penalty;  // C
};

/// Expands each unary and pairwise term separately, sums them, and adds one
/// shared ordering penalty.
EnergyExpansion expand_energy_model(const EnergyModel& m);

}  // namespace gibbscut

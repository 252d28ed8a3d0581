#include "gibbscut/msfm.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <thread>

#include "gibbscut/error.hpp"

namespace gibbscut {

PartitionPlan make_partition(const VarSet& free_vars, std::size_t size) {
  if (size == 0) throw InvalidInput("partition block size must be >= 1");
  if (free_vars.empty()) throw InvalidInput("cannot partition an empty variable set");
  PartitionPlan plan{{}, PartitionStrategy::Chunks, size, 0};
  for (std::size_t k = 0; k < free_vars.size(); k += size) {
    auto end = std::min(free_vars.size(), k + size);
    plan.blocks.emplace_back(free_vars.begin() + static_cast<std::ptrdiff_t>(k),
                             free_vars.begin() + static_cast<std::ptrdiff_t>(end));
  }
  return plan;
}

PartitionPlan make_grid_partition(const VarSet& free_vars, std::size_t width, std::size_t height,
                                  std::size_t levels_per_site, std::size_t tile_w,
                                  std::size_t tile_h) {
  if (tile_w == 0 || tile_h == 0 || levels_per_site == 0)
    throw InvalidInput("tile sizes must be >= 1");
  if (free_vars.empty()) throw InvalidInput("cannot partition an empty variable set");
  const std::size_t tiles_x = (width + tile_w - 1) / tile_w;
  std::map<std::size_t, VarSet> tiles;
  for (VarId v : free_vars) {
    std::size_t site = v / levels_per_site;
    if (site >= width * height) throw InvalidInput("variable outside the lattice");
    std::size_t x = site % width, y = site / width;
    tiles[(y / tile_h) * tiles_x + x / tile_w].push_back(v);
  }
  PartitionPlan plan{{}, PartitionStrategy::GridTiles, tile_w, tile_h};
  for (auto& [id, vars] : tiles) plan.blocks.push_back(std::move(vars));
  return plan;
}

namespace {

// Builds block subproblems P{D}(x_D, boundary) without scanning all of P.
class BlockRestrictor {
 public:
  explicit BlockRestrictor(const Polynomial& p) : p_(p), touching_(p.n_vars()) {
    auto ms = p.monomials();
    for (std::size_t k = 0; k < ms.size(); ++k)
      for (VarId v : ms[k].vars) touching_[v].push_back(k);
  }

  // Variables outside `block` take their value from `fixed`, or `fill` when free.
  Polynomial restrict(const VarSet& block, const PartialAssignment& fixed, std::uint8_t fill) const {
    std::vector<std::size_t> ids;
    for (VarId v : block) ids.insert(ids.end(), touching_[v].begin(), touching_[v].end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    auto local_of = [&](VarId v) -> std::ptrdiff_t {
      auto it = std::lower_bound(block.begin(), block.end(), v);
      return it != block.end() && *it == v ? it - block.begin() : -1;
    };
    std::vector<Term> terms;
    Rational constant = 0;
    auto ms = p_.monomials();
    for (auto k : ids) {
      const Monomial& m = ms[k];
      Term t{{}, m.coef};
      bool alive = true;
      for (VarId v : m.vars) {
        auto local = local_of(v);
        if (local >= 0) {
          t.vars.push_back(static_cast<VarId>(local));
        } else if ((fixed.is_fixed(v) ? fixed.value(v) : fill) == 0) {
          alive = false;
          break;
        }
      }
      if (!alive) continue;
      terms.push_back(std::move(t));
    }
    return make_polynomial(std::move(terms), constant, block.size());
  }

 private:
  const Polynomial& p_;
  std::vector<std::vector<std::size_t>> touching_;
};

std::pair<MinimizerReport, std::string> base_solve(const Polynomial& p, const BruteCaps& caps) {
  if (in_p_suf(p, caps, false).verdict) return {minimize_via_cut(p), "cut"};
  if (p.n_vars() <= caps.full) return {brute_minimize(p, caps), "brute"};
  throw Infeasible("no base solver for a subproblem with " + std::to_string(p.n_vars()) +
                   " variables outside P_suf (brute-force cap " + std::to_string(caps.full) + ")");
}

struct BlockOutcome {
  VarSet zeros;
  VarSet ones;
};

BlockOutcome solve_block(const BlockRestrictor& r, const VarSet& block,
                         const PartialAssignment& fixed, const BruteCaps& caps) {
  auto [upper, upper_name] = base_solve(r.restrict(block, fixed, 1), caps);
  auto [lower, lower_name] = base_solve(r.restrict(block, fixed, 0), caps);
  if (!upper.extremes_exact || !lower.extremes_exact)
    throw Infeasible("block subproblem has no extreme minimizers; input is not submodular");
  BlockOutcome out;
  for (std::size_t k = 0; k < block.size(); ++k) {
    if (lower.minimal[k] > upper.maximal[k])
      throw Infeasible("boundary sandwich violated at variable " + std::to_string(block[k]) +
                       "; input is not submodular");
    if (upper.maximal[k] == 0) out.zeros.push_back(block[k]);
    if (lower.minimal[k] == 1) out.ones.push_back(block[k]);
  }
  return out;
}

}  // namespace

namespace {

LevelPassResult run_level(const Polynomial& p, const BlockRestrictor& restrictor,
                          const PartitionPlan& plan, const PartialAssignment& fixed,
                          const MsfmConfig& cfg) {
  if (fixed.n_vars() != p.n_vars()) throw InvalidInput("fixed assignment length mismatch");
  std::vector<bool> seen(p.n_vars(), false);
  for (const auto& block : plan.blocks) {
    for (std::size_t k = 0; k < block.size(); ++k) {
      VarId v = block[k];
      if (v >= p.n_vars()) throw InvalidInput("block variable out of range");
      if (k > 0 && block[k - 1] >= v) throw InvalidInput("block variables must be increasing");
      if (fixed.is_fixed(v)) throw InvalidInput("block holds an already fixed variable");
      if (seen[v]) throw InvalidInput("blocks overlap at variable " + std::to_string(v));
      seen[v] = true;
    }
  }

  const std::size_t count = plan.blocks.size();
  std::vector<BlockOutcome> outcomes(count);
  std::vector<std::exception_ptr> errors(count);
  auto work = [&](std::size_t b) {
    try {
      outcomes[b] = solve_block(restrictor, plan.blocks[b], fixed, cfg.caps);
    } catch (...) {
      errors[b] = std::current_exception();
    }
  };
  const std::size_t threads = std::min(cfg.threads, count);
  if (threads > 1) {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t b = next++; b < count; b = next++) work(b);
      });
  } else {
    for (std::size_t b = 0; b < count; ++b) work(b);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  LevelPassResult result{PartialAssignment(p.n_vars()), {}};
  result.entry.blocks = plan.blocks;
  for (auto& o : outcomes) {
    for (VarId v : o.zeros) result.newly_fixed.set(v, 0);
    for (VarId v : o.ones) result.newly_fixed.set(v, 1);
    result.entry.fixed_zero.push_back(std::move(o.zeros));
    result.entry.fixed_one.push_back(std::move(o.ones));
  }
  VarSet cumulative = fixed.fixed_vars();
  VarSet added = result.newly_fixed.fixed_vars();
  cumulative.insert(cumulative.end(), added.begin(), added.end());
  std::sort(cumulative.begin(), cumulative.end());
  result.entry.cumulative_fixed = std::move(cumulative);
  return result;
}

PartitionPlan plan_for_level(const VarSet& free_vars, const MsfmConfig& cfg, std::size_t level) {
  if (cfg.block_sizes.empty()) throw InvalidInput("MSFM needs at least one block size");
  std::size_t size = cfg.block_sizes[std::min(level, cfg.block_sizes.size() - 1)];
  if (cfg.strategy == PartitionStrategy::GridTiles) {
    if (!cfg.grid) throw InvalidInput("grid tiling needs the lattice shape");
    return make_grid_partition(free_vars, cfg.grid->width, cfg.grid->height,
                               cfg.grid->levels_per_site, size, size);
  }
  return make_partition(free_vars, size);
}

}  // namespace

LevelPassResult level_pass(const Polynomial& p, const PartitionPlan& plan,
                           const PartialAssignment& fixed, const MsfmConfig& cfg) {
  BlockRestrictor restrictor(p);
  return run_level(p, restrictor, plan, fixed, cfg);
}

MsfmResult msfm_minimize(const Polynomial& p, const MsfmConfig& cfg) {
  if (cfg.max_levels < 1) throw InvalidInput("MSFM needs at least one level");
  const std::size_t n = p.n_vars();
  MsfmResult result;
  if (p.size() == 0) {
    result.report = {p.constant(), Assignment(n, 0), Assignment(n, 1), true};
    return result;
  }
  if (cfg.verify_submodular && !is_submodular_pairwise(p, cfg.caps).verdict)
    throw Infeasible("MSFM requires a submodular polynomial");

  BlockRestrictor restrictor(p);
  PartialAssignment fixed(n);
  for (std::size_t level = 0; level < cfg.max_levels; ++level) {
    VarSet free_vars = fixed.free_vars();
    if (free_vars.empty()) break;
    PartitionPlan plan = plan_for_level(free_vars, cfg, level);
    LevelPassResult pass = run_level(p, restrictor, plan, fixed, cfg);
    std::size_t added = pass.newly_fixed.fixed_count();
    for (VarId v : pass.newly_fixed.fixed_vars()) fixed.set(v, pass.newly_fixed.value(v));
    result.trace.levels.push_back(std::move(pass.entry));
    if (added == 0) break;
  }

  VarSet free_vars = fixed.free_vars();
  Assignment minimal(n, 0);
  fixed.apply_to(minimal);
  Assignment maximal = minimal;
  result.trace.residual_vars = free_vars.size();
  if (free_vars.empty()) {
    result.report = {p.evaluate(minimal), minimal, maximal, true};
    return result;
  }
  Polynomial residual = compact(fix_variables(p, fixed), free_vars);
  auto [report, name] = base_solve(residual, cfg.caps);
  result.trace.fallback = true;
  result.trace.base_solver = name;
  for (std::size_t k = 0; k < free_vars.size(); ++k) {
    minimal[free_vars[k]] = report.minimal[k];
    maximal[free_vars[k]] = report.maximal[k];
  }
  result.report = {report.min_value, minimal, maximal, report.extremes_exact};
  return result;
}

}  // namespace gibbscut

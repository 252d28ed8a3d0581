#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gibbscut/graphcut.hpp"
#include "gibbscut/poly.hpp"
#include "gibbscut/submod.hpp"

namespace gibbscut {

enum class PartitionStrategy { Chunks, GridTiles };

/// Disjoint blocks covering the free variables.
struct PartitionPlan {
  std::vector<VarSet> blocks;
  PartitionStrategy strategy = PartitionStrategy::Chunks;
  std::size_t size = 0;       // chunk length, or tile width
  std::size_t tile_height = 0;  // grid tiles only
};

/// Consecutive runs of `size` free variables.
PartitionPlan make_partition(const VarSet& free_vars, std::size_t size);

/// Sites of a width x height lattice grouped into tile_w x tile_h rectangles;
/// each block holds the free Boolean variables of its sites. Variable v
/// belongs to site v / levels_per_site.
PartitionPlan make_grid_partition(const VarSet& free_vars, std::size_t width, std::size_t height,
                                  std::size_t levels_per_site, std::size_t tile_w,
                                  std::size_t tile_h);

struct GridShape {
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t levels_per_site = 1;
};

struct MsfmConfig {
  std::size_t max_levels = 3;
  PartitionStrategy strategy = PartitionStrategy::Chunks;
  /// Block size per level (chunk length or square tile side); the last entry
  /// repeats for later levels.
  std::vector<std::size_t> block_sizes{8, 16, 32};
  std::optional<GridShape> grid;  // required for GridTiles
  BruteCaps caps;
  std::size_t threads = 1;
  /// Check that the input is submodular before starting (needs the pairwise
  /// check to fit in the caps).
  bool verify_submodular = false;
};

struct LevelEntry {
  std::vector<VarSet> blocks;
  std::vector<VarSet> fixed_zero;  // B_i(m), per block
  std::vector<VarSet> fixed_one;   // W_i(m), per block
  VarSet cumulative_fixed;         // R(m)
};

struct LevelTrace {
  std::vector<LevelEntry> levels;
  bool fallback = false;        // base solver ran on a nonempty residual
  std::size_t residual_vars = 0;
  std::string base_solver;      // "cut", "brute", or "" when nothing was left
};

struct LevelPassResult {
  PartialAssignment newly_fixed;
  LevelEntry entry;
};

/// One level: for every block D, take the maximal minimizer of P{D} with the
/// other free variables set to one and the minimal minimizer with them set to
/// zero. Zeros of the first and ones of the second are fixed. `fixed` keeps
/// its values on the boundary throughout.
LevelPassResult level_pass(const Polynomial& p, const PartitionPlan& plan,
                           const PartialAssignment& fixed, const MsfmConfig& cfg = {});

struct MsfmResult {
  MinimizerReport report;
  LevelTrace trace;
};

MsfmResult msfm_minimize(const Polynomial& p, const MsfmConfig& cfg = {});

}  // namespace gibbscut

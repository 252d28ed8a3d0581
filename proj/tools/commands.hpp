#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gibbscut/denoise.hpp"

namespace gibbscut::cli {

struct ExpandArgs {
  std::string model;
  std::string output;  // polynomial file; empty prints everything to stdout
  std::string map_output;
};

struct MinimizeArgs {
  std::string polynomial;
  std::string method = "auto";
  bool trace = false;
  bool verify = false;
  bool assume_submodular = false;
  std::size_t levels = 3;
  std::vector<std::size_t> block_sizes{8, 16, 32};
  std::string grid;  // "WxHxK" switches msfm to lattice tiles
  std::size_t threads = 1;
};

struct GadgetDumpArgs {
  std::string polynomial;
  std::string output;
};

struct DenoiseArgs {
  std::string input;
  std::string output;
  int levels = 4;
  std::string lambda = "1";
  std::string data = "absolute";
  std::string smoothness = "linear";
  std::string method = "cut";
  std::string format = "raw";
  std::string crop;  // "X,Y,W,H"
  std::size_t tile = 8;
};

struct BenchArgs {
  std::string suite;
  std::string output;  // CSV path; empty writes to stdout
  std::uint64_t seed = 0;
  std::size_t threads = 1;
};

int run_expand(const ExpandArgs& args);
int run_check(const std::string& polynomial);
int run_minimize(const MinimizeArgs& args);
/// Same as minimize with method msfm and the trace always included.
int run_msfm(MinimizeArgs args);
int run_gadget_dump(const GadgetDumpArgs& args);
int run_denoise(const DenoiseArgs& args);
int run_bench(const BenchArgs& args);

}  // namespace gibbscut::cli

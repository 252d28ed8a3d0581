#include <cstdio>
#include <exception>

#include "CLI11.hpp"

#include "commands.hpp"
#include "gibbscut/error.hpp"

namespace {

enum ExitCode { kOk = 0, kInfeasible = 1, kInvalidInput = 2, kVerification = 3 };

void add_msfm_flags(CLI::App* cmd, gibbscut::cli::MinimizeArgs& a) {
  cmd->add_option("--levels", a.levels, "Number of fixing levels")->check(CLI::PositiveNumber);
  cmd->add_option("--block-sizes", a.block_sizes, "Block size per level; the last one repeats")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  cmd->add_option("--grid", a.grid, "Lattice shape WxHxK: group blocks as square tiles of sites");
  cmd->add_option("--threads", a.threads, "Worker threads per level")->check(CLI::PositiveNumber);
  cmd->add_flag("--assume-submodular", a.assume_submodular,
                "Skip the submodularity check that guards the fixing levels");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace gibbscut::cli;
  CLI::App app{"Exact minimization of submodular pseudo-Boolean and multi-label energies"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", "gibbscut 0.1.0");

  ExpandArgs expand;
  auto* expand_cmd = app.add_subcommand("expand", "Expand a model or table into a penalized Boolean polynomial");
  expand_cmd->add_option("model", expand.model, "Energy model or label-function table (JSON)")->required();
  expand_cmd->add_option("-o,--output", expand.output, "Polynomial output file");
  expand_cmd->add_option("--map", expand.map_output, "Level map output file");

  std::string check_file;
  auto* check_cmd = app.add_subcommand("check", "Report submodularity and graph-representability");
  check_cmd->add_option("polynomial", check_file, "Polynomial JSON file")->required();

  MinimizeArgs minimize;
  auto* minimize_cmd = app.add_subcommand("minimize", "Minimize a polynomial exactly");
  minimize_cmd->add_option("polynomial", minimize.polynomial, "Polynomial JSON file")->required();
  minimize_cmd->add_option("--method", minimize.method, "auto, brute, cut or msfm")
      ->check(CLI::IsMember({"auto", "brute", "cut", "msfm"}));
  minimize_cmd->add_flag("--trace", minimize.trace, "Include the msfm level trace");
  minimize_cmd->add_flag("--verify", minimize.verify, "Cross-check against every other applicable method");
  add_msfm_flags(minimize_cmd, minimize);

  MinimizeArgs msfm;
  msfm.method = "msfm";
  auto* msfm_cmd = app.add_subcommand("msfm", "Run the multilevel fixing minimizer and print its trace");
  msfm_cmd->add_option("polynomial", msfm.polynomial, "Polynomial JSON file")->required();
  msfm_cmd->add_flag("--verify", msfm.verify, "Cross-check against every other applicable method");
  add_msfm_flags(msfm_cmd, msfm);

  GadgetDumpArgs dump;
  auto* dump_cmd = app.add_subcommand("gadget-dump", "Write the flow network of a polynomial in DIMACS format");
  dump_cmd->add_option("polynomial", dump.polynomial, "Polynomial JSON file")->required();
  dump_cmd->add_option("-o,--output", dump.output, "DIMACS output file (default: stdout)");

  DenoiseArgs denoise;
  auto* denoise_cmd = app.add_subcommand("denoise", "Restore a gray-scale PGM image");
  denoise_cmd->add_option("input", denoise.input, "Input PGM (P2 or P5)")->required();
  denoise_cmd->add_option("output", denoise.output, "Output PGM")->required();
  denoise_cmd->add_option("--levels", denoise.levels, "Number of gray levels k+1")->check(CLI::Range(2, 16));
  denoise_cmd->add_option("--lambda", denoise.lambda, "Smoothness weight, e.g. 40 or 5/2");
  denoise_cmd->add_option("--data", denoise.data, "Data term")->check(CLI::IsMember({"absolute", "quadratic"}));
  denoise_cmd->add_option("--smoothness", denoise.smoothness, "g(d) = d or d^2")
      ->check(CLI::IsMember({"linear", "quadratic"}));
  denoise_cmd->add_option("--method", denoise.method, "auto, brute, cut or msfm")
      ->check(CLI::IsMember({"auto", "brute", "cut", "msfm"}));
  denoise_cmd->add_option("--format", denoise.format, "Output encoding")->check(CLI::IsMember({"raw", "plain"}));
  denoise_cmd->add_option("--crop", denoise.crop, "Restrict to the rectangle X,Y,W,H");
  denoise_cmd->add_option("--tile", denoise.tile, "Msfm tile side in sites")->check(CLI::PositiveNumber);

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time every method on a seeded instance suite");
  bench_cmd->add_option("suite", bench.suite, "Suite description (JSON)")->required();
  bench_cmd->add_option("-o,--output", bench.output, "CSV output file (default: stdout)");
  bench_cmd->add_option("--seed", bench.seed, "Generator seed");
  bench_cmd->add_option("--threads", bench.threads, "Instances solved concurrently")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (*expand_cmd) return run_expand(expand);
    if (*check_cmd) return run_check(check_file);
    if (*minimize_cmd) return run_minimize(minimize);
    if (*msfm_cmd) return run_msfm(msfm);
    if (*dump_cmd) return run_gadget_dump(dump);
    if (*denoise_cmd) return run_denoise(denoise);
    if (*bench_cmd) return run_bench(bench);
  } catch (const gibbscut::InvalidInput& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return kInvalidInput;
  } catch (const gibbscut::Infeasible& e) {
    std::fprintf(stderr, "infeasible: %s\n", e.what());
    return kInfeasible;
  } catch (const gibbscut::VerificationFailure& e) {
    std::fprintf(stderr, "verification failed: %s\n", e.what());
    return kVerification;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kVerification;
  }
  return kOk;
}

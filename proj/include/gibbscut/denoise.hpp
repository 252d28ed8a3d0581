#pragma once

#include <string_view>

#include "gibbscut/encode.hpp"
#include "gibbscut/msfm.hpp"
#include "gibbscut/pgm.hpp"
#include "gibbscut/solve.hpp"

namespace gibbscut {

enum class DataTerm { Absolute, Quadratic };

DataTerm parse_data_term(std::string_view name);

/// Uniform bucket of a pixel value among k+1 levels.
int quantize(int value, int max_value, int k);

/// Grid model with h_site(l) = |r_l - p| or (r_l - p)^2 over the uniform
/// domain of the image's value range, and pairwise lambda * g(d).
EnergyModel model_from_image(const ImageBuffer& image, int k, DataTerm data,
                             std::vector<Rational> g, Rational lambda);

/// g(d) = d or g(d) = d^2 on 0..k.
std::vector<Rational> smoothness_table(int k, bool quadratic);

struct DenoiseOptions {
  int k = 3;
  DataTerm data = DataTerm::Absolute;
  bool quadratic_smoothness = false;
  Rational lambda = 1;
  SolveMethod method = SolveMethod::Cut;
  MsfmConfig msfm;  // used by SolveMethod::Msfm; blocks default to 8x8 tiles
};

struct DenoiseResult {
  ImageBuffer image;
  std::vector<Label> labels;
  Rational energy;
  std::optional<LevelTrace> trace;
};

/// Quantize, model, expand, minimize, decode. The output pixel of a site with
/// label l is the domain representative r_l.
DenoiseResult denoise(const ImageBuffer& input, const DenoiseOptions& options);

struct ExhaustiveResult {
  Rational energy;
  std::vector<Label> minimal;  // coordinatewise least minimizing labeling
  std::vector<Label> maximal;  // coordinatewise greatest minimizing labeling
};

/// Exact minimum over all (k+1)^sites labelings, computed row by row over
/// every labeling of a row ((k+1)^width states). A label is kept for a site
/// when some minimizing labeling uses it.
ExhaustiveResult exhaustive_minimize(const EnergyModel& m);

}  // namespace gibbscut

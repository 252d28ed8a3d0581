#pragma once

#include <string>

#include "gibbscut/graphcut.hpp"

namespace gibbscut {

/// DIMACS max-flow text: "p max N A", "n <id> s", "n <id> t", "a u v cap".
/// Node ids are 1-based (network node u is DIMACS id u+1), capacities are
/// integers scaled by the common denominator, and "c scale" / "c offset"
/// comment lines carry what is needed to recover polynomial values:
///   min value = max-flow / scale + offset.
std::string write_dimacs(const FlowNetwork& net);

struct DimacsNetwork {
  FlowNetwork network;  // capacities already divided by scale
  BigInt scale = 1;
};

/// Parses the format above. Missing scale/offset comments default to 1 / 0.
DimacsNetwork parse_dimacs(const std::string& text);

}  // namespace gibbscut

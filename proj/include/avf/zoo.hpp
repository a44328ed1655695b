#pragma once
// The example library: twelve semi-discrete PDE systems in the canonical
// du/dt = S grad H(u) shape, each with its textbook initial data.  Builders
// take a name -> value parameter map so the CLI can override resolutions and
// physical constants without per-problem plumbing.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "avf/system.hpp"

namespace avf {

using ParamMap = std::map<std::string, double>;

struct Problem {
  SemiDiscreteSystem system;
  Vec u0;
};

struct ProblemInfo {
  std::string name;     // canonical identifier, e.g. "sine_gordon_fd"
  std::string summary;  // one line for the problem listing
  ParamMap defaults;    // complete set of accepted parameter keys
  bool conservative = true;
  bool random_data = false;  // whether the seed enters the initial state
};

const std::vector<ProblemInfo>& problem_catalog();
const ProblemInfo* find_problem(const std::string& name);  // null if unknown

// Builds the system and its initial state.  Parameters not in the map take
// their defaults; keys outside the problem's accepted set are an error, as
// are resolutions too coarse for the stencils involved.  The seed only
// matters for problems flagged random_data.
Problem build_problem(const std::string& name, const ParamMap& params = {},
                      std::uint64_t seed = 0);

}  // namespace avf

#ifndef SEPCS_TRACE_HPP
#define SEPCS_TRACE_HPP

#include <string>
#include <vector>

#include "sepcs/rational.hpp"

namespace sepcs {

/// One algorithm step for the --trace output.
struct TraceStep {
  std::string type;
  int player = -1;    // -1 when no single player acts
  int resource = -1;  // resource or edge the step is about
  int target = -1;    // resource moved to, deviation vertex, ...
  Rational cost_delta;
  std::string note;
};

using Trace = std::vector<TraceStep>;

}  // namespace sepcs

#endif  // SEPCS_TRACE_HPP

#pragma once

#include <string>

#include "setbm/convex_set.hpp"

namespace setbm {

// Inline set syntax used by the CLI:
//   "[1,5]"            interval
//   "ball:0,0;1"       ball with center (0,0), radius 1
//   "poly:0,0;1,0;0,1" polytope from vertices
// Throws InvalidRange on malformed input.
ConvexSet parse_set(const std::string& text);

}  // namespace setbm

#pragma once

#include <string>

#include "rzdg/graph.hpp"
#include "rzdg/ring.hpp"

namespace rzdg {

// Ring literals: "Z25" or "Z2xZ3xZ5".
RingSpec parse_ring(const std::string& literal);

// Named graph literals: "complete:4", "path:5", "cycle:7", "empty:3",
// "kbip:2,4", "multi:3,3,3".
Graph parse_named_graph(const std::string& literal);

} // namespace rzdg

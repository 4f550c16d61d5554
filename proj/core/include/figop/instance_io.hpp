#pragma once

#include <iosfwd>

#include "figop/figop_graph.hpp"

namespace figop {

// Standalone solver instance. Text format, one record per line, '#' starts a
// comment:
//
//   figop v1 <n> <budget>        n = number of non-root nodes
//   <id> <ig> <x> <y>            n + 1 node lines, ids 0..n, 0 is the root
//   <i> <j> <cost> <fidelity>    one line per unordered pair, fidelity is
//                                "metric" or "topological"
//
// Node lines and cost lines may be interleaved after the header.
struct Instance {
  FigOpGraph graph;
  double budget = 0.0;
};

Instance read_instance(std::istream& is);
void write_instance(std::ostream& os, const Instance& instance);

}  // namespace figop

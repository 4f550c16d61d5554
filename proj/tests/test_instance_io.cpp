#include <random>
#include <sstream>

#include "doctest.h"
#include "figop/errors.hpp"
#include "figop/instance_io.hpp"
#include "test_support.hpp"

using namespace figop;

TEST_CASE("instance round trip") {
  std::mt19937_64 rng(6);
  Instance inst{testing_support::random_graph(rng, 6), 123.5};
  inst.graph.set_edge(2, 4, inst.graph.edge(2, 4), Fidelity::topological);
  std::ostringstream out;
  write_instance(out, inst);
  std::istringstream in(out.str());
  const auto back = read_instance(in);
  CHECK(back.budget == inst.budget);
  REQUIRE(back.graph.size() == inst.graph.size());
  for (std::size_t i = 0; i < inst.graph.size(); ++i) {
    CHECK(back.graph.nodes[i].info_gain == inst.graph.nodes[i].info_gain);
    CHECK(back.graph.nodes[i].position == inst.graph.nodes[i].position);
    for (std::size_t j = 0; j < inst.graph.size(); ++j) {
      CHECK(back.graph.edge(i, j) == inst.graph.edge(i, j));
      CHECK(back.graph.edge_fidelity(i, j) == inst.graph.edge_fidelity(i, j));
    }
  }
}

TEST_CASE("root only instance") {
  std::istringstream in("figop v1 0 10\n0 0 0 0\n");
  const auto inst = read_instance(in);
  CHECK(inst.graph.size() == 1u);
  CHECK(inst.budget == 10.0);
}

namespace {
ParseError parse_failure(const std::string& text) {
  std::istringstream in(text);
  try {
    read_instance(in);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a ParseError");
  return ParseError("unreachable", 0);
}
}  // namespace

TEST_CASE("parse errors name the offending line and column") {
  const std::string head = "figop v1 1 10\n0 0 0 0\n1 5 1 1\n";
  auto e = parse_failure(head + "0 1 x metric\n");
  CHECK(e.line() == 4);
  CHECK(e.column() == 5);
  e = parse_failure(head + "0 1 3 sideways\n");
  CHECK(e.line() == 4);
  CHECK(e.column() == 7);
  e = parse_failure("figop v2 1 10\n");
  CHECK(e.line() == 1);
  e = parse_failure(head);
  CHECK(std::string(e.what()).find("missing") != std::string::npos);
  e = parse_failure("figop v1 1 10\n0 0 0 0\n0 1 3 metric\n");
  CHECK(std::string(e.what()).find("node line") != std::string::npos);
  e = parse_failure("figop v1 1 10\n0 2 0 0\n");
  CHECK(e.line() == 2);
  e = parse_failure(head + "0 1 -3 metric\n");
  CHECK(e.line() == 4);
  e = parse_failure("");
  CHECK(e.line() == 1);
}

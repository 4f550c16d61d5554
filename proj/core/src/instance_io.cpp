#include "figop/instance_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "figop/errors.hpp"

namespace figop {

namespace {

struct Token {
  std::string text;
  int column;
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#') ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

double to_double(const Token& t, int line, const char* what) {
  double v = 0.0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
    throw ParseError(std::string("expected a number for ") + what + ", got '" + t.text + "'", line, t.column);
  }
  return v;
}

long long to_int(const Token& t, int line, const char* what) {
  long long v = 0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError(std::string("expected an integer for ") + what + ", got '" + t.text + "'", line, t.column);
  }
  return v;
}

bool is_number(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

Instance read_instance(std::istream& is) {
  Instance inst;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  std::size_t n = 0;
  std::vector<char> node_seen;
  std::vector<char> edge_seen;

  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto tok = tokenize(line);
    if (tok.empty()) continue;

    if (!have_header) {
      if (tok.size() != 4 || tok[0].text != "figop" || tok[1].text != "v1") {
        throw ParseError("expected header 'figop v1 <n> <budget>'", line_no, tok[0].column);
      }
      const long long count = to_int(tok[2], line_no, "node count");
      if (count < 0) throw ParseError("node count must be >= 0", line_no, tok[2].column);
      inst.budget = to_double(tok[3], line_no, "budget");
      if (inst.budget < 0.0) throw ParseError("budget must be >= 0", line_no, tok[3].column);
      n = static_cast<std::size_t>(count) + 1;
      inst.graph.nodes.assign(n, FigOpNode{});
      inst.graph.reset_edges();
      node_seen.assign(n, 0);
      edge_seen.assign(n * n, 0);
      have_header = true;
      continue;
    }

    if (tok.size() != 4) {
      throw ParseError("expected 4 fields, got " + std::to_string(tok.size()), line_no,
                       tok.size() > 4 ? tok[4].column : tok.back().column);
    }
    if (is_number(tok[3].text)) {
      const long long id = to_int(tok[0], line_no, "node id");
      if (id < 0 || static_cast<std::size_t>(id) >= n) {
        throw ParseError("node id " + tok[0].text + " out of range", line_no, tok[0].column);
      }
      if (node_seen[id]) throw ParseError("duplicate node " + tok[0].text, line_no, tok[0].column);
      node_seen[id] = 1;
      FigOpNode& node = inst.graph.nodes[id];
      node.key = id;
      node.info_gain = to_double(tok[1], line_no, "information gain");
      if (node.info_gain < 0.0) throw ParseError("information gain must be >= 0", line_no, tok[1].column);
      if (id == 0 && node.info_gain != 0.0) throw ParseError("root node must carry zero information gain", line_no, tok[1].column);
      node.position = {to_double(tok[2], line_no, "x"), to_double(tok[3], line_no, "y")};
      node.members = {id};
    } else {
      const long long i = to_int(tok[0], line_no, "edge endpoint");
      const long long j = to_int(tok[1], line_no, "edge endpoint");
      if (i < 0 || static_cast<std::size_t>(i) >= n) throw ParseError("edge endpoint out of range", line_no, tok[0].column);
      if (j < 0 || static_cast<std::size_t>(j) >= n) throw ParseError("edge endpoint out of range", line_no, tok[1].column);
      if (i == j) throw ParseError("self edge", line_no, tok[1].column);
      const double c = to_double(tok[2], line_no, "cost");
      if (!(c > 0.0)) throw ParseError("edge cost must be positive", line_no, tok[2].column);
      Fidelity f{};
      if (tok[3].text == "metric") {
        f = Fidelity::metric;
      } else if (tok[3].text == "topological") {
        f = Fidelity::topological;
      } else {
        throw ParseError("fidelity must be 'metric' or 'topological', got '" + tok[3].text + "'", line_no,
                         tok[3].column);
      }
      if (edge_seen[i * n + j]) {
        if (inst.graph.edge(i, j) != c) throw ParseError("conflicting cost for repeated edge", line_no, tok[2].column);
      }
      edge_seen[i * n + j] = edge_seen[j * n + i] = 1;
      inst.graph.set_edge(i, j, c, f);
    }
  }

  if (!have_header) throw ParseError("empty instance, expected header 'figop v1 <n> <budget>'", line_no + 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (!node_seen[i]) throw ParseError("missing node line for id " + std::to_string(i), line_no + 1);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!edge_seen[i * n + j]) {
        throw ParseError("missing cost line for pair " + std::to_string(i) + " " + std::to_string(j), line_no + 1);
      }
    }
  }
  return inst;
}

void write_instance(std::ostream& os, const Instance& instance) {
  const auto& g = instance.graph;
  std::ostringstream buf;
  buf.precision(17);
  buf << "figop v1 " << g.non_root_count() << ' ' << instance.budget << '\n';
  for (std::size_t i = 0; i < g.size(); ++i) {
    buf << i << ' ' << g.nodes[i].info_gain << ' ' << g.nodes[i].position.x << ' ' << g.nodes[i].position.y << '\n';
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      buf << i << ' ' << j << ' ' << g.edge(i, j) << ' ' << to_string(g.edge_fidelity(i, j)) << '\n';
    }
  }
  os << buf.str();
}

}  // namespace figop
